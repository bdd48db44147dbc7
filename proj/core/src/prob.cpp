#include "fuzzprob/prob.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "fuzzprob/error.hpp"

namespace fuzzprob {

namespace {

// Checks one probability vector and rescales it so the sum is 1 up to rounding.
void check_and_renormalize(std::span<double> probs, const std::string& what) {
  double sum = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (!(probs[k] >= 0.0) || !std::isfinite(probs[k])) {
      throw DomainError(what + ": entry " + std::to_string(k) + " is not a nonnegative real");
    }
    sum += probs[k];
  }
  if (!(std::abs(sum - 1.0) <= kProbTolerance)) {
    throw DomainError(what + ": entries sum to " + std::to_string(sum) + ", not 1");
  }
  for (double& p : probs) p /= sum;
}

}  // namespace

Distribution::Distribution(Universe universe, std::vector<double> probs)
    : universe_(std::move(universe)), probs_(std::move(probs)) {
  if (probs_.size() != universe_.size()) {
    throw DimensionError("distribution on '" + universe_.name() + "': expected " +
                         std::to_string(universe_.size()) + " entries");
  }
  check_and_renormalize(probs_, "distribution");
}

Distribution Distribution::one_hot(Universe universe, std::size_t index) {
  if (index >= universe.size()) throw DimensionError("one-hot index out of range");
  std::vector<double> p(universe.size(), 0.0);
  p[index] = 1.0;
  return Distribution(std::move(universe), std::move(p));
}

ConditionalMatrix::ConditionalMatrix(Universe domain, Universe codomain, std::vector<double> rows)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), entries_(std::move(rows)) {
  if (entries_.size() != domain_.size() * codomain_.size()) {
    throw DimensionError("conditional matrix: expected " + std::to_string(domain_.size()) + "x" +
                         std::to_string(codomain_.size()) + " entries");
  }
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    check_and_renormalize(std::span<double>(entries_).subspan(i * cols(), cols()),
                          "conditional row " + std::to_string(i));
  }
}

Distribution normalize_to_distribution(const MembershipVector& x) {
  const auto g = x.grades();
  const double sum = std::accumulate(g.begin(), g.end(), 0.0);
  if (!(sum > 0.0)) throw EvidenceError("empty evidence");
  std::vector<double> p(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) p[k] = g[k] / sum;
  return Distribution(x.universe(), std::move(p));
}

ConditionalMatrix conditional_from_relation(const Relation& r, ZeroRowPolicy policy) {
  const std::size_t n = r.cols();
  std::vector<double> rows(r.rows() * n);
  for (std::size_t i = 0; i < r.rows(); ++i) {
    const auto row = r.row(i);
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    double* out = rows.data() + i * n;
    if (sum > 0.0) {
      for (std::size_t j = 0; j < n; ++j) out[j] = row[j] / sum;
    } else if (policy == ZeroRowPolicy::Uniform) {
      for (std::size_t j = 0; j < n; ++j) out[j] = 1.0 / static_cast<double>(n);
    } else {
      throw ZeroRowError(i);
    }
  }
  return ConditionalMatrix(r.domain(), r.codomain(), std::move(rows));
}

Distribution marginal_exact(const Distribution& px, const ConditionalMatrix& p) {
  if (px.universe() != p.domain()) {
    throw DimensionError("marginal_exact: distribution lives on '" + px.universe().name() +
                         "' but conditional domain is '" + p.domain().name() + "'");
  }
  std::vector<double> py(p.cols(), 0.0);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const double w = px[i];
    if (w == 0.0) continue;
    const auto row = p.row(i);
    for (std::size_t j = 0; j < py.size(); ++j) py[j] += w * row[j];
  }
  return Distribution(p.codomain(), std::move(py));
}

std::size_t sample_index(std::span<const double> probs, RngState& rng) {
  const double u = rng.next_unit();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] <= 0.0) continue;
    cumulative += probs[k];
    last_positive = k;
    if (u <= cumulative) return k;
  }
  // Rounding can leave the final cumulative sum a hair below u.
  return last_positive;
}

std::size_t sample_index(const Distribution& d, RngState& rng) {
  return sample_index(d.probs(), rng);
}

}  // namespace fuzzprob
