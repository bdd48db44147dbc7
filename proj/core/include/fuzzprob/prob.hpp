#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fuzzprob/fuzzy.hpp"
#include "fuzzprob/random.hpp"

namespace fuzzprob {

inline constexpr double kProbTolerance = 1e-12;

/// Probability vector over a universe. Construction checks nonnegativity and
/// |sum - 1| <= kProbTolerance, then renormalizes once.
class Distribution {
 public:
  Distribution(Universe universe, std::vector<double> probs);

  static Distribution one_hot(Universe universe, std::size_t index);

  const Universe& universe() const noexcept { return universe_; }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::size_t k) const { return probs_[k]; }
  std::size_t size() const noexcept { return probs_.size(); }

 private:
  Universe universe_;
  std::vector<double> probs_;
};

/// Row-stochastic m x n matrix Pr{Y = y(j) | X = x(i)}.
class ConditionalMatrix {
 public:
  ConditionalMatrix(Universe domain, Universe codomain, std::vector<double> rows);

  const Universe& domain() const noexcept { return domain_; }
  const Universe& codomain() const noexcept { return codomain_; }
  std::size_t rows() const noexcept { return domain_.size(); }
  std::size_t cols() const noexcept { return codomain_.size(); }
  double at(std::size_t i, std::size_t j) const { return entries_[i * cols() + j]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(entries_).subspan(i * cols(), cols());
  }

 private:
  Universe domain_;
  Universe codomain_;
  std::vector<double> entries_;
};

enum class ZeroRowPolicy { Error, Uniform };

/// probs[i] = grades[i] / sum(grades). Throws EvidenceError("empty evidence") if all zero.
Distribution normalize_to_distribution(const MembershipVector& x);

/// Divides each row of R by its sum. All-zero rows throw ZeroRowError or become
/// uniform, per policy.
ConditionalMatrix conditional_from_relation(const Relation& r,
                                            ZeroRowPolicy policy = ZeroRowPolicy::Error);

/// Pr{Y = y(j)} = sum_i Pr{X = x(i)} Pr{Y = y(j) | X = x(i)}.
Distribution marginal_exact(const Distribution& px, const ConditionalMatrix& p);

/// Inverse-CDF sampling from one uniform draw of rng. Scans cumulative sums left
/// to right and returns the first index with positive mass whose cumulative sum
/// reaches u, so a draw landing exactly on a boundary goes to the lower index.
std::size_t sample_index(std::span<const double> probs, RngState& rng);
std::size_t sample_index(const Distribution& d, RngState& rng);

}  // namespace fuzzprob
