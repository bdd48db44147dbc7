#include "fuzzprob/stochastic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "fuzzprob/error.hpp"
#include "fuzzprob/random.hpp"

namespace fuzzprob {

namespace {

constexpr std::uint64_t kSharedStreamId = 0;

std::size_t word_count(std::size_t slots) { return (slots + 63) / 64; }

std::uint64_t tail_mask(std::size_t slots) {
  const std::size_t rem = slots % 64;
  return rem == 0 ? ~0ULL : (1ULL << rem) - 1;
}

void check_config(const StreamConfig& cfg) {
  if (cfg.slots == 0) throw DomainError("stream config: slots must be >= 1");
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
}

void check_grade(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("encode: grade outside [0,1]");
}

std::vector<double> draw_table(const StreamConfig& cfg, std::uint64_t stream_id) {
  std::vector<double> u(cfg.slots);
  for (std::size_t t = 0; t < cfg.slots; ++t) u[t] = uniform_draw(cfg.seed, stream_id, t);
  return u;
}

// bit_t = [u_t < p] packed into 64-bit words.
void encode_into(double p, std::span<const double> u, std::span<std::uint64_t> words) {
  const std::size_t slots = u.size();
  if (p <= 0.0) {
    std::fill(words.begin(), words.end(), 0ULL);
    return;
  }
  if (p >= 1.0) {
    std::fill(words.begin(), words.end(), ~0ULL);
    words.back() &= tail_mask(slots);
    return;
  }
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::size_t begin = w * 64;
    const std::size_t end = std::min(begin + 64, slots);
    std::uint64_t bits = 0;
    for (std::size_t t = begin; t < end; ++t) {
      bits |= static_cast<std::uint64_t>(u[t] < p) << (t - begin);
    }
    words[w] = bits;
  }
}

template <typename Op>
BitStream gate(const BitStream& a, const BitStream& b, Op op) {
  if (a.size() != b.size()) {
    throw DimensionError("gate: stream lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " differ");
  }
  if (a.config() != b.config()) throw DomainError("gate: streams come from different configurations");
  std::vector<std::uint64_t> out(a.words().size());
  for (std::size_t w = 0; w < out.size(); ++w) out[w] = op(a.words()[w], b.words()[w]);
  return BitStream(a.config(), std::move(out));
}

}  // namespace

double hoeffding_bound(std::size_t n_samples, double delta) {
  check_delta(delta);
  if (n_samples == 0) throw DomainError("hoeffding_bound: need n >= 1");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n_samples)));
}

BitStream::BitStream(StreamConfig config, std::vector<std::uint64_t> words)
    : config_(config), words_(std::move(words)) {
  check_config(config_);
  if (words_.size() != word_count(config_.slots)) {
    throw DimensionError("bit stream: word count does not match slots");
  }
  if ((words_.back() & ~tail_mask(config_.slots)) != 0) {
    throw DomainError("bit stream: padding bits must be zero");
  }
}

BitStream BitStream::zeros(const StreamConfig& config) {
  check_config(config);
  return BitStream(config, std::vector<std::uint64_t>(word_count(config.slots), 0ULL));
}

BitStream BitStream::ones(const StreamConfig& config) {
  check_config(config);
  std::vector<std::uint64_t> w(word_count(config.slots), ~0ULL);
  w.back() &= tail_mask(config.slots);
  return BitStream(config, std::move(w));
}

std::size_t BitStream::popcount() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

double BitStream::mean() const noexcept {
  return static_cast<double>(popcount()) / static_cast<double>(size());
}

BitStream encode(double p, const StreamConfig& cfg, std::uint64_t stream_id) {
  check_config(cfg);
  check_grade(p);
  const std::uint64_t id = cfg.correlation == Correlation::SharedDraw ? kSharedStreamId : stream_id;
  const auto u = draw_table(cfg, id);
  std::vector<std::uint64_t> words(word_count(cfg.slots));
  encode_into(p, u, words);
  return BitStream(cfg, std::move(words));
}

BitStream gate_and(const BitStream& a, const BitStream& b) {
  return gate(a, b, [](std::uint64_t x, std::uint64_t y) { return x & y; });
}

BitStream gate_or(const BitStream& a, const BitStream& b) {
  return gate(a, b, [](std::uint64_t x, std::uint64_t y) { return x | y; });
}

void attach_oracle(EstimatorReport& report, std::span<const double> exact) {
  if (exact.size() != report.estimate.size()) {
    throw DimensionError("attach_oracle: oracle has " + std::to_string(exact.size()) +
                         " components, estimate has " + std::to_string(report.estimate.size()));
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < exact.size(); ++k) {
    worst = std::max(worst, std::abs(report.estimate[k] - exact[k]));
  }
  report.linf_error = worst;
}

StochasticComposeResult stochastic_compose(const MembershipVector& x, const Relation& r,
                                           const StreamConfig& cfg, double delta) {
  check_config(cfg);
  check_delta(delta);
  if (cfg.correlation != Correlation::SharedDraw) {
    throw DomainError("shared-draw required for max–min realization");
  }
  if (x.universe() != r.domain()) {
    throw DimensionError("stochastic_compose: input lives on '" + x.universe().name() +
                         "' but relation domain is '" + r.domain().name() + "'");
  }

  const std::size_t m = r.rows();
  const std::size_t n = r.cols();
  const std::size_t nw = word_count(cfg.slots);
  const auto u = draw_table(cfg, kSharedStreamId);

  // Input streams. A zero grade encodes to the all-zero stream, which forces
  // every AND term it feeds to zero, so those terms are not materialized.
  std::vector<std::uint64_t> x_words(m * nw);
  for (std::size_t i = 0; i < m; ++i) {
    encode_into(x[i], u, std::span(x_words).subspan(i * nw, nw));
  }

  std::vector<std::uint64_t> r_words(nw);
  std::vector<BitStream> streams;
  streams.reserve(n);
  std::vector<double> estimate(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::uint64_t> acc(nw, 0ULL);
    for (std::size_t i = 0; i < m; ++i) {
      if (x[i] == 0.0 || r.at(i, j) == 0.0) continue;
      encode_into(r.at(i, j), u, r_words);
      const std::uint64_t* xi = x_words.data() + i * nw;
      for (std::size_t w = 0; w < nw; ++w) acc[w] |= xi[w] & r_words[w];
    }
    streams.emplace_back(cfg, std::move(acc));
    estimate[j] = streams.back().mean();
  }

  EstimatorReport report;
  report.n_samples = cfg.slots;
  report.estimate = estimate;
  report.delta = delta;
  report.hoeffding_bound = hoeffding_bound(cfg.slots, delta);
  return StochasticComposeResult{MembershipVector(r.codomain(), std::move(estimate)),
                                 std::move(streams), std::move(report)};
}

MarginalEstimate mc_marginal(const Distribution& px, const ConditionalMatrix& p, std::size_t n,
                             std::uint64_t seed, double delta) {
  if (n == 0) throw DomainError("mc_marginal: need n >= 1 samples");
  check_delta(delta);
  if (px.universe() != p.domain()) {
    throw DimensionError("mc_marginal: distribution lives on '" + px.universe().name() +
                         "' but conditional domain is '" + p.domain().name() + "'");
  }
  RngState rng(seed);
  std::vector<std::size_t> counts(p.cols(), 0);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t i = sample_index(px, rng);
    const std::size_t j = sample_index(p.row(i), rng);
    ++counts[j];
  }
  std::vector<double> freq(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) {
    freq[j] = static_cast<double>(counts[j]) / static_cast<double>(n);
  }

  Distribution estimate(p.codomain(), std::move(freq));

  EstimatorReport report;
  report.n_samples = n;
  report.estimate.assign(estimate.probs().begin(), estimate.probs().end());
  report.delta = delta;
  report.hoeffding_bound = hoeffding_bound(n, delta);
  return MarginalEstimate{std::move(estimate), std::move(report)};
}

}  // namespace fuzzprob
