#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fuzzprob/fuzzy.hpp"
#include "fuzzprob/prob.hpp"

namespace fuzzprob {

/// SharedDraw: every stream of a computation compares against the same uniform
/// u_t in slot t. Independent: each (stream id, slot) has its own uniform.
enum class Correlation { SharedDraw, Independent };

struct StreamConfig {
  std::size_t slots = 1024;
  std::uint64_t seed = 0;
  Correlation correlation = Correlation::SharedDraw;

  friend bool operator==(const StreamConfig&, const StreamConfig&) = default;
};

inline constexpr double kDefaultDelta = 1e-3;

/// sqrt(ln(2/delta) / (2 n)): with probability >= 1 - delta a mean of n
/// independent [0,1] samples is within this distance of its expectation.
double hoeffding_bound(std::size_t n_samples, double delta);

/// Fixed-length packed bit sequence. Bit t lives in word t / 64 at position t % 64;
/// padding bits past size() are always zero.
class BitStream {
 public:
  BitStream(StreamConfig config, std::vector<std::uint64_t> words);

  static BitStream zeros(const StreamConfig& config);
  static BitStream ones(const StreamConfig& config);

  const StreamConfig& config() const noexcept { return config_; }
  std::size_t size() const noexcept { return config_.slots; }
  bool bit(std::size_t t) const { return (words_[t / 64] >> (t % 64)) & 1U; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  std::size_t popcount() const noexcept;
  double mean() const noexcept;

  friend bool operator==(const BitStream&, const BitStream&) = default;

 private:
  StreamConfig config_;
  std::vector<std::uint64_t> words_;
};

/// bit_t = [u_t < p], u_t drawn per the correlation policy. Throws DomainError
/// for p outside [0,1] or slots == 0.
BitStream encode(double p, const StreamConfig& cfg, std::uint64_t stream_id);

/// Elementwise gates. Throw DimensionError on a length mismatch and DomainError
/// if the streams come from different configurations.
BitStream gate_and(const BitStream& a, const BitStream& b);
BitStream gate_or(const BitStream& a, const BitStream& b);

struct EstimatorReport {
  std::size_t n_samples = 0;
  std::vector<double> estimate;
  std::optional<double> linf_error;
  double delta = kDefaultDelta;
  double hoeffding_bound = 0.0;
};

/// Fills report.linf_error = max_k |estimate(k) - exact(k)|.
void attach_oracle(EstimatorReport& report, std::span<const double> exact);

struct StochasticComposeResult {
  MembershipVector estimate;
  std::vector<BitStream> streams;  // one output stream per codomain point
  EstimatorReport report;
};

/// Gate-level max-min composition: stream_j = OR_i AND(enc(x(i)), enc(R(i,j))).
/// Requires SharedDraw; Independent throws DomainError. Input grades use stream
/// ids 0..m-1, relation entries m..m+m*n-1 in row-major order.
StochasticComposeResult stochastic_compose(const MembershipVector& x, const Relation& r,
                                           const StreamConfig& cfg,
                                           double delta = kDefaultDelta);

struct MarginalEstimate {
  Distribution estimate;
  EstimatorReport report;
};

/// n rounds of i ~ px, j ~ P(i, .); the estimate is the normalized histogram of j.
MarginalEstimate mc_marginal(const Distribution& px, const ConditionalMatrix& p, std::size_t n,
                             std::uint64_t seed, double delta = kDefaultDelta);

}  // namespace fuzzprob
