#pragma once

#include <cstdint>

namespace fuzzprob {

// SplitMix64 constants (Steele, Lea & Flood 2014). The bit-exact definitions
// of every function below are written out in docs/FORMATS.md.
inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Top 53 bits of a word as a double in [0, 1).
constexpr double to_unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Counter-based draw: a pure function of (seed, stream_id, slot).
constexpr std::uint64_t draw_bits(std::uint64_t seed, std::uint64_t stream_id,
                                  std::uint64_t slot) noexcept {
  const std::uint64_t key = mix64(seed + kGoldenGamma * (stream_id + 1));
  return mix64(key + kGoldenGamma * (slot + 1));
}

constexpr double uniform_draw(std::uint64_t seed, std::uint64_t stream_id,
                              std::uint64_t slot) noexcept {
  return to_unit_interval(draw_bits(seed, stream_id, slot));
}

/// Derives an independent child seed, e.g. one per closed-loop step.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed ^ 0x5851f42d4c957f2dULL) + kGoldenGamma * (index + 1));
}

/// Caller-owned sequential generator (plain SplitMix64). Parallel callers use
/// disjoint states.
class RngState {
 public:
  explicit constexpr RngState(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }
  constexpr double next_unit() noexcept { return to_unit_interval(next_u64()); }
  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace fuzzprob
