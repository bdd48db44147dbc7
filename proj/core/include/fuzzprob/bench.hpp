#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzprob/controller.hpp"
#include "fuzzprob/fuzzy.hpp"

namespace fuzzprob {

/// fuzzy and prob are the exact routes (compose, marginal_exact); stochastic and
/// mc are their sampled realizations (stochastic_compose, mc_marginal).
enum class BenchBackend { Fuzzy, Prob, Stochastic, MonteCarlo };

std::string_view to_string(BenchBackend b) noexcept;
std::optional<BenchBackend> parse_bench_backend(std::string_view name) noexcept;
bool is_sampled(BenchBackend b) noexcept;

struct InstanceSource {
  enum class Kind { Reference, Random };
  Kind kind = Kind::Reference;
  std::size_t m = 4;  // Random only
  std::size_t n = 4;
  std::uint64_t seed = 0;
  std::optional<RuleBase> rules;  // Reference only; the built-in fixture when empty

  static InstanceSource reference(std::optional<RuleBase> rules = std::nullopt);
  static InstanceSource random(std::size_t m, std::size_t n, std::uint64_t seed);
};

/// One benchmark problem: an input membership vector and a relation.
struct BenchInstance {
  std::string id;
  MembershipVector input;
  Relation relation;
};

/// For Reference: R from the rule base and x = discretize(tri(c - w, c, c + w))
/// with c = lo + 0.6 (hi - lo), w = 0.2 (hi - lo). For Random: grades of x and R
/// drawn uniformly in [0,1] from RngState(seed).
BenchInstance materialize(const InstanceSource& source);

struct BenchSpec {
  std::vector<InstanceSource> instances{InstanceSource::reference()};
  std::vector<BenchBackend> backends{BenchBackend::Stochastic, BenchBackend::MonteCarlo};
  std::vector<std::size_t> n_grid{256, 1024, 4096, 16384};
  std::size_t seeds_per_point = 100;
  double delta = 1e-3;
  std::uint64_t base_seed = 0;  // point seeds are base_seed + k
  std::size_t threads = 0;      // 0: hardware concurrency
  bool record_timing = false;   // wall_time_ns stays 0 unless set

  /// Throws DomainError unless n_grid is nonempty and strictly increasing,
  /// seeds_per_point >= 1, delta in (0,1) and the lists are nonempty.
  void validate() const;
};

struct BenchRow {
  std::string instance_id;
  std::string backend;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double linf_error = 0.0;
  std::int64_t wall_time_ns = 0;
  double hoeffding_bound = 0.0;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

/// Rows come out in (instance, backend, N, seed) order whatever the thread count.
std::vector<BenchRow> run_convergence_bench(const BenchSpec& spec);

/// Median linf_error per N for one backend, pooled over instances and seeds.
struct PlotSeries {
  std::string backend;
  std::vector<double> n;
  std::vector<double> median_error;
};

/// Series in first-appearance order of the backends in rows.
std::vector<PlotSeries> median_series(const std::vector<BenchRow>& rows);

/// Least-squares slope of log(median_error) against log(n). Requires at least
/// two points with positive error.
double loglog_slope(const PlotSeries& series);

double median(std::vector<double> values);

}  // namespace fuzzprob
