#include "fuzzprob/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>

#include "fuzzprob/error.hpp"
#include "fuzzprob/prob.hpp"
#include "fuzzprob/random.hpp"
#include "fuzzprob/rulebase_io.hpp"
#include "fuzzprob/stochastic.hpp"

namespace fuzzprob {

std::string_view to_string(BenchBackend b) noexcept {
  switch (b) {
    case BenchBackend::Fuzzy:
      return "fuzzy";
    case BenchBackend::Prob:
      return "prob";
    case BenchBackend::Stochastic:
      return "stochastic";
    case BenchBackend::MonteCarlo:
      return "mc";
  }
  return "unknown";
}

std::optional<BenchBackend> parse_bench_backend(std::string_view name) noexcept {
  for (auto b : {BenchBackend::Fuzzy, BenchBackend::Prob, BenchBackend::Stochastic,
                 BenchBackend::MonteCarlo}) {
    if (to_string(b) == name) return b;
  }
  return std::nullopt;
}

bool is_sampled(BenchBackend b) noexcept {
  return b == BenchBackend::Stochastic || b == BenchBackend::MonteCarlo;
}

InstanceSource InstanceSource::reference(std::optional<RuleBase> rules) {
  InstanceSource s;
  s.kind = Kind::Reference;
  s.rules = std::move(rules);
  return s;
}

InstanceSource InstanceSource::random(std::size_t m, std::size_t n, std::uint64_t seed) {
  InstanceSource s;
  s.kind = Kind::Random;
  s.m = m;
  s.n = n;
  s.seed = seed;
  return s;
}

BenchInstance materialize(const InstanceSource& source) {
  if (source.kind == InstanceSource::Kind::Reference) {
    const RuleBase rb = source.rules ? *source.rules : reference_rulebase();
    const Universe& u = rb.input_universe();
    const double span = u.hi() - u.lo();
    const double c = u.lo() + 0.6 * span;
    const double w = 0.2 * span;
    return BenchInstance{"reference", discretize(MembershipFunction::triangular(c - w, c, c + w), u),
                         rb.relation()};
  }
  if (source.m < 2 || source.n < 2) throw DomainError("random instance: need m, n >= 2");
  RngState rng(source.seed);
  const Universe in("x", 0.0, 1.0, source.m);
  const Universe out("y", 0.0, 1.0, source.n);
  std::vector<double> x(source.m);
  for (auto& g : x) g = rng.next_unit();
  std::vector<double> r(source.m * source.n);
  for (auto& g : r) g = rng.next_unit();
  return BenchInstance{"random-m" + std::to_string(source.m) + "n" + std::to_string(source.n) +
                           "s" + std::to_string(source.seed),
                       MembershipVector(in, std::move(x)), Relation(in, out, std::move(r))};
}

void BenchSpec::validate() const {
  if (instances.empty()) throw DomainError("bench: no instances");
  if (backends.empty()) throw DomainError("bench: no backends");
  if (n_grid.empty()) throw DomainError("bench: empty N grid");
  if (n_grid.front() == 0) throw DomainError("bench: N must be >= 1");
  for (std::size_t k = 1; k < n_grid.size(); ++k) {
    if (!(n_grid[k - 1] < n_grid[k])) throw DomainError("bench: N grid must be strictly increasing");
  }
  if (seeds_per_point < 1) throw DomainError("bench: seeds_per_point must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("bench: delta must lie in (0,1)");
}

namespace {

// Per-instance data shared read-only by all points of that instance.
struct PreparedInstance {
  BenchInstance instance;
  std::vector<double> exact_fuzzy;
  Distribution px;
  ConditionalMatrix conditional;
  std::vector<double> exact_prob;
};

PreparedInstance prepare(const InstanceSource& source) {
  auto inst = materialize(source);
  const auto y = compose(inst.input, inst.relation, CompositionSemantics::MaxMin);
  auto px = normalize_to_distribution(inst.input);
  auto cond = conditional_from_relation(inst.relation);
  const auto py = marginal_exact(px, cond);
  return PreparedInstance{std::move(inst),
                          {y.grades().begin(), y.grades().end()},
                          std::move(px),
                          std::move(cond),
                          {py.probs().begin(), py.probs().end()}};
}

double linf(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

struct Point {
  std::size_t instance;
  BenchBackend backend;
  std::size_t n;
  std::uint64_t seed;
};

BenchRow run_point(const PreparedInstance& p, const Point& pt, double delta, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  double error = 0.0;
  double bound = 0.0;
  switch (pt.backend) {
    case BenchBackend::Fuzzy: {
      const auto y = compose(p.instance.input, p.instance.relation, CompositionSemantics::MaxMin);
      error = linf(y.grades(), p.exact_fuzzy);
      break;
    }
    case BenchBackend::Prob: {
      const auto py = marginal_exact(p.px, p.conditional);
      error = linf(py.probs(), p.exact_prob);
      break;
    }
    case BenchBackend::Stochastic: {
      const StreamConfig cfg{pt.n, pt.seed, Correlation::SharedDraw};
      auto est = stochastic_compose(p.instance.input, p.instance.relation, cfg, delta);
      attach_oracle(est.report, p.exact_fuzzy);
      error = *est.report.linf_error;
      bound = est.report.hoeffding_bound;
      break;
    }
    case BenchBackend::MonteCarlo: {
      auto est = mc_marginal(p.px, p.conditional, pt.n, pt.seed, delta);
      attach_oracle(est.report, p.exact_prob);
      error = *est.report.linf_error;
      bound = est.report.hoeffding_bound;
      break;
    }
  }
  const auto stop = std::chrono::steady_clock::now();
  const std::int64_t ns =
      timing ? std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count() : 0;
  return BenchRow{p.instance.id, std::string(to_string(pt.backend)), pt.n, pt.seed, error, ns, bound};
}

}  // namespace

std::vector<BenchRow> run_convergence_bench(const BenchSpec& spec) {
  spec.validate();
  std::vector<PreparedInstance> prepared;
  prepared.reserve(spec.instances.size());
  for (const auto& src : spec.instances) prepared.push_back(prepare(src));

  std::vector<Point> points;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    for (auto backend : spec.backends) {
      for (auto n : spec.n_grid) {
        for (std::size_t k = 0; k < spec.seeds_per_point; ++k) {
          points.push_back({i, backend, n, spec.base_seed + k});
        }
      }
    }
  }

  std::vector<std::optional<BenchRow>> rows(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= points.size() || failed.load()) return;
      try {
        rows[k] = run_point(prepared[points[k].instance], points[k], spec.delta, spec.record_timing);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };

  std::size_t threads = spec.threads;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(points.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<BenchRow> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(std::move(*r));
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw DomainError("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<PlotSeries> median_series(const std::vector<BenchRow>& rows) {
  std::vector<std::string> order;
  std::map<std::string, std::map<std::size_t, std::vector<double>>> groups;
  for (const auto& r : rows) {
    if (!groups.contains(r.backend)) order.push_back(r.backend);
    groups[r.backend][r.n].push_back(r.linf_error);
  }
  std::vector<PlotSeries> out;
  for (const auto& name : order) {
    PlotSeries s;
    s.backend = name;
    for (auto& [n, errors] : groups[name]) {
      s.n.push_back(static_cast<double>(n));
      s.median_error.push_back(median(errors));
    }
    out.push_back(std::move(s));
  }
  return out;
}

double loglog_slope(const PlotSeries& series) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t k = 0; k < series.n.size(); ++k) {
    if (series.median_error[k] > 0.0) {
      lx.push_back(std::log(series.n[k]));
      ly.push_back(std::log(series.median_error[k]));
    }
  }
  if (lx.size() < 2) throw DomainError("loglog_slope: need two points with positive error");
  const double count = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= count;
  my /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxy += (lx[k] - mx) * (ly[k] - my);
    sxx += (lx[k] - mx) * (lx[k] - mx);
  }
  if (sxx == 0.0) throw DomainError("loglog_slope: all points share one N");
  return sxy / sxx;
}

}  // namespace fuzzprob
