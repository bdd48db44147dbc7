// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "../support/oracles.hpp"
#include "fuzzprob/fuzzprob.hpp"

namespace fs = std::filesystem;
using namespace fuzzprob;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Universe grid(std::size_t n, const char* name) {
  return Universe(name, 0.0, static_cast<double>(n - 1), n);
}

Relation relation(const oracle::Matrix& r) {
  std::vector<double> flat;
  for (const auto& row : r) flat.insert(flat.end(), row.begin(), row.end());
  return Relation(grid(r.size(), "x"), grid(r[0].size(), "y"), std::move(flat));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 1. Every output stream equals the encoded exact max-min result, bit for bit.
Verdict bitwise_identity() {
  const auto t0 = Clock::now();
  oracle::Gen gen(1001);
  std::size_t mismatches = 0;
  std::size_t bits = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = gen.size(2, 8);
    const std::size_t n = gen.size(2, 8);
    const auto xs = gen.vec(m);
    const auto rs = gen.matrix(m, n);
    const auto r = relation(rs);
    const MembershipVector x(r.domain(), xs);
    const StreamConfig cfg{256, static_cast<std::uint64_t>(trial), Correlation::SharedDraw};
    const auto res = stochastic_compose(x, r, cfg);
    const auto exact = compose(x, r, CompositionSemantics::MaxMin);
    const auto naive = oracle::max_min(xs, rs);
    for (std::size_t j = 0; j < n; ++j) {
      if (exact[j] != naive[j]) ++mismatches;
      const auto expected = encode(exact[j], cfg, 0);
      for (std::size_t t = 0; t < cfg.slots; ++t) {
        ++bits;
        // Bit-level definition, independent of the packed encoder.
        const bool want = uniform_draw(cfg.seed, 0, t) < naive[j];
        if (res.streams[j].bit(t) != expected.bit(t) || res.streams[j].bit(t) != want) ++mismatches;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs <= 10.0,
          fmt("%zu mismatching bits of %zu over 1000 instances, N=256 (%.2f s, limit 10 s)", mismatches,
              bits, secs)};
}

// 2. marginal_exact vs a naive triple-loop oracle.
Verdict marginal_exactness() {
  oracle::Gen gen(1002);
  double worst = 0.0;
  double worst_sum = 0.0;
  double oracle_disagreement = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = gen.size(2, 6);
    const std::size_t n = gen.size(2, 6);
    const auto px = gen.simplex(m);
    oracle::Matrix rows(m);
    for (auto& r : rows) r = gen.simplex(n);
    double d = 0.0;
    const auto expected = oracle::marginal(px, rows, &d);
    oracle_disagreement = std::max(oracle_disagreement, d);
    std::vector<double> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    const ConditionalMatrix p(grid(m, "x"), grid(n, "y"), flat);
    const auto got = marginal_exact(Distribution(p.domain(), px), p);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(got[j] - expected[j]));
      s += got[j];
    }
    worst_sum = std::max(worst_sum, std::abs(s - 1.0));
  }
  return {worst <= 1e-12 && worst_sum <= 1e-12 && oracle_disagreement <= 1e-12,
          fmt("L-inf %.3g, |sum-1| %.3g, oracle self-disagreement %.3g (limit 1e-12)", worst, worst_sum,
              oracle_disagreement)};
}

// Random SISO rule base with triangular sets on small grids.
RuleBase random_rulebase(oracle::Gen& gen) {
  const Universe in("in", 0.0, 1.0, gen.size(2, 8));
  const Universe out("out", 0.0, 1.0, gen.size(2, 8));
  auto random_sets = [&](std::size_t count) {
    NamedSets sets;
    for (std::size_t k = 0; k < count; ++k) {
      std::vector<double> p{gen.unit() * 1.4 - 0.2, gen.unit() * 1.4 - 0.2, gen.unit() * 1.4 - 0.2};
      std::sort(p.begin(), p.end());
      sets.emplace("S" + std::to_string(k), MembershipFunction::triangular(p[0], p[1], p[2]));
    }
    return sets;
  };
  const std::size_t ni = gen.size(1, 4);
  const std::size_t no = gen.size(1, 4);
  std::vector<RuleSpec> rules;
  for (std::size_t k = 0, count = gen.size(1, 5); k < count; ++k) {
    rules.push_back({"S" + std::to_string(gen.size(0, ni - 1)), "S" + std::to_string(gen.size(0, no - 1))});
  }
  return RuleBase(in, out, random_sets(ni), random_sets(no), rules);
}

// 3. One-hot input: ExactFuzzy returns row i, ExactProb its normalization.
Verdict one_hot_correspondence() {
  oracle::Gen gen(1003);
  double worst_fuzzy = 0.0;
  double worst_prob = 0.0;
  std::size_t instances = 0;
  while (instances < 500) {
    const RuleBase rb = random_rulebase(gen);
    const Relation& r = rb.relation();
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      double s = 0.0;
      for (double v : r.row(i)) s += v;
      if (s > 0.0) live.push_back(i);
    }
    if (live.empty()) continue;
    const std::size_t i = live[gen.size(0, live.size() - 1)];
    const auto x = MembershipVector::one_hot(rb.input_universe(), i);
    const auto fz = infer(x, rb, ExactFuzzy{CompositionSemantics::MaxMin});
    const auto pr = infer(x, rb, ExactProb{ZeroRowPolicy::Uniform});
    double s = 0.0;
    for (double v : r.row(i)) s += v;
    for (std::size_t j = 0; j < r.cols(); ++j) {
      worst_fuzzy = std::max(worst_fuzzy, std::abs(fz[j] - r.at(i, j)));
      worst_prob = std::max(worst_prob, std::abs(pr[j] - r.at(i, j) / s));
    }
    ++instances;
  }
  return {worst_fuzzy <= 1e-12 && worst_prob <= 1e-12,
          fmt("500 random rule bases: fuzzy vs row %.3g, prob vs normalized row %.3g (limit 1e-12)",
              worst_fuzzy, worst_prob)};
}

// 4. Median error ratio N -> 4N in [1.5, 2.5] and log-log slope in [-0.65, -0.35].
Verdict convergence_law() {
  const auto t0 = Clock::now();
  BenchSpec spec;
  spec.instances = {InstanceSource::reference()};
  spec.backends = {BenchBackend::Stochastic, BenchBackend::MonteCarlo};
  spec.n_grid = {256, 1024, 4096, 16384};
  spec.seeds_per_point = 100;
  spec.delta = 1e-3;
  const auto rows = run_convergence_bench(spec);
  bool ok = true;
  std::string detail;
  for (const auto& s : median_series(rows)) {
    detail += s.backend + ": ratios";
    for (std::size_t k = 0; k + 1 < s.n.size(); ++k) {
      const double ratio = s.median_error[k] / s.median_error[k + 1];
      ok = ok && ratio >= 1.5 && ratio <= 2.5;
      detail += fmt(" %.3f", ratio);
    }
    const double slope = loglog_slope(s);
    ok = ok && slope >= -0.65 && slope <= -0.35;
    detail += fmt(", slope %.3f; ", slope);
  }
  const double secs = seconds_since(t0);
  ok = ok && secs <= 60.0;
  return {ok, detail + fmt("(%.2f s, limit 60 s)", secs)};
}

// 5. Rows exceeding the per-component Hoeffding radius.
Verdict hoeffding_coverage() {
  BenchSpec spec;
  spec.instances = {InstanceSource::reference()};
  spec.backends = {BenchBackend::Stochastic, BenchBackend::MonteCarlo};
  spec.n_grid = {64, 256, 1024, 4096};
  spec.seeds_per_point = 1250;
  spec.base_seed = 100000;
  spec.delta = 1e-3;
  const auto rows = run_convergence_bench(spec);
  const std::size_t components = materialize(spec.instances[0]).relation.cols();
  std::size_t violations = 0;
  for (const auto& r : rows) violations += r.linf_error > r.hoeffding_bound;
  const double fraction = static_cast<double>(violations) / static_cast<double>(rows.size());
  const double limit = 2.0 * spec.delta * static_cast<double>(components);
  return {rows.size() >= 10000 && fraction < limit,
          fmt("%zu of %zu sampled rows exceed the bound (fraction %.2e, limit %.2e)", violations,
              rows.size(), fraction, limit)};
}

// 6. Stochastic closed loop tracks the pinned ExactFuzzy trace.
Verdict closed_loop_agreement() {
  const auto rb = load_rulebase(std::string(FUZZPROB_DATA_DIR) + "/reference.rules");
  const auto plant = reference_plant();
  const auto exact = closed_loop_run(rb, plant, ExactFuzzy{}, 0);
  const auto pinned =
      parse_trace_csv(slurp(std::string(FUZZPROB_TEST_FIXTURES) + "/reference_trace_exact.csv"));
  double fixture_drift = pinned.size() == exact.size() ? 0.0 : INFINITY;
  for (std::size_t k = 0; k < std::min(pinned.size(), exact.size()); ++k) {
    fixture_drift = std::max({fixture_drift, std::abs(pinned[k].plant_state - exact[k].plant_state),
                              std::abs(pinned[k].control_output - exact[k].control_output),
                              std::abs(pinned[k].error_input - exact[k].error_input)});
  }
  std::vector<double> deviations;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto trace = closed_loop_run(rb, plant, Stochastic{{4096, 0, Correlation::SharedDraw}}, seed);
    deviations.push_back(trajectory_deviation(trace, exact));
  }
  const double med = oracle::median(deviations);
  return {fixture_drift <= 1e-12 && med <= 0.1,
          fmt("median L-inf deviation %.4f over 20 seeds (limit 0.1); fixture drift %.3g (limit 1e-12)",
              med, fixture_drift)};
}

int run_cli(const std::string& args, const fs::path& out, const std::string& env = "") {
  const std::string cmd = "env -u FUZZPROB_SEED " + env + " " + std::string(FUZZPROB_CLI_PATH) + " " +
                          args + " --out " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 7. Repeated CLI invocations give byte-identical CSV.
Verdict cli_determinism() {
  const std::vector<std::string> invocations = {
      "compose --crisp 1.3 --backend stochastic --slots 2048 --seed 7",
      "infer --crisp -2.2 --backend stochastic --slots 2048 --seed 7",
      "simulate --backend stochastic --slots 1024 --seed 7",
      "bench-convergence --backends fuzzy,prob,stochastic,mc --n-grid 64,256,1024 --seeds-per-point 10 "
      "--instance reference --instance random:4:5:3 --seed 7",
  };
  const auto dir = fs::temp_directory_path();
  bool ok = true;
  std::string detail;
  for (const auto& args : invocations) {
    const auto a = dir / "fuzzprob_acc_a.csv";
    const auto b = dir / "fuzzprob_acc_b.csv";
    const auto c = dir / "fuzzprob_acc_c.csv";
    const int ca = run_cli(args, a);
    const int cb = run_cli(args, b);
    // Same seed through the environment.
    std::string env_args = args.substr(0, args.rfind(" --seed"));
    const int cc = run_cli(env_args, c, "FUZZPROB_SEED=7");
    const auto sa = slurp(a);
    const bool same = ca == 0 && cb == 0 && cc == 0 && !sa.empty() && sa == slurp(b) && sa == slurp(c);
    ok = ok && same;
    detail += args.substr(0, args.find(' ')) + (same ? " ok; " : " DIFFERS; ");
  }
  return {ok, detail};
}

// 8. Reference fixture plus curated malformed files.
Verdict parser_surface() {
  const auto rb = load_rulebase(std::string(FUZZPROB_DATA_DIR) + "/reference.rules");
  bool ok = rb.rules().size() == 5 && rb.input_universe().size() == 11 && rb.output_universe().size() == 11;
  struct Case {
    const char* file;
    ParseError::Kind kind;
    std::size_t line;
  };
  using K = ParseError::Kind;
  const Case cases[] = {
      {"01_empty.rules", K::Empty, 0},           {"02_unknown_directive.rules", K::Syntax, 3},
      {"03_bad_number.rules", K::Syntax, 2},     {"04_universe_arity.rules", K::Syntax, 2},
      {"05_universe_too_small.rules", K::Semantic, 1}, {"06_duplicate_universe.rules", K::Semantic, 2},
      {"07_third_universe.rules", K::Semantic, 3},     {"08_undeclared_universe.rules", K::Semantic, 4},
      {"09_bad_tri_order.rules", K::Semantic, 3},      {"10_undeclared_set.rules", K::Semantic, 6},
      {"11_rule_syntax.rules", K::Syntax, 5},          {"12_unknown_kind.rules", K::Syntax, 3},
      {"13_duplicate_set.rules", K::Semantic, 4},      {"14_no_rules.rules", K::Semantic, 4},
      {"15_set_param_count.rules", K::Syntax, 3},
  };
  std::size_t matched = 0;
  std::string failures;
  for (const auto& c : cases) {
    try {
      load_rulebase(std::string(FUZZPROB_TEST_FIXTURES) + "/malformed/" + c.file);
      failures += std::string(" ") + c.file + "(accepted)";
    } catch (const ParseError& e) {
      if (e.kind() == c.kind && e.line() == c.line) {
        ++matched;
      } else {
        failures += std::string(" ") + c.file;
      }
    }
  }
  const std::size_t total = std::size(cases);
  ok = ok && matched == total && total >= 10;
  return {ok, fmt("reference has %zu rules; %zu/%zu malformed files matched class and line", rb.rules().size(),
                  matched, total) + failures};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"1 bitwise realization identity", bitwise_identity},
      {"2 marginal exactness", marginal_exactness},
      {"3 one-hot fuzzy/probabilistic correspondence", one_hot_correspondence},
      {"4 convergence law", convergence_law},
      {"5 Hoeffding bound coverage", hoeffding_coverage},
      {"6 closed-loop backend agreement", closed_loop_agreement},
      {"7 CLI determinism", cli_determinism},
      {"8 parser round-trip and error surface", parser_surface},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v{false, ""};
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << name << ": " << v.detail << std::endl;
    failed += !v.pass;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
