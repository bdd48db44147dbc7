// fuzzprob command-line tool: compose, infer, simulate, bench-convergence.

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzprob/fuzzprob.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string out = "-";
  std::string backend = "fuzzy";
  std::string semantics = "maxmin";
  std::string zero_rows = "error";
  std::size_t slots = 1024;
  double delta = fuzzprob::kDefaultDelta;
};

struct ResolvedSeed {
  std::uint64_t value;
  const char* source;
};

std::uint64_t parse_u64(const std::string& text, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(std::string(what) + ": not an unsigned 64-bit integer: '" + text + "'");
  }
  return v;
}

// --seed > FUZZPROB_SEED > 0.
ResolvedSeed resolve_seed(const GlobalOptions& g) {
  if (g.seed) return {*g.seed, "flag"};
  if (const char* env = std::getenv("FUZZPROB_SEED"); env != nullptr && *env != '\0') {
    return {parse_u64(env, "FUZZPROB_SEED"), "env"};
  }
  return {0, "default"};
}

fuzzprob::CompositionSemantics semantics_of(const GlobalOptions& g) {
  return g.semantics == "maxproduct" ? fuzzprob::CompositionSemantics::MaxProduct
                                     : fuzzprob::CompositionSemantics::MaxMin;
}

fuzzprob::Backend backend_of(const GlobalOptions& g, std::uint64_t seed) {
  if (g.backend == "prob") {
    return fuzzprob::ExactProb{g.zero_rows == "uniform" ? fuzzprob::ZeroRowPolicy::Uniform
                                                        : fuzzprob::ZeroRowPolicy::Error};
  }
  if (g.backend == "stochastic") {
    return fuzzprob::Stochastic{{g.slots, seed, fuzzprob::Correlation::SharedDraw}};
  }
  return fuzzprob::ExactFuzzy{semantics_of(g)};
}

fuzzprob::RuleBase rules_of(const std::string& path) {
  return path.empty() ? fuzzprob::reference_rulebase() : fuzzprob::load_rulebase(path);
}

std::vector<double> parse_real_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw UsageError(std::string(what) + ": malformed number '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(what) + ": empty list");
  return out;
}

// Writes to --out, or stdout for "-".
template <typename Writer>
void write_output(const std::string& path, Writer writer) {
  if (path == "-") {
    writer(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output '" + path + "'");
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void echo_seed(const ResolvedSeed& seed) {
  std::cerr << "# seed=" << seed.value << " (" << seed.source << ")\n";
}

fuzzprob::InstanceSource parse_instance(const std::string& text, const std::string& rules_path) {
  if (text == "reference") {
    return fuzzprob::InstanceSource::reference(
        rules_path.empty() ? std::nullopt : std::optional(fuzzprob::load_rulebase(rules_path)));
  }
  // random:<m>:<n>:<seed>
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4 || parts[0] != "random") {
    throw UsageError("--instance: expected 'reference' or 'random:<m>:<n>:<seed>', got '" + text + "'");
  }
  return fuzzprob::InstanceSource::random(parse_u64(parts[1], "--instance m"),
                                          parse_u64(parts[2], "--instance n"),
                                          parse_u64(parts[3], "--instance seed"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy / probabilistic / stochastic inference engine"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed (overrides FUZZPROB_SEED; default 0)");
  app.add_option("--out", g.out, "Output file, '-' for stdout")->capture_default_str();
  app.add_option("--backend", g.backend, "Inference backend")
      ->check(CLI::IsMember({"fuzzy", "prob", "stochastic"}))
      ->capture_default_str();
  app.add_option("--semantics", g.semantics, "Composition for the fuzzy backend")
      ->check(CLI::IsMember({"maxmin", "maxproduct"}))
      ->capture_default_str();
  app.add_option("--zero-rows", g.zero_rows, "All-zero relation rows for the prob backend")
      ->check(CLI::IsMember({"error", "uniform"}))
      ->capture_default_str();
  app.add_option("--slots", g.slots, "Bit-stream length for the stochastic backend")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--delta", g.delta, "Hoeffding confidence parameter")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  std::string rules_path;
  std::string defuzz = "centroid";
  std::string fuzzify_kind = "singleton";
  double half_width = 1.0;

  auto* compose_cmd = app.add_subcommand("compose", "Compose an input set with the rule relation");
  std::string x_text;
  std::optional<double> compose_crisp;
  compose_cmd->add_option("--rules", rules_path, "Rule-base file (default: built-in reference)");
  auto* x_opt = compose_cmd->add_option("--x", x_text, "Comma-separated input grades");
  compose_cmd->add_option("--crisp", compose_crisp, "Crisp input, singleton-fuzzified")->excludes(x_opt);

  auto* infer_cmd = app.add_subcommand("infer", "Crisp input to crisp output");
  double infer_crisp = 0.0;
  infer_cmd->add_option("--rules", rules_path, "Rule-base file (default: built-in reference)");
  infer_cmd->add_option("--crisp", infer_crisp, "Crisp input")->required();
  infer_cmd->add_option("--defuzz", defuzz)->check(CLI::IsMember({"centroid", "mom"}))->capture_default_str();
  infer_cmd->add_option("--fuzzify", fuzzify_kind)
      ->check(CLI::IsMember({"singleton", "triangular"}))
      ->capture_default_str();
  infer_cmd->add_option("--half-width", half_width, "Triangular fuzzification half-width")
      ->capture_default_str();

  auto* sim_cmd = app.add_subcommand("simulate", "Closed loop against the first-order plant");
  fuzzprob::PlantConfig plant = fuzzprob::reference_plant();
  sim_cmd->add_option("--rules", rules_path, "Rule-base file (default: built-in reference)");
  sim_cmd->add_option("--a", plant.a, "Plant decay coefficient")->capture_default_str();
  sim_cmd->add_option("--b", plant.b, "Plant input gain")->capture_default_str();
  sim_cmd->add_option("--dt", plant.dt, "Step (s)")->capture_default_str();
  sim_cmd->add_option("--x0", plant.x0, "Initial state")->capture_default_str();
  sim_cmd->add_option("--setpoint", plant.setpoint)->capture_default_str();
  sim_cmd->add_option("--steps", plant.steps)->capture_default_str();
  sim_cmd->add_option("--defuzz", defuzz)->check(CLI::IsMember({"centroid", "mom"}))->capture_default_str();

  auto* bench_cmd = app.add_subcommand("bench-convergence", "Estimation error against sample count");
  std::vector<std::string> instances{"reference"};
  std::string backends_text = "stochastic,mc";
  std::string n_grid_text = "256,1024,4096,16384";
  std::size_t seeds_per_point = 100;
  std::size_t threads = 0;
  bool timing = false;
  std::string svg_path;
  bench_cmd->add_option("--rules", rules_path, "Rule base for the reference instance");
  bench_cmd->add_option("--instance", instances, "'reference' or 'random:<m>:<n>:<seed>' (repeatable)")
      ->capture_default_str();
  bench_cmd->add_option("--backends", backends_text, "Comma list of fuzzy,prob,stochastic,mc")
      ->capture_default_str();
  bench_cmd->add_option("--n-grid", n_grid_text, "Strictly increasing sample counts")->capture_default_str();
  bench_cmd->add_option("--seeds-per-point", seeds_per_point)->capture_default_str();
  bench_cmd->add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();
  bench_cmd->add_flag("--timing", timing, "Record wall_time_ns (makes output nondeterministic)");
  bench_cmd->add_option("--svg", svg_path, "Also write a log-log SVG plot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const ResolvedSeed seed = resolve_seed(g);
    echo_seed(seed);

    if (compose_cmd->parsed()) {
      const auto rb = rules_of(rules_path);
      const auto& u = rb.input_universe();
      std::optional<fuzzprob::MembershipVector> x;
      if (compose_crisp) {
        x = fuzzprob::fuzzify(*compose_crisp, rb);
      } else if (!x_text.empty()) {
        x = fuzzprob::MembershipVector(u, parse_real_list(x_text, "--x"));
      } else {
        throw UsageError("compose: one of --x or --crisp is required");
      }
      const auto y = fuzzprob::infer(*x, rb, backend_of(g, seed.value));
      write_output(g.out, [&](std::ostream& out) {
        out << "index,point,grade\n";
        for (std::size_t j = 0; j < y.size(); ++j) {
          out << j << ',' << fuzzprob::format_real(y.universe().point(j)) << ','
              << fuzzprob::format_real(y[j]) << '\n';
        }
      });
    } else if (infer_cmd->parsed()) {
      const auto rb = rules_of(rules_path);
      fuzzprob::Fuzzification how;
      if (fuzzify_kind == "triangular") {
        how.kind = fuzzprob::Fuzzification::Kind::Triangular;
        how.half_width = half_width;
      }
      const auto y = fuzzprob::infer(fuzzprob::fuzzify(infer_crisp, rb, how), rb, backend_of(g, seed.value));
      const double out_value = fuzzprob::defuzzify(
          y, defuzz == "mom" ? fuzzprob::Defuzzifier::MeanOfMaxima : fuzzprob::Defuzzifier::Centroid);
      write_output(g.out, [&](std::ostream& out) {
        out << "crisp_in,crisp_out\n"
            << fuzzprob::format_real(infer_crisp) << ',' << fuzzprob::format_real(out_value) << '\n';
      });
    } else if (sim_cmd->parsed()) {
      const auto rb = rules_of(rules_path);
      fuzzprob::LoopOptions options;
      if (defuzz == "mom") options.defuzzifier = fuzzprob::Defuzzifier::MeanOfMaxima;
      const auto trace = fuzzprob::closed_loop_run(rb, plant, backend_of(g, seed.value), seed.value, options);
      write_output(g.out, [&](std::ostream& out) { fuzzprob::write_csv(out, trace); });
    } else if (bench_cmd->parsed()) {
      fuzzprob::BenchSpec spec;
      spec.instances.clear();
      for (const auto& text : instances) spec.instances.push_back(parse_instance(text, rules_path));
      spec.backends.clear();
      std::stringstream ss(backends_text);
      std::string name;
      while (std::getline(ss, name, ',')) {
        const auto b = fuzzprob::parse_bench_backend(name);
        if (!b) throw UsageError("--backends: unknown backend '" + name + "'");
        spec.backends.push_back(*b);
      }
      spec.n_grid.clear();
      for (double n : parse_real_list(n_grid_text, "--n-grid")) {
        if (!(n >= 1) || n != static_cast<double>(static_cast<std::size_t>(n))) {
          throw UsageError("--n-grid: sample counts must be positive integers");
        }
        spec.n_grid.push_back(static_cast<std::size_t>(n));
      }
      spec.seeds_per_point = seeds_per_point;
      spec.delta = g.delta;
      spec.base_seed = seed.value;
      spec.threads = threads;
      spec.record_timing = timing;
      const auto rows = fuzzprob::run_convergence_bench(spec);
      write_output(g.out, [&](std::ostream& out) { fuzzprob::write_csv(out, rows); });
      if (!svg_path.empty()) fuzzprob::emit_svg_lineplot(rows, svg_path);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fuzzprob::ParseError& e) {
    std::cerr << (rules_path.empty() ? "<reference>" : rules_path) << ": " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
