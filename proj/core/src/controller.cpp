#include "fuzzprob/controller.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fuzzprob/error.hpp"

namespace fuzzprob {

namespace {

const MembershipFunction& lookup(const NamedSets& sets, const std::string& name,
                                 const Universe& u) {
  const auto it = sets.find(name);
  if (it == sets.end()) {
    throw DomainError("rule references undeclared set '" + name + "' on universe '" + u.name() + "'");
  }
  return it->second;
}

Relation build_relation(const Universe& in, const Universe& out, const NamedSets& in_sets,
                        const NamedSets& out_sets, const std::vector<RuleSpec>& rules) {
  std::vector<FuzzyRule> fuzzy_rules;
  fuzzy_rules.reserve(rules.size());
  for (const auto& r : rules) {
    fuzzy_rules.push_back({discretize(lookup(in_sets, r.antecedent, in), in),
                           discretize(lookup(out_sets, r.consequent, out), out)});
  }
  return relation_from_rules(fuzzy_rules);
}

void require_support(const MembershipVector& y) {
  const auto g = y.grades();
  if (std::none_of(g.begin(), g.end(), [](double v) { return v > 0.0; })) {
    throw EvidenceError("no rule fired");
  }
}

}  // namespace

RuleBase::RuleBase(Universe input, Universe output, NamedSets input_sets, NamedSets output_sets,
                   std::vector<RuleSpec> rules)
    : input_(std::move(input)),
      output_(std::move(output)),
      input_sets_(std::move(input_sets)),
      output_sets_(std::move(output_sets)),
      rules_(std::move(rules)),
      relation_(build_relation(input_, output_, input_sets_, output_sets_, rules_)) {}

std::size_t latency_samples(const Backend& backend) noexcept {
  if (const auto* s = std::get_if<Stochastic>(&backend)) return s->streams.slots;
  return 0;
}

MembershipVector fuzzify(double crisp, const RuleBase& rb, const Fuzzification& how) {
  const Universe& u = rb.input_universe();
  const double c = std::clamp(crisp, u.lo(), u.hi());
  if (how.kind == Fuzzification::Kind::Triangular && how.half_width > 0.0) {
    auto x = discretize(MembershipFunction::triangular(c - how.half_width, c, c + how.half_width), u);
    const auto g = x.grades();
    if (std::any_of(g.begin(), g.end(), [](double v) { return v > 0.0; })) return x;
    // Narrower than the grid spacing: fall back to the nearest point.
  }
  return MembershipVector::one_hot(u, u.nearest_index(c));
}

double defuzzify_centroid(const MembershipVector& y) {
  require_support(y);
  const Universe& u = y.universe();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    num += u.point(k) * y[k];
    den += y[k];
  }
  // A convex combination of grid points; clamp away rounding past the ends.
  return std::clamp(num / den, u.lo(), u.hi());
}

double defuzzify_mom(const MembershipVector& y) {
  require_support(y);
  const auto g = y.grades();
  const double peak = *std::max_element(g.begin(), g.end());
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g[k] == peak) {
      sum += y.universe().point(k);
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

double defuzzify(const MembershipVector& y, Defuzzifier how) {
  return how == Defuzzifier::Centroid ? defuzzify_centroid(y) : defuzzify_mom(y);
}

MembershipVector infer(const MembershipVector& x, const RuleBase& rb, const Backend& backend) {
  if (x.universe() != rb.input_universe()) {
    throw DimensionError("infer: input is not on the rule base's input universe");
  }
  const Relation& r = rb.relation();
  struct Visitor {
    const MembershipVector& x;
    const Relation& r;
    MembershipVector operator()(const ExactFuzzy& b) const { return compose(x, r, b.semantics); }
    MembershipVector operator()(const ExactProb& b) const {
      const auto py = marginal_exact(normalize_to_distribution(x), conditional_from_relation(r, b.zero_rows));
      return MembershipVector(py.universe(), std::vector<double>(py.probs().begin(), py.probs().end()));
    }
    MembershipVector operator()(const Stochastic& b) const {
      return stochastic_compose(x, r, b.streams).estimate;
    }
  };
  return std::visit(Visitor{x, r}, backend);
}

void PlantConfig::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(x0) || !std::isfinite(setpoint)) {
    throw DomainError("plant: parameters must be finite");
  }
  if (!(dt > 0.0)) throw DomainError("plant: dt must be > 0");
  if (steps < 1) throw DomainError("plant: steps must be >= 1");
  if (!(a * dt < 1.0)) throw DomainError("plant: a*dt must be < 1 for explicit Euler");
}

double plant_step(double state, double u, const PlantConfig& cfg) {
  return state + cfg.dt * (-cfg.a * state + cfg.b * u);
}

std::vector<TraceRecord> closed_loop_run(const RuleBase& rb, const PlantConfig& plant,
                                         const Backend& backend, std::uint64_t seed,
                                         const LoopOptions& options) {
  plant.validate();
  std::vector<TraceRecord> trace;
  trace.reserve(plant.steps);
  const std::size_t latency = latency_samples(backend);
  double state = plant.x0;
  for (std::size_t k = 0; k < plant.steps; ++k) {
    Backend step_backend = backend;
    if (auto* s = std::get_if<Stochastic>(&step_backend)) s->streams.seed = derive_seed(seed, k);

    const double error = plant.setpoint - state;
    double u = 0.0;
    try {
      const auto y = infer(fuzzify(error, rb, options.fuzzification), rb, step_backend);
      u = defuzzify(y, options.defuzzifier);
    } catch (const EvidenceError& e) {
      throw RunAborted(k, e.what());
    } catch (const ZeroRowError& e) {
      throw RunAborted(k, e.what());
    }
    trace.push_back({k, state, error, u, latency});
    state = plant_step(state, u, plant);
  }
  return trace;
}

double trajectory_deviation(const std::vector<TraceRecord>& a, const std::vector<TraceRecord>& b) {
  if (a.size() != b.size()) throw DimensionError("trajectory_deviation: traces differ in length");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    worst = std::max(worst, std::abs(a[k].plant_state - b[k].plant_state));
  }
  return worst;
}

}  // namespace fuzzprob
