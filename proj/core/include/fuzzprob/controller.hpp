#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "fuzzprob/fuzzy.hpp"
#include "fuzzprob/prob.hpp"
#include "fuzzprob/stochastic.hpp"

namespace fuzzprob {

using NamedSets = std::map<std::string, MembershipFunction, std::less<>>;

struct RuleSpec {
  std::string antecedent;  // set name on the input universe
  std::string consequent;  // set name on the output universe
};

/// Single-input single-output Mamdani rule base. The relation is built once at
/// construction.
class RuleBase {
 public:
  /// Throws DomainError on an empty rule list or a rule naming an undeclared set.
  RuleBase(Universe input, Universe output, NamedSets input_sets, NamedSets output_sets,
           std::vector<RuleSpec> rules);

  const Universe& input_universe() const noexcept { return input_; }
  const Universe& output_universe() const noexcept { return output_; }
  const NamedSets& input_sets() const noexcept { return input_sets_; }
  const NamedSets& output_sets() const noexcept { return output_sets_; }
  const std::vector<RuleSpec>& rules() const noexcept { return rules_; }
  const Relation& relation() const noexcept { return relation_; }

 private:
  Universe input_;
  Universe output_;
  NamedSets input_sets_;
  NamedSets output_sets_;
  std::vector<RuleSpec> rules_;
  Relation relation_;
};

struct ExactFuzzy {
  CompositionSemantics semantics = CompositionSemantics::MaxMin;
};
struct ExactProb {
  ZeroRowPolicy zero_rows = ZeroRowPolicy::Error;
};
struct Stochastic {
  StreamConfig streams;
};
using Backend = std::variant<ExactFuzzy, ExactProb, Stochastic>;

/// 0 for exact backends, the stream length for the stochastic one.
std::size_t latency_samples(const Backend& backend) noexcept;

struct Fuzzification {
  enum class Kind { Singleton, Triangular };
  Kind kind = Kind::Singleton;
  double half_width = 1.0;  // Triangular only: tri(c - w, c, c + w)
};

/// Crisp inputs are clamped to the input universe first.
MembershipVector fuzzify(double crisp, const RuleBase& rb, const Fuzzification& how = {});

double defuzzify_centroid(const MembershipVector& y);
double defuzzify_mom(const MembershipVector& y);

enum class Defuzzifier { Centroid, MeanOfMaxima };
double defuzzify(const MembershipVector& y, Defuzzifier how);

/// ExactProb results are probability vectors carried as grades on the output universe.
MembershipVector infer(const MembershipVector& x, const RuleBase& rb, const Backend& backend);

/// Explicit Euler on dx/dt = -a x + b u. Construction enforces dt > 0,
/// steps >= 1 and a dt < 1.
struct PlantConfig {
  double a = 1.0;
  double b = 1.0;
  double dt = 0.1;
  double x0 = 0.0;
  double setpoint = 2.0;
  std::size_t steps = 200;

  void validate() const;
};

double plant_step(double state, double u, const PlantConfig& cfg);

/// One controller tick. plant_state is the state measured at the start of the
/// step; control_output is the action applied during it.
struct TraceRecord {
  std::size_t step = 0;
  double plant_state = 0.0;
  double error_input = 0.0;
  double control_output = 0.0;
  std::size_t backend_latency_samples = 0;
};

struct LoopOptions {
  Fuzzification fuzzification;
  Defuzzifier defuzzifier = Defuzzifier::Centroid;
};

/// Runs plant.steps ticks. For the stochastic backend, step k streams use
/// derive_seed(seed, k) in place of the configured stream seed. Throws
/// RunAborted carrying the step index when no rule fires.
std::vector<TraceRecord> closed_loop_run(const RuleBase& rb, const PlantConfig& plant,
                                         const Backend& backend, std::uint64_t seed,
                                         const LoopOptions& options = {});

/// max_k |a[k].plant_state - b[k].plant_state|; traces must have equal length.
double trajectory_deviation(const std::vector<TraceRecord>& a, const std::vector<TraceRecord>& b);

}  // namespace fuzzprob
