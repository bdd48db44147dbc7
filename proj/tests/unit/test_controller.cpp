#include <doctest.h>

#include "../support/helpers.hpp"

using namespace fuzzprob;
using testing_helpers::vec;

namespace {

const RuleBase& reference() {
  static const RuleBase rb = reference_rulebase();
  return rb;
}

}  // namespace

TEST_CASE("rule base validation") {
  const Universe in("e", -1, 1, 3);
  const Universe out("u", -1, 1, 3);
  NamedSets in_sets{{"Z", MembershipFunction::triangular(-1, 0, 1)}};
  NamedSets out_sets{{"Z", MembershipFunction::triangular(-1, 0, 1)}};
  CHECK_NOTHROW(RuleBase(in, out, in_sets, out_sets, {{"Z", "Z"}}));
  CHECK_THROWS_WITH_AS(RuleBase(in, out, in_sets, out_sets, {}), "empty rule base", DomainError);
  CHECK_THROWS_AS(RuleBase(in, out, in_sets, out_sets, {{"Foo", "Z"}}), DomainError);
  CHECK_THROWS_AS(RuleBase(in, out, in_sets, out_sets, {{"Z", "Foo"}}), DomainError);
}

TEST_CASE("fuzzify") {
  const auto& rb = reference();
  CHECK(vec(fuzzify(-5, rb).grades()) == vec(MembershipVector::one_hot(rb.input_universe(), 0).grades()));
  CHECK(fuzzify(99, rb)[10] == 1.0);
  CHECK(fuzzify(-99, rb)[0] == 1.0);
  // Midway between points 2 (=-3) and 3 (=-2): lower index.
  CHECK(fuzzify(-2.5, rb)[2] == 1.0);
  CHECK(fuzzify(-2.5, rb)[3] == 0.0);

  const Fuzzification tri{Fuzzification::Kind::Triangular, 1.0};
  const auto x = fuzzify(0.5, rb, tri);
  // tri(-0.5, 0.5, 1.5) sampled at -1..2
  CHECK(x[4] == 0.0);
  CHECK(x[5] == 0.5);
  CHECK(x[6] == 0.5);
  CHECK(x[7] == 0.0);
}

TEST_CASE("defuzzify_centroid") {
  const Universe u("u", 0, 4, 5);
  CHECK(defuzzify_centroid(MembershipVector::one_hot(u, 3)) == 3.0);
  CHECK(defuzzify_centroid(MembershipVector(u, {0.2, 0.7, 0.1, 0.7, 0.2})) == doctest::Approx(2.0).epsilon(1e-12));
  // (0 + 0.5 + 2 + 1.5 + 0) / 2.0
  CHECK(defuzzify_centroid(MembershipVector(u, {0, 0.5, 1, 0.5, 0})) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(defuzzify_centroid(MembershipVector::zeros(u)), "no rule fired", EvidenceError);
}

TEST_CASE("defuzzify_mom") {
  const Universe u("u", 0, 4, 5);
  CHECK(defuzzify_mom(MembershipVector(u, {0.1, 0.2, 0.3, 0.9, 0.2})) == 3.0);
  CHECK(defuzzify_mom(MembershipVector(u, {0.1, 0.8, 0.8, 0.8, 0.2})) == 2.0);
  CHECK(defuzzify_mom(MembershipVector(Universe("v", 0, 2, 3), {1, 0, 1})) == 1.0);
  CHECK_THROWS_WITH_AS(defuzzify_mom(MembershipVector::zeros(u)), "no rule fired", EvidenceError);
}

TEST_CASE("infer dispatches to the three readings") {
  const auto& rb = reference();
  const auto& r = rb.relation();
  for (std::size_t i = 0; i < r.rows(); ++i) {
    const auto x = MembershipVector::one_hot(rb.input_universe(), i);
    const auto fz = infer(x, rb, ExactFuzzy{});
    CHECK(vec(fz.grades()) == vec(r.row(i)));
    const auto pr = infer(x, rb, ExactProb{});
    double s = 0.0;
    for (double v : r.row(i)) s += v;
    for (std::size_t j = 0; j < r.cols(); ++j) CHECK(pr[j] == doctest::Approx(r.at(i, j) / s).epsilon(1e-12));
  }

  const auto x = fuzzify(1.3, rb, {Fuzzification::Kind::Triangular, 2.0});
  const auto exact = infer(x, rb, ExactFuzzy{});
  const StreamConfig cfg{4096, 17, Correlation::SharedDraw};
  const auto est = infer(x, rb, Stochastic{cfg});
  const double bound = oracle::hoeffding(4096, 1e-3);
  for (std::size_t j = 0; j < exact.size(); ++j) CHECK(std::abs(est[j] - exact[j]) <= bound);

  CHECK_THROWS_AS(infer(MembershipVector::zeros(rb.input_universe()), rb, ExactProb{}), EvidenceError);
  CHECK_THROWS_AS(infer(MembershipVector::zeros(Universe("other", -5, 5, 11)), rb, ExactFuzzy{}),
                  DimensionError);
}

TEST_CASE("plant_step") {
  const PlantConfig cfg{.a = 1, .b = 1, .dt = 0.1, .x0 = 0, .setpoint = 0, .steps = 1};
  CHECK(plant_step(0, 0, cfg) == 0.0);
  CHECK(plant_step(1, 0, cfg) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(plant_step(0, 1, cfg) == doctest::Approx(0.1).epsilon(1e-12));

  PlantConfig bad = cfg;
  bad.dt = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = cfg;
  bad.a = 10;
  bad.dt = 0.1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = cfg;
  bad.steps = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("closed loop at the symmetric equilibrium stays put") {
  for (const Backend& backend : {Backend{ExactFuzzy{}}, Backend{ExactProb{}},
                                 Backend{Stochastic{{1024, 0, Correlation::SharedDraw}}}}) {
    PlantConfig plant = reference_plant();
    plant.x0 = 0;
    plant.setpoint = 0;
    plant.steps = 20;
    const auto trace = closed_loop_run(reference(), plant, backend, 5);
    for (const auto& rec : trace) {
      CHECK(std::abs(rec.control_output) <= 1e-12);
      CHECK(std::abs(rec.plant_state) <= 1e-12);
    }
  }
}

TEST_CASE("closed loop first step against a hand computation") {
  // error 2 -> ZE at 0.2, PS at 0.8; clipped output grades over -5..5 are
  // [0,0,0,.2,.2,.2,.4,.8,.8,.4,0], centroid 5.4 / 3 = 1.8.
  const auto trace = closed_loop_run(reference(), reference_plant(), ExactFuzzy{}, 0);
  REQUIRE(trace.size() == 200);
  CHECK(trace[0].plant_state == 0.0);
  CHECK(trace[0].error_input == 2.0);
  CHECK(trace[0].control_output == doctest::Approx(1.8).epsilon(1e-12));
  CHECK(trace[1].plant_state == doctest::Approx(0.18).epsilon(1e-12));
}

TEST_CASE("closed loop traces: schema, bounds, determinism") {
  const auto& rb = reference();
  const auto plant = reference_plant();
  const std::vector<Backend> backends{ExactFuzzy{}, ExactFuzzy{CompositionSemantics::MaxProduct},
                                      ExactProb{}, Stochastic{{512, 0, Correlation::SharedDraw}}};
  for (const auto& backend : backends) {
    const auto a = closed_loop_run(rb, plant, backend, 3);
    const auto b = closed_loop_run(rb, plant, backend, 3);
    REQUIRE(a.size() == plant.steps);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].step == k);
      CHECK(a[k].control_output >= rb.output_universe().lo());
      CHECK(a[k].control_output <= rb.output_universe().hi());
      CHECK(a[k].backend_latency_samples == latency_samples(backend));
      CHECK(a[k].plant_state == b[k].plant_state);
      CHECK(a[k].control_output == b[k].control_output);
    }
  }
  CHECK(latency_samples(Stochastic{{512, 0, Correlation::SharedDraw}}) == 512);
  CHECK(latency_samples(ExactFuzzy{}) == 0);
}

TEST_CASE("closed loop aborts with the step index when no rule fires") {
  // Rules cover only positive errors; after the state overshoots, nothing fires.
  const Universe in("e", -2, 2, 5);
  const Universe out("u", 0, 4, 5);
  NamedSets in_sets{{"P", MembershipFunction::trapezoidal(0.5, 1, 2, 2)}};
  NamedSets out_sets{{"B", MembershipFunction::triangular(3, 4, 4)}};
  const RuleBase rb(in, out, in_sets, out_sets, {{"P", "B"}});
  PlantConfig plant{.a = 0, .b = 1, .dt = 0.5, .x0 = 0, .setpoint = 2, .steps = 10};
  try {
    closed_loop_run(rb, plant, ExactFuzzy{}, 0);
    FAIL("expected RunAborted");
  } catch (const RunAborted& e) {
    // e=2 -> u=4 -> x=2 -> e=0 fires nothing at step 1.
    CHECK(e.step() == 1);
    CHECK(std::string(e.what()).find("no rule fired") != std::string::npos);
  }
}

TEST_CASE("stochastic trace deviation shrinks with stream length") {
  const auto& rb = reference();
  const auto plant = reference_plant();
  const auto exact = closed_loop_run(rb, plant, ExactFuzzy{}, 0);
  double previous = INFINITY;
  for (std::size_t n : {256U, 1024U, 4096U, 16384U}) {
    std::vector<double> dev;
    for (std::uint64_t s = 0; s < 100; ++s) {
      dev.push_back(trajectory_deviation(
          closed_loop_run(rb, plant, Stochastic{{n, 0, Correlation::SharedDraw}}, s), exact));
    }
    const double med = oracle::median(dev);
    CAPTURE(n);
    CHECK(med <= previous);
    previous = med;
  }
}
