#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "relkura/experiments.hpp"
#include "relkura/rng.hpp"

using namespace relkura;

namespace {

const Predicate* find(const ExperimentReport& report, const std::string& name) {
  for (const auto& p : report.predicates)
    if (p.name == name) return &p;
  return nullptr;
}

ScenarioSetup short_setup(std::uint64_t seed = 1) {
  ScenarioSetup s;
  s.seed = seed;
  s.t_final = 5.0;
  s.record_every = 10;
  return s;
}

}  // namespace

TEST_CASE("rng is deterministic and stream separated") {
  CHECK(rng::draw_bits(7, 1, 3) == rng::draw_bits(7, 1, 3));
  CHECK(rng::draw_bits(7, 1, 3) != rng::draw_bits(7, 2, 3));
  CHECK(rng::draw_bits(7, 1, 3) != rng::draw_bits(8, 1, 3));
  const auto a = rng::uniform_vector(7, 1, 100, -1.0, 2.0);
  for (double v : a) {
    CHECK(v >= -1.0);
    CHECK(v < 2.0);
  }
  CHECK(rng::uniform_vector(7, 1, 5, 0.4, 0.4) == std::vector<double>(5, 0.4));
  CHECK(rng::draw_bits(0, 0, 0) == 6235967106033911276ULL);
  CHECK(rng::draw_unit(1, 2, 3) == 0.85450270857088373);
}

TEST_CASE("sample_ensemble") {
  SamplingSpec spec{42, -1.0, 1.0, -0.15, 0.15, 10};
  const auto a = sample_ensemble(spec);
  const auto b = sample_ensemble(spec);
  CHECK(a.theta0 == b.theta0);
  CHECK(a.omega == b.omega);
  CHECK(a.theta0.size() == 10);
  CHECK(a.omega == rng::uniform_vector(42, kFrequencyStream, 10, -0.15, 0.15));

  spec.freq_lo = spec.freq_hi = 0.2;
  const auto degenerate = sample_ensemble(spec);
  CHECK(degenerate.omega == std::vector<double>(10, 0.2));

  spec = SamplingSpec{3, -1.0, 1.0, 0.0, 1.0, 100000};
  const auto big = sample_ensemble(spec);
  const double mean = std::accumulate(big.omega.begin(), big.omega.end(), 0.0) / 1e5;
  CHECK(std::abs(mean - 0.5) < 0.01);

  spec = SamplingSpec{3, -1.0, 1.0, -0.15, 0.15, 10};
  const auto centered = sample_ensemble(spec, true);
  CHECK(std::abs(std::accumulate(centered.omega.begin(), centered.omega.end(), 0.0)) < 1e-15);

  spec.phase_lo = 2.0;
  CHECK_THROWS_AS(sample_ensemble(spec), ConfigError);
}

TEST_CASE("protocol ensemble respects the trapping interval") {
  ScenarioSetup s;
  s.seed = 5;
  const auto e = protocol_ensemble(s);
  const double d_omega = phase_diameter(e.omega);
  const double half = 0.5 * (std::numbers::pi - theta_star(1.0, d_omega));
  for (double t : e.theta0) CHECK(std::abs(t) <= half);

  s.frequency_spread = 0.3;
  s.center_frequencies = true;
  const auto stretched = protocol_ensemble(s);
  CHECK(phase_diameter(stretched.omega) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(std::abs(std::accumulate(stretched.omega.begin(), stretched.omega.end(), 0.0)) < 1e-14);

  s.theta0 = std::vector<double>{1.0};
  CHECK_THROWS_AS(protocol_ensemble(s), ConfigError);
}

TEST_CASE("monotonicity checks report the first violation") {
  const std::vector<double> t{0.0, 1.0, 2.0, 3.0};
  const auto ok = check_nonincreasing("v", t, {3.0, 2.0, 2.0, 1.0}, 1e-9);
  CHECK(ok.pass);
  const auto bad = check_nonincreasing("v", t, {3.0, 2.0, 2.5, 1.0}, 1e-9);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.first_violation_time.has_value());
  CHECK(*bad.first_violation_time == 2.0);
  CHECK(bad.observed == doctest::Approx(0.5));
  const auto masked = check_nonincreasing("v", t, {3.0, 2.0, 2.5, 1.0}, 1e-9, {true, true, false, true});
  CHECK(masked.pass);
  CHECK(check_nondecreasing("r", t, {0.1, 0.2, 0.3, 0.3}, 1e-9).pass);
  CHECK(max_pairwise_sine(std::vector<double>{0.0, std::numbers::pi}) < 1e-15);
  CHECK(max_pairwise_sine(std::vector<double>{0.0, std::numbers::pi / 2}) == doctest::Approx(1.0));
}

TEST_CASE("simulate scenario passes its invariants") {
  for (auto kind : {ModelKind::Classical, ModelKind::RelativisticFull, ModelKind::Rapidity}) {
    ScenarioSetup s = short_setup();
    s.model = kind;
    const auto out = run_simulate(s);
    CHECK(out.report.all_passed());
    CHECK(out.runs.size() == 1);
    CHECK(find(out.report, "potential_nonincreasing") != nullptr);
    CHECK((find(out.report, kind == ModelKind::Classical ? "mean_frequency_conservation" : "subluminal_velocities") !=
           nullptr));
  }
}

TEST_CASE("four model comparison") {
  ScenarioSetup s = short_setup();
  s.freq_lo = s.freq_hi = 0.0;
  const auto out = run_four_model_comparison(s);
  CHECK(out.runs.size() == 4);
  const auto* p = find(out.report, "relativistic_rate_smallest");
  REQUIRE(p != nullptr);
  CHECK(p->pass);
  CHECK(out.report.results.contains("snapshots"));
}

TEST_CASE("rate versus c") {
  ScenarioSetup s = short_setup();
  s.t_final = 10.0;
  const auto out = run_rate_vs_c(s, {1.0, 5.0, 10.0}, true);
  CHECK(out.runs.size() == 4);
  CHECK(out.report.all_passed());
  CHECK(find(out.report, "rate_nondecreasing_c1_c5") != nullptr);
  CHECK(find(out.report, "rates_c5_c10_within_10pct") != nullptr);
  CHECK_THROWS_AS(run_rate_vs_c(s, {5.0, 1.0}, true), ConfigError);
}

TEST_CASE("limit scaling") {
  ScenarioSetup s = short_setup();
  const auto out = run_limit_scaling(s, {5.0, 10.0, 20.0});
  CHECK(out.report.all_passed());
  for (const char* name : {"scaling_heterogeneous_c5_c10", "scaling_identical_c10_c20", "scaling_zero_c5_c10",
                           "bounded_zero_regime_c20"})
    CHECK(find(out.report, name) != nullptr);
}

TEST_CASE("sync predicates on homogeneous and heterogeneous data") {
  ScenarioSetup s = short_setup();
  s.freq_lo = s.freq_hi = 0.0;
  s.t_final = 50.0;
  auto out = run_sync_predicates(s);
  CHECK(out.report.all_passed());
  CHECK(find(out.report, "half_circle_invariance") != nullptr);
  CHECK(find(out.report, "exponential_envelope") != nullptr);
  CHECK(out.report.results["hypotheses"]["homogeneous"].get<bool>());

  s = short_setup();
  s.t_final = 30.0;
  out = run_sync_predicates(s);
  CHECK(find(out.report, "diameter_trapping") != nullptr);
  CHECK(find(out.report, "diameter_trapping")->pass);
}

TEST_CASE("momentum cross-check") {
  ScenarioSetup s = short_setup();
  s.dt = 1e-3;
  s.record_every = 100;
  const auto out = run_rcs_crosscheck(s);
  CHECK(out.report.all_passed());
  s.model = ModelKind::Rapidity;
  CHECK_THROWS_AS(run_rcs_crosscheck(s), ConfigError);
}

TEST_CASE("admissibility scenario") {
  ScenarioSetup s;
  const auto out = run_admissibility(s, 201);
  CHECK(out.report.all_passed());
  CHECK(out.runs.empty());
  CHECK(find(out.report, "roundtrip_rapidity") != nullptr);
}

TEST_CASE("reports are deterministic") {
  ScenarioSetup s = short_setup(9);
  const auto a = run_simulate(s).report.to_json().dump();
  const auto b = run_simulate(s).report.to_json().dump();
  CHECK(a == b);
  const auto j = run_simulate(s).report.to_json();
  CHECK(j["rng"] == "splitmix64-counter/v1");
  CHECK(j["seed"] == 9);
}
