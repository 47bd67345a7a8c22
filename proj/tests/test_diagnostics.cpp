#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "relkura/diagnostics.hpp"
#include "relkura/dynamics.hpp"
#include "relkura/rng.hpp"

using namespace relkura;

namespace {

constexpr double kPi = std::numbers::pi;

double energy_full_closed(double c, double v) {
  const double gamma = lorentz_factor(v, c);
  const double f = v * gamma * (1.0 + gamma / (c * c));
  return v * f - c * c * (1.0 - 1.0 / gamma) - std::log(gamma);
}

double energy_rapidity_closed(double c, double v) { return -0.5 * c * c * std::log1p(-(v / c) * (v / c)); }

}  // namespace

TEST_CASE("phase diameter and order parameter examples") {
  const std::vector<double> pair{0.0, kPi / 2.0};
  CHECK(phase_diameter(pair) == kPi / 2.0);
  const auto op = order_parameter(pair);
  CHECK(op.r == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK(op.phi_defined);
  CHECK(op.phi == doctest::Approx(kPi / 4.0).epsilon(1e-15));

  const auto antipodal = order_parameter(std::vector<double>{0.0, kPi});
  CHECK(antipodal.r < 1e-12);
  CHECK_FALSE(antipodal.phi_defined);

  const auto synced = order_parameter(std::vector<double>{1.0, 1.0, 1.0});
  CHECK(synced.r == doctest::Approx(1.0));
  CHECK(synced.phi == doctest::Approx(1.0));

  CHECK(phase_diameter(std::vector<double>{3.0, -7.5, 10.0}) == 17.5);
  CHECK(order_parameter(std::vector<double>{kPi, kPi}).phi == doctest::Approx(kPi));
}

TEST_CASE("order parameter is rotation invariant in modulus") {
  const auto theta = rng::uniform_vector(2, 2, 25, -2.0, 2.0);
  auto rotated = theta;
  for (double& t : rotated) t += 0.7;
  CHECK(order_parameter(rotated).r == doctest::Approx(order_parameter(theta).r).epsilon(1e-14));
}

TEST_CASE("potential examples and pair-term identity") {
  const std::vector<double> zero_nu{0.0, 0.0};
  const auto v = potential_v(std::vector<double>{0.0, kPi}, 1.0, zero_nu);
  CHECK(v.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v.gradient_flow);

  const auto synced = potential_v(std::vector<double>{0.4, 0.4}, 2.0, zero_nu);
  CHECK(std::abs(synced.value) < 1e-15);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto theta = rng::uniform_vector(seed, 2, 17, -4.0, 4.0);
    const auto nu = rng::uniform_vector(seed, 1, 17, -0.3, 0.3);
    const auto p = potential_v(theta, 1.7, nu);
    CHECK(std::abs(p.pair_term - p.pair_term_identity) <= 1e-12);
    CHECK_FALSE(p.gradient_flow);
  }
}

TEST_CASE("energy functional examples") {
  const FrequencyResponse pv(ModelKind::ProperVelocity, 1.0);
  CHECK(energy_f(pv, std::vector<double>{0.6}) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(energy_f(pv, std::vector<double>{0.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(energy_f(FrequencyResponse::classical(), std::vector<double>{0.1}), UnsupportedModel);
  CHECK_THROWS_AS(energy_f(pv, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("energy quadrature matches closed forms") {
  for (double c : {0.5, 1.0, 5.0}) {
    const FrequencyResponse full(ModelKind::RelativisticFull, c);
    const FrequencyResponse rap(ModelKind::Rapidity, c);
    for (double frac : {1e-7, 1e-3, 0.1, 0.5, 0.9, 0.99}) {
      const double v = frac * c;
      const double ef = energy_f(full, std::vector<double>{v});
      const double er = energy_f(rap, std::vector<double>{v});
      CHECK(ef == doctest::Approx(energy_full_closed(c, v)).epsilon(1e-9));
      CHECK(er == doctest::Approx(energy_rapidity_closed(c, v)).epsilon(1e-9));
    }
  }
}

TEST_CASE("energy depends only on the speed and is additive") {
  const FrequencyResponse full(ModelKind::RelativisticFull, 1.0);
  const double a = energy_f(full, std::vector<double>{0.3});
  CHECK(energy_f(full, std::vector<double>{-0.3}) == a);
  CHECK(energy_f(full, std::vector<double>{0.3, -0.3}) == doctest::Approx(2.0 * a).epsilon(1e-15));
}

TEST_CASE("l1 discrepancy") {
  CHECK(l1_discrepancy(std::vector<double>{1.0, 2.0}, std::vector<double>{1.5, 1.0}) == 1.5);
  CHECK(l1_discrepancy(std::vector<double>{}, std::vector<double>{}) == 0.0);
  CHECK_THROWS(l1_discrepancy(std::vector<double>{1.0}, std::vector<double>{}));
}

TEST_CASE("predicted rate examples") {
  SystemConfig config;
  config.n = 3;
  config.omega = {0.0, 0.0, 0.0};
  CHECK(predicted_rate(config, kPi / 2.0) == doctest::Approx(0.6366197723675814).epsilon(1e-14));

  config.model = FrequencyResponse(ModelKind::ProperVelocity, 1.0);
  CHECK(predicted_rate(config, kPi / 2.0) == doctest::Approx(0.22507907903927651).epsilon(1e-12));

  config.model = FrequencyResponse::classical();
  CHECK(predicted_rate(config, 1e-8) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(predicted_rate(config, kPi), DomainError);
  CHECK_THROWS_AS(predicted_rate(config, 0.0), DomainError);
  config.omega = {0.0, 0.1, 0.0};
  CHECK_THROWS_AS(predicted_rate(config, 1.0), DomainError);
}

TEST_CASE("decay fit") {
  std::vector<double> t, exact, flat, noisy;
  for (int k = 0; k <= 100; ++k) {
    const double tk = 0.1 * k;
    t.push_back(tk);
    exact.push_back(2.0 * std::exp(-0.5 * tk));
    flat.push_back(3.0);
    noisy.push_back(2.0 * std::exp(-0.5 * tk) * (k % 2 == 0 ? 1.001 : 0.999));
  }
  const auto fit = fit_decay_rate(t, exact);
  CHECK(fit.rate == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::exp(fit.intercept) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(fit_decay_rate(t, flat).rate) < 1e-14);
  CHECK(std::abs(fit_decay_rate(t, noisy).rate - 0.5) < 1e-2);

  CHECK_THROWS_AS(fit_decay_rate(std::vector<double>{0.0, 1.0}, std::vector<double>{1.0, 0.5}), DegenerateFit);
  CHECK_THROWS_AS(fit_decay_rate(std::vector<double>{1.0, 1.0, 1.0}, std::vector<double>{1.0, 0.5, 0.2}),
                  DegenerateFit);
  CHECK_THROWS_AS(fit_decay_rate(std::vector<double>{0.0, 1.0, 2.0}, std::vector<double>{1.0, 0.0, 0.2}),
                  DomainError);

  const auto half = fit_diameter_decay(t, exact, 0.5);
  CHECK(half.points == 51);
  CHECK(half.rate == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("theta star") {
  CHECK(theta_star(1.0, 0.3) == doctest::Approx(0.3046926540153975).epsilon(1e-15));
  CHECK(theta_star(2.0, 0.0) == 0.0);
  CHECK_THROWS_AS(theta_star(0.3, 0.3), DomainError);
}

TEST_CASE("parallel diagnostics equal the serial reference") {
  SystemConfig config;
  config.n = 12;
  config.omega = rng::uniform_vector(6, 1, 12, -0.15, 0.15);
  config.model = FrequencyResponse(ModelKind::RelativisticFull, 1.0);
  config.t_final = 3.0;
  const auto traj = simulate(config, rng::uniform_vector(6, 2, 12, -1.4, 1.4));
  const auto a = compute_diagnostics(traj);
  const auto b = compute_diagnostics_serial(traj);
  CHECK(a.times == b.times);
  CHECK(a.phase_diameter == b.phase_diameter);
  CHECK(a.freq_diameter == b.freq_diameter);
  CHECK(a.potential == b.potential);
  CHECK(a.energy == b.energy);
  CHECK(a.omega_diameter > 0.0);
  for (std::size_t k = 0; k < a.order.size(); ++k) CHECK(a.order[k].r == b.order[k].r);

  config.model = FrequencyResponse::classical();
  const auto classical = compute_diagnostics(simulate(config, rng::uniform_vector(6, 2, 12, -1.4, 1.4)));
  CHECK(std::isnan(classical.energy.front()));
}
