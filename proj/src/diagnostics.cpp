#include "relkura/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "relkura/error.hpp"

namespace relkura {

double phase_diameter(std::span<const double> theta) {
  if (theta.empty()) throw DomainError("phase_diameter of an empty ensemble");
  const auto [lo, hi] = std::minmax_element(theta.begin(), theta.end());
  return *hi - *lo;
}

OrderParameter order_parameter(std::span<const double> theta) {
  if (theta.empty()) throw DomainError("order_parameter of an empty ensemble");
  std::complex<double> sum{0.0, 0.0};
  for (double t : theta) sum += std::polar(1.0, t);
  sum /= static_cast<double>(theta.size());
  OrderParameter op;
  op.r = std::abs(sum);
  if (op.r > 1e-12) {
    op.phi_defined = true;
    op.phi = std::arg(sum);
    if (op.phi == -std::numbers::pi) op.phi = std::numbers::pi;
  } else {
    op.phi = std::numeric_limits<double>::quiet_NaN();
  }
  return op;
}

PotentialValue potential_v(std::span<const double> theta, double kappa, std::span<const double> omega) {
  if (theta.empty() || theta.size() != omega.size()) throw DomainError("potential_v needs matching nonempty vectors");
  const std::size_t n = theta.size();
  PotentialValue v;
  double drift = 0.0;
  double nu_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    drift += omega[k] * theta[k];
    nu_sum += omega[k];
  }
  double pairs = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) pairs += 1.0 - std::cos(theta[k] - theta[l]);
  const double nd = static_cast<double>(n);
  v.pair_term = kappa / (2.0 * nd) * pairs;
  const double r = order_parameter(theta).r;
  v.pair_term_identity = 0.5 * kappa * nd * (1.0 - r * r);
  v.value = -drift + v.pair_term;
  v.gradient_flow = std::abs(nu_sum) <= 1e-9;
  return v;
}

double energy_f(const FrequencyResponse& model, std::span<const double> thetadot) {
  if (model.is_classical()) throw UnsupportedModel("energy functional needs a finite velocity bound");
  const double c = model.c();
  double total = 0.0;
  for (double w : thetadot) {
    if (!std::isfinite(w) || std::abs(w) >= c) throw DomainError("superluminal velocity in energy_f");
    const double v = std::abs(w);
    if (v == 0.0) continue;
    if (model.kind() == ModelKind::ProperVelocity) {
      // c^2 (gamma - 1) written without the cancellation in gamma - 1.
      const double gamma = lorentz_factor(v, c);
      const double beta = v / c;
      total += c * c * beta * beta * gamma * gamma / (1.0 + gamma);
      continue;
    }
    // u = v s maps the range onto [0, 1]; the adaptive error test misbehaves on
    // very short intervals.
    auto integrand = [&](double s) { return s * eval_f_prime(model, v * s); };
    total += v * v * boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, 0.0, 1.0, 15, 1e-10);
  }
  return total;
}

double l1_discrepancy(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("l1_discrepancy needs equal lengths");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double predicted_rate(const SystemConfig& config, double d0) {
  if (config.omega.empty()) throw DomainError("predicted_rate needs natural frequencies");
  const auto [lo, hi] = std::minmax_element(config.omega.begin(), config.omega.end());
  if (*hi - *lo > 1e-12) throw DomainError("predicted_rate applies to homogeneous ensembles only");
  if (!(d0 > 0.0 && d0 < std::numbers::pi)) throw DomainError("initial diameter must lie in (0, pi)");
  const double nu = *lo;
  const double kappa = config.kappa;
  return kappa * (std::sin(d0) / d0) * min_g_prime(config.model, nu - kappa, nu + kappa);
}

DecayFit fit_decay_rate(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw DomainError("fit_decay_rate needs matching series");
  if (times.size() < 3) throw DegenerateFit("decay fit needs at least 3 points");
  const double n = static_cast<double>(times.size());
  double mean_t = 0.0, mean_y = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(values[k] > 0.0)) throw DomainError("decay fit needs strictly positive values");
    mean_t += times[k];
    mean_y += std::log(values[k]);
  }
  mean_t /= n;
  mean_y /= n;
  double stt = 0.0, sty = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double dt = times[k] - mean_t;
    stt += dt * dt;
    sty += dt * (std::log(values[k]) - mean_y);
  }
  if (stt == 0.0) throw DegenerateFit("all sample times are equal");
  const double slope = sty / stt;
  DecayFit fit;
  fit.rate = -slope;
  fit.intercept = mean_y - slope * mean_t;
  fit.points = times.size();
  double ss = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double e = std::log(values[k]) - (fit.intercept + slope * times[k]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

DecayFit fit_diameter_decay(std::span<const double> times, std::span<const double> diameters,
                            double window_fraction) {
  if (times.size() != diameters.size()) throw DomainError("fit_diameter_decay needs matching series");
  const auto window = static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(times.size())));
  std::vector<double> t, d;
  for (std::size_t k = 0; k < std::min(window, times.size()); ++k) {
    if (diameters[k] > 1e-12) {
      t.push_back(times[k]);
      d.push_back(diameters[k]);
    }
  }
  return fit_decay_rate(t, d);
}

double theta_star(double kappa, double d_omega) {
  if (!(d_omega >= 0.0 && kappa > d_omega)) throw DomainError("theta_star needs kappa > D(Omega) >= 0");
  return std::asin(d_omega / kappa);
}

namespace {

void fill_sample(const Trajectory& traj, std::size_t k, DiagnosticsSeries& out) {
  const auto& theta = traj.samples[k].theta;
  const auto& velocity = traj.velocities[k];
  out.times[k] = traj.samples[k].t;
  out.phase_diameter[k] = phase_diameter(theta);
  out.freq_diameter[k] = phase_diameter(velocity);
  out.order[k] = order_parameter(theta);
  out.potential[k] = potential_v(theta, traj.config.kappa, traj.config.omega).value;
  out.energy[k] = traj.config.model.is_classical() ? std::numeric_limits<double>::quiet_NaN()
                                                   : energy_f(traj.config.model, velocity);
}

DiagnosticsSeries allocate(const Trajectory& traj) {
  const std::size_t m = traj.size();
  DiagnosticsSeries out;
  out.omega_diameter = traj.config.omega.empty() ? 0.0 : phase_diameter(traj.config.omega);
  out.times.resize(m);
  out.phase_diameter.resize(m);
  out.freq_diameter.resize(m);
  out.order.resize(m);
  out.potential.resize(m);
  out.energy.resize(m);
  return out;
}

}  // namespace

DiagnosticsSeries compute_diagnostics_serial(const Trajectory& trajectory) {
  auto out = allocate(trajectory);
  for (std::size_t k = 0; k < trajectory.size(); ++k) fill_sample(trajectory, k, out);
  return out;
}

DiagnosticsSeries compute_diagnostics(const Trajectory& trajectory) {
  auto out = allocate(trajectory);
  const auto count = static_cast<std::ptrdiff_t>(trajectory.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      fill_sample(trajectory, static_cast<std::size_t>(k), out);
    } catch (...) {
#pragma omp critical(relkura_diagnostics_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace relkura
