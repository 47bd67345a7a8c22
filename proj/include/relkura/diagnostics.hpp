#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "relkura/dynamics.hpp"
#include "relkura/models.hpp"

namespace relkura {

struct OrderParameter {
  double r = 0.0;
  double phi = 0.0;          ///< principal value in (-pi, pi]
  bool phi_defined = false;  ///< false when r <= 1e-12
};

/// max theta - min theta
double phase_diameter(std::span<const double> theta);

/// R e^{i phi} = (1/N) sum_j e^{i theta_j}
OrderParameter order_parameter(std::span<const double> theta);

struct PotentialValue {
  double value = 0.0;               ///< -sum nu_k theta_k + pair_term
  double pair_term = 0.0;           ///< (kappa/2N) sum_{k,l} (1 - cos(theta_k - theta_l))
  double pair_term_identity = 0.0;  ///< (kappa N / 2)(1 - R^2), equal to pair_term
  bool gradient_flow = false;       ///< |sum nu| <= 1e-9
};

PotentialValue potential_v(std::span<const double> theta, double kappa, std::span<const double> omega);

/// Energy functional sum_i int_1^{gamma_i} (L^2/x^3) F'(L sqrt(1 - 1/x^2)) dx.
///
/// Substituting x = gamma(u) turns each term into int_0^{|theta_dot_i|} u F'(u) du,
/// which is what gets integrated (adaptive Gauss-Kronrod, relative tolerance
/// 1e-10). ProperVelocity uses its closed form c^2 (gamma - 1).
/// Throws UnsupportedModel for the classical kind and DomainError for
/// superluminal input.
double energy_f(const FrequencyResponse& model, std::span<const double> thetadot);

double l1_discrepancy(std::span<const double> a, std::span<const double> b);

/// Exponential rate kappa (sin d0 / d0) min_{nu - kappa <= y <= nu + kappa} G'(y)
/// for a homogeneous ensemble with initial diameter d0 in (0, pi).
double predicted_rate(const SystemConfig& config, double d0);

struct DecayFit {
  double rate = 0.0;  ///< negated slope of log(values) against time
  double intercept = 0.0;
  double residual = 0.0;  ///< RMS residual of the log-linear fit
  std::size_t points = 0;
};

DecayFit fit_decay_rate(std::span<const double> times, std::span<const double> values);

/// Fits only the leading `window_fraction` of the samples, and within it only
/// points with diameter above 1e-12 (collapsed ensembles hit round-off).
DecayFit fit_diameter_decay(std::span<const double> times, std::span<const double> diameters,
                            double window_fraction = 1.0);

/// arcsin(d_omega / kappa), requires kappa > d_omega >= 0.
double theta_star(double kappa, double d_omega);

struct DiagnosticsSeries {
  double omega_diameter = 0.0;  ///< D(Omega), fixed by the config
  std::vector<double> times;
  std::vector<double> phase_diameter;
  std::vector<double> freq_diameter;
  std::vector<OrderParameter> order;
  std::vector<double> potential;
  std::vector<double> energy;  ///< NaN for the classical model
};

/// Evaluates every observable on the trajectory's sample grid, one sample per
/// OpenMP iteration.
DiagnosticsSeries compute_diagnostics(const Trajectory& trajectory);
DiagnosticsSeries compute_diagnostics_serial(const Trajectory& trajectory);

}  // namespace relkura
