#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "relkura/error.hpp"
#include "relkura/models.hpp"

namespace relkura {

/// Ensemble and integration settings for
///   theta_dot_i = G(nu_i + (kappa/N) sum_j sin(theta_j - theta_i)).
struct SystemConfig {
  std::size_t n = 10;
  double kappa = 1.0;
  std::vector<double> omega;  ///< natural frequencies nu_i
  FrequencyResponse model = FrequencyResponse::classical();
  double dt = 0.01;
  double t_final = 10.0;
  std::size_t record_every = 1;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

/// Phases live on the real line and are never wrapped.
struct PhaseState {
  double t = 0.0;
  std::vector<double> theta;
};

struct Trajectory {
  SystemConfig config;
  std::vector<PhaseState> samples;
  std::vector<std::vector<double>> velocities;  ///< theta_dot at each sample

  std::size_t size() const noexcept { return samples.size(); }
  std::vector<double> times() const;
};

/// Second-order (momentum) form: p_i = F(theta_dot_i).
struct MomentumState {
  double t = 0.0;
  std::vector<double> theta;
  std::vector<double> p;
};

struct MomentumTrajectory {
  SystemConfig config;
  std::vector<double> induced_nu;  ///< nu_i fixed by the initial data
  std::vector<MomentumState> samples;
  std::vector<std::vector<double>> velocities;
  std::vector<double> max_residual;  ///< max_i |p_i - coupling_i - nu_i| per sample

  std::size_t size() const noexcept { return samples.size(); }
};

/// Thrown when an integration step fails; carries the samples recorded so far.
struct SimulationAborted : NumericalError {
  SimulationAborted(const std::string& what, Trajectory partial)
      : NumericalError(what), partial(std::move(partial)) {}
  Trajectory partial;
};

/// Number of steps and length of the last one; the last step is shortened so
/// the grid lands exactly on t_final.
struct StepPlan {
  std::size_t steps = 0;
  double last_step = 0.0;
};
StepPlan plan_steps(double dt, double t_final);

/// (kappa/N) sum_j sin(theta_j - theta_i), no natural frequency.
std::vector<double> coupling_sums(double kappa, std::span<const double> theta);

std::vector<double> rhs(const SystemConfig& config, std::span<const double> theta);

PhaseState rk4_step(const SystemConfig& config, const PhaseState& state);
PhaseState rk4_step(const SystemConfig& config, const PhaseState& state, double step);

Trajectory simulate(const SystemConfig& config, std::span<const double> theta0);

struct MomentumDerivative {
  std::vector<double> theta_dot;
  std::vector<double> p_dot;
};

/// theta_dot_i = G(p_i), p_dot_i = (kappa/N) sum_j cos(theta_j - theta_i)(G(p_j) - G(p_i)).
/// The natural frequencies in `config` are not used by this form.
MomentumDerivative momentum_rhs(const SystemConfig& config, const MomentumState& state);

MomentumState rk4_step_momentum(const SystemConfig& config, const MomentumState& state, double step);

/// nu_i = F(theta_dot_i(0)) - (kappa/N) sum_j sin(theta_j(0) - theta_i(0)).
std::vector<double> induced_frequencies(const SystemConfig& config, std::span<const double> theta0,
                                        std::span<const double> thetadot0);

/// Integrates (theta, p) from p(0) = F(theta_dot(0)) and records the residual
/// of the conservation law p_i - coupling_i(theta) = nu_i. Comparing against
/// simulate() is only meaningful when config.omega equals the induced
/// frequencies of (theta0, thetadot0).
MomentumTrajectory simulate_momentum(const SystemConfig& config, std::span<const double> theta0,
                                     std::span<const double> thetadot0);

}  // namespace relkura
