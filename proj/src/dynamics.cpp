#include "relkura/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relkura/kernels.hpp"

namespace relkura {

void SystemConfig::validate() const {
  if (n == 0) throw ConfigError("n", "ensemble must contain at least one oscillator");
  if (omega.size() != n) {
    std::ostringstream msg;
    msg << "expected " << n << " natural frequencies, got " << omega.size();
    throw ConfigError("omega", msg.str());
  }
  for (double v : omega)
    if (!std::isfinite(v)) throw ConfigError("omega", "natural frequencies must be finite");
  if (!(std::isfinite(kappa) && kappa >= 0.0)) throw ConfigError("kappa", "coupling must be finite and nonnegative");
  if (!(std::isfinite(dt) && dt > 0.0)) throw ConfigError("dt", "step size must be positive");
  if (!(std::isfinite(t_final) && t_final >= dt)) throw ConfigError("t_final", "horizon must be at least one step");
  if (record_every == 0) throw ConfigError("record_every", "must be at least 1");
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(samples.size());
  for (const auto& s : samples) t.push_back(s.t);
  return t;
}

StepPlan plan_steps(double dt, double t_final) {
  const double ratio = t_final / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return {static_cast<std::size_t>(nearest), dt};
  }
  const auto steps = static_cast<std::size_t>(std::ceil(ratio));
  return {steps, t_final - static_cast<double>(steps - 1) * dt};
}

std::vector<double> coupling_sums(double kappa, std::span<const double> theta) {
  std::vector<double> zero(theta.size(), 0.0);
  std::vector<double> out(theta.size());
  kernels::coupling_drive(theta, zero, kappa, out);
  return out;
}

namespace {

void require_length(std::span<const double> v, std::size_t n, const char* what) {
  if (v.size() != n) {
    std::ostringstream msg;
    msg << what << " has " << v.size() << " entries, expected " << n;
    throw DomainError(msg.str());
  }
}

// Reusable RK4 stage buffers for the first-order system.
class PhaseStepper {
 public:
  explicit PhaseStepper(const SystemConfig& config)
      : config_(config), drive_(config.n), k1_(config.n), k2_(config.n), k3_(config.n), k4_(config.n),
        stage_(config.n) {}

  void velocity(std::span<const double> theta, std::span<double> out) {
    kernels::coupling_drive(theta, config_.omega, config_.kappa, drive_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = eval_g(config_.model, drive_[i]);
  }

  void step(std::vector<double>& theta, double h) {
    const std::size_t n = theta.size();
    velocity(theta, k1_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = theta[i] + 0.5 * h * k1_[i];
    velocity(stage_, k2_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = theta[i] + 0.5 * h * k2_[i];
    velocity(stage_, k3_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = theta[i] + h * k3_[i];
    velocity(stage_, k4_);
    for (std::size_t i = 0; i < n; ++i) theta[i] += h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

 private:
  const SystemConfig& config_;
  std::vector<double> drive_, k1_, k2_, k3_, k4_, stage_;
};

class MomentumStepper {
 public:
  explicit MomentumStepper(const SystemConfig& config)
      : config_(config), kt_(4, std::vector<double>(config.n)), kp_(4, std::vector<double>(config.n)),
        theta_(config.n), p_(config.n) {}

  void derivative(std::span<const double> theta, std::span<const double> p, std::span<double> theta_dot,
                  std::span<double> p_dot) {
    for (std::size_t i = 0; i < p.size(); ++i) theta_dot[i] = eval_g(config_.model, p[i]);
    kernels::momentum_coupling(theta, theta_dot, config_.kappa, p_dot);
  }

  void step(MomentumState& state, double h) {
    const std::size_t n = state.theta.size();
    static constexpr double kStage[] = {0.0, 0.5, 0.5, 1.0};
    for (int s = 0; s < 4; ++s) {
      if (s == 0) {
        derivative(state.theta, state.p, kt_[0], kp_[0]);
        continue;
      }
      for (std::size_t i = 0; i < n; ++i) {
        theta_[i] = state.theta[i] + kStage[s] * h * kt_[s - 1][i];
        p_[i] = state.p[i] + kStage[s] * h * kp_[s - 1][i];
      }
      derivative(theta_, p_, kt_[s], kp_[s]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      state.theta[i] += h / 6.0 * (kt_[0][i] + 2.0 * kt_[1][i] + 2.0 * kt_[2][i] + kt_[3][i]);
      state.p[i] += h / 6.0 * (kp_[0][i] + 2.0 * kp_[1][i] + 2.0 * kp_[2][i] + kp_[3][i]);
    }
    state.t += h;
  }

 private:
  const SystemConfig& config_;
  std::vector<std::vector<double>> kt_, kp_;
  std::vector<double> theta_, p_;
};

double step_time(const StepPlan& plan, double dt, double t_final, std::size_t k) {
  return k == plan.steps ? t_final : static_cast<double>(k) * dt;
}

bool should_record(std::size_t k, const StepPlan& plan, std::size_t every) {
  return k % every == 0 || k == plan.steps;
}

}  // namespace

std::vector<double> rhs(const SystemConfig& config, std::span<const double> theta) {
  require_length(theta, config.n, "theta");
  std::vector<double> out(config.n);
  PhaseStepper(config).velocity(theta, out);
  return out;
}

PhaseState rk4_step(const SystemConfig& config, const PhaseState& state) {
  return rk4_step(config, state, config.dt);
}

PhaseState rk4_step(const SystemConfig& config, const PhaseState& state, double step) {
  require_length(state.theta, config.n, "theta");
  PhaseState next = state;
  PhaseStepper(config).step(next.theta, step);
  next.t = state.t + step;
  return next;
}

Trajectory simulate(const SystemConfig& config, std::span<const double> theta0) {
  config.validate();
  require_length(theta0, config.n, "theta0");

  Trajectory traj;
  traj.config = config;
  PhaseStepper stepper(traj.config);
  const StepPlan plan = plan_steps(config.dt, config.t_final);

  std::vector<double> theta(theta0.begin(), theta0.end());
  std::vector<double> velocity(config.n);
  auto record = [&](double t) {
    stepper.velocity(theta, velocity);
    traj.samples.push_back({t, theta});
    traj.velocities.push_back(velocity);
  };

  std::size_t k = 0;
  try {
    record(0.0);
    for (k = 1; k <= plan.steps; ++k) {
      stepper.step(theta, k == plan.steps ? plan.last_step : config.dt);
      if (should_record(k, plan, config.record_every)) record(step_time(plan, config.dt, config.t_final, k));
    }
  } catch (const NumericalError& err) {
    std::ostringstream msg;
    msg << "integration aborted at step " << k << ": " << err.what();
    throw SimulationAborted(msg.str(), std::move(traj));
  }
  return traj;
}

MomentumDerivative momentum_rhs(const SystemConfig& config, const MomentumState& state) {
  require_length(state.theta, config.n, "theta");
  require_length(state.p, config.n, "p");
  MomentumDerivative d{std::vector<double>(config.n), std::vector<double>(config.n)};
  MomentumStepper(config).derivative(state.theta, state.p, d.theta_dot, d.p_dot);
  return d;
}

MomentumState rk4_step_momentum(const SystemConfig& config, const MomentumState& state, double step) {
  require_length(state.theta, config.n, "theta");
  require_length(state.p, config.n, "p");
  MomentumState next = state;
  MomentumStepper(config).step(next, step);
  return next;
}

std::vector<double> induced_frequencies(const SystemConfig& config, std::span<const double> theta0,
                                        std::span<const double> thetadot0) {
  require_length(theta0, config.n, "theta0");
  require_length(thetadot0, config.n, "thetadot0");
  const auto coupling = coupling_sums(config.kappa, theta0);
  std::vector<double> nu(config.n);
  for (std::size_t i = 0; i < config.n; ++i) nu[i] = eval_f(config.model, thetadot0[i]) - coupling[i];
  return nu;
}

MomentumTrajectory simulate_momentum(const SystemConfig& config, std::span<const double> theta0,
                                     std::span<const double> thetadot0) {
  config.validate();
  MomentumTrajectory traj;
  traj.config = config;
  traj.induced_nu = induced_frequencies(config, theta0, thetadot0);

  MomentumState state;
  state.theta.assign(theta0.begin(), theta0.end());
  state.p.resize(config.n);
  for (std::size_t i = 0; i < config.n; ++i) state.p[i] = eval_f(config.model, thetadot0[i]);

  MomentumStepper stepper(traj.config);
  std::vector<double> velocity(config.n);
  auto record = [&](double t) {
    state.t = t;
    for (std::size_t i = 0; i < config.n; ++i) velocity[i] = eval_g(config.model, state.p[i]);
    const auto coupling = coupling_sums(config.kappa, state.theta);
    double worst = 0.0;
    for (std::size_t i = 0; i < config.n; ++i)
      worst = std::max(worst, std::abs(state.p[i] - coupling[i] - traj.induced_nu[i]));
    traj.samples.push_back(state);
    traj.velocities.push_back(velocity);
    traj.max_residual.push_back(worst);
  };

  const StepPlan plan = plan_steps(config.dt, config.t_final);
  record(0.0);
  for (std::size_t k = 1; k <= plan.steps; ++k) {
    stepper.step(state, k == plan.steps ? plan.last_step : config.dt);
    if (should_record(k, plan, config.record_every)) record(step_time(plan, config.dt, config.t_final, k));
  }
  return traj;
}

}  // namespace relkura
