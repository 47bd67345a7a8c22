#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relkura/diagnostics.hpp"
#include "relkura/dynamics.hpp"
#include "relkura/models.hpp"
#include "relkura/report.hpp"

namespace relkura {

struct SamplingSpec {
  std::uint64_t seed = 0;
  double phase_lo = 0.0, phase_hi = 0.0;
  double freq_lo = 0.0, freq_hi = 0.0;
  std::size_t n = 10;
};

struct Ensemble {
  std::vector<double> theta0;
  std::vector<double> omega;
};

/// RNG stream ids; frequencies and phases never share draws.
inline constexpr std::uint64_t kFrequencyStream = 1;
inline constexpr std::uint64_t kPhaseStream = 2;

/// Independent uniform draws from both intervals. With `center_frequencies`
/// the frequencies are shifted to sum to zero.
Ensemble sample_ensemble(const SamplingSpec& spec, bool center_frequencies = false);

/// Inputs shared by every scenario runner. Explicit vectors override sampling.
struct ScenarioSetup {
  std::uint64_t seed = 0;
  std::size_t n = 10;
  double kappa = 1.0;
  double dt = 0.01;
  double t_final = 10.0;
  std::size_t record_every = 1;
  ModelKind model = ModelKind::RelativisticFull;
  double c = 1.0;

  double freq_lo = -0.15, freq_hi = 0.15;
  bool center_frequencies = false;
  /// Stretch the sampled frequencies about their mean to exactly this diameter.
  std::optional<double> frequency_spread;
  /// Phase interval; default is [-(pi - theta*)/2, (pi - theta*)/2].
  std::optional<std::pair<double, double>> phase_interval;

  std::optional<std::vector<double>> omega;
  std::optional<std::vector<double>> theta0;
};

/// Draws frequencies first, then theta* = asin(D(Omega)/kappa), then phases
/// from the protocol interval (unless overridden).
Ensemble protocol_ensemble(const ScenarioSetup& setup);

SystemConfig make_config(const ScenarioSetup& setup, const FrequencyResponse& model, std::vector<double> omega);

Json to_json(const ScenarioSetup& setup);

struct NamedRun {
  std::string label;  ///< file-name stem, e.g. "relativistic" or "relativistic_c5"
  Trajectory trajectory;
  DiagnosticsSeries diagnostics;
};

struct ScenarioOutput {
  ExperimentReport report;
  std::vector<NamedRun> runs;
};

/// Single trajectory of setup.model with invariant checks along it.
ScenarioOutput run_simulate(const ScenarioSetup& setup);

/// All four models from identical data; snapshots at t = 0, 1, 2, 3 and
/// fitted decay rates. Asserts the full relativistic model decays slowest.
ScenarioOutput run_four_model_comparison(const ScenarioSetup& setup);

/// Full relativistic model for each c (plus a classical reference). Asserts
/// the fitted rate is non-decreasing in c and that c = 5 and c = 10 agree to 10%.
ScenarioOutput run_rate_vs_c(const ScenarioSetup& setup, const std::vector<double>& c_list, bool homogeneous);

/// sup_t ||Theta^c - Theta^classical||_1 for each c in three frequency regimes
/// (sampled, identical 0.2, all zero). Asserts s(c)/s(2c) in [3, 5] for every
/// doubling pair and bounded c^2 s(c) in the zero regime.
ScenarioOutput run_limit_scaling(const ScenarioSetup& setup, const std::vector<double>& c_list);

/// Synchronization predicates: half-circle invariance, exponential envelope,
/// heterogeneous diameter trapping, frequency synchronization, generic-data
/// dichotomy, plus per-step monotonicity of R, E_F and V.
ScenarioOutput run_sync_predicates(const ScenarioSetup& setup);

/// Momentum form against the first-order form from consistent data.
ScenarioOutput run_rcs_crosscheck(const ScenarioSetup& setup);

/// check_admissible for all four kinds at setup.c.
ScenarioOutput run_admissibility(const ScenarioSetup& setup, std::size_t samples = 1001);

// Sample-level checks, exposed for tests.

/// Fails at the first k with values[k] > values[k-1] + tol; `mask` (if
/// non-empty) restricts the check to steps where both samples are flagged.
Predicate check_nonincreasing(std::string name, const std::vector<double>& times, const std::vector<double>& values,
                              double tol, const std::vector<bool>& mask = {});
Predicate check_nondecreasing(std::string name, const std::vector<double>& times, const std::vector<double>& values,
                              double tol, const std::vector<bool>& mask = {});

/// Largest |sin(theta_i - theta_j)| over all pairs.
double max_pairwise_sine(std::span<const double> theta);

}  // namespace relkura
