#include "relkura/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <numeric>
#include <sstream>

#include "relkura/error.hpp"
#include "relkura/rng.hpp"

namespace relkura {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStepTolerance = 1e-9;
constexpr double kAsymptoticTolerance = 1e-6;
constexpr double kEnvelopeSlack = 1e-6;
constexpr double kTransientFraction = 0.2;

// Runs fn(0..count-1) across OpenMP threads; the first exception is rethrown.
template <class Fn>
void parallel_runs(std::size_t count, Fn&& fn) {
  std::exception_ptr failure;
  const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    try {
      fn(static_cast<std::size_t>(k));
    } catch (...) {
#pragma omp critical(relkura_runs_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

bool is_homogeneous(const std::vector<double>& omega) { return phase_diameter(omega) <= 1e-12; }

std::string format_c(double c) {
  std::ostringstream out;
  out << c;
  return out.str();
}

NamedRun make_run(std::string label, Trajectory traj) {
  NamedRun run{std::move(label), std::move(traj), {}};
  run.diagnostics = compute_diagnostics(run.trajectory);
  return run;
}

NamedRun simulate_run(std::string label, const SystemConfig& config, const std::vector<double>& theta0) {
  return make_run(std::move(label), simulate(config, theta0));
}

Json fit_json(const DiagnosticsSeries& d, bool homogeneous) {
  Json j;
  const double fraction = homogeneous ? 1.0 : kTransientFraction;
  try {
    const DecayFit fit = fit_diameter_decay(d.times, d.phase_diameter, fraction);
    j["rate"] = fit.rate;
    j["intercept"] = fit.intercept;
    j["residual"] = fit.residual;
    j["points"] = fit.points;
  } catch (const DegenerateFit& err) {
    j["rate"] = nullptr;
    j["error"] = err.what();
  }
  j["window_fraction"] = fraction;
  j["qualitative"] = !homogeneous;
  return j;
}

double rate_of(const Json& fit) { return fit["rate"].is_number() ? fit["rate"].get<double>() : std::nan(""); }

Json base_report_config(const ScenarioSetup& setup, const Ensemble& ensemble) {
  Json j = to_json(setup);
  j["omega"] = ensemble.omega;
  j["theta0"] = ensemble.theta0;
  return j;
}

ExperimentReport new_report(std::string scenario, const ScenarioSetup& setup, const Ensemble& ensemble) {
  ExperimentReport r;
  r.scenario = std::move(scenario);
  r.seed = setup.seed;
  r.rng_algorithm = std::string(rng::kAlgorithm);
  r.config = base_report_config(setup, ensemble);
  return r;
}

std::vector<bool> below(const std::vector<double>& values, double bound) {
  std::vector<bool> mask(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) mask[k] = values[k] < bound;
  return mask;
}

std::vector<double> order_magnitudes(const DiagnosticsSeries& d) {
  std::vector<double> r(d.order.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = d.order[k].r;
  return r;
}

// Invariants that hold along every trajectory of the model family.
void add_monotonicity_checks(ExperimentReport& report, const Trajectory& traj, const DiagnosticsSeries& d) {
  report.predicates.push_back(check_nonincreasing("potential_nonincreasing", d.times, d.potential, kStepTolerance));
  if (!traj.config.model.is_classical()) {
    auto p = check_nonincreasing("energy_dissipation_half_circle", d.times, d.energy, kStepTolerance,
                                 below(d.phase_diameter, kPi / 2.0));
    p.note = "checked on steps with D(theta) < pi/2";
    report.predicates.push_back(std::move(p));
  }
  if (is_homogeneous(traj.config.omega)) {
    report.predicates.push_back(
        check_nondecreasing("order_parameter_nondecreasing", d.times, order_magnitudes(d), kStepTolerance));
  }
}

const PhaseState* sample_at(const Trajectory& traj, double t) {
  for (const auto& s : traj.samples)
    if (std::abs(s.t - t) <= 1e-9) return &s;
  return nullptr;
}

void require_c_list(const std::vector<double>& c_list, std::size_t min_size) {
  if (c_list.size() < min_size) throw ConfigError("c_list", "needs at least " + std::to_string(min_size) + " entries");
  for (std::size_t k = 0; k < c_list.size(); ++k) {
    if (!(std::isfinite(c_list[k]) && c_list[k] > 0.0)) throw ConfigError("c_list", "entries must be positive");
    if (k > 0 && !(c_list[k] > c_list[k - 1])) throw ConfigError("c_list", "entries must be strictly ascending");
  }
}

}  // namespace

Ensemble sample_ensemble(const SamplingSpec& spec, bool center_frequencies) {
  if (spec.phase_lo > spec.phase_hi || spec.freq_lo > spec.freq_hi)
    throw ConfigError("sampling", "interval bounds out of order");
  Ensemble e;
  e.omega = rng::uniform_vector(spec.seed, kFrequencyStream, spec.n, spec.freq_lo, spec.freq_hi);
  e.theta0 = rng::uniform_vector(spec.seed, kPhaseStream, spec.n, spec.phase_lo, spec.phase_hi);
  if (center_frequencies && spec.n > 0) {
    const double mean = std::accumulate(e.omega.begin(), e.omega.end(), 0.0) / static_cast<double>(spec.n);
    for (double& v : e.omega) v -= mean;
  }
  return e;
}

Ensemble protocol_ensemble(const ScenarioSetup& setup) {
  if (setup.n == 0) throw ConfigError("n", "ensemble must contain at least one oscillator");
  Ensemble e;
  if (setup.omega) {
    if (setup.omega->size() != setup.n) throw ConfigError("omega", "length must equal n");
    e.omega = *setup.omega;
  } else {
    if (setup.freq_lo > setup.freq_hi) throw ConfigError("frequency_interval", "bounds out of order");
    e.omega = rng::uniform_vector(setup.seed, kFrequencyStream, setup.n, setup.freq_lo, setup.freq_hi);
    if (setup.frequency_spread) {
      const double spread = phase_diameter(e.omega);
      if (!(spread > 0.0)) throw ConfigError("frequency_spread", "sampled frequencies are degenerate");
      const double mean = std::accumulate(e.omega.begin(), e.omega.end(), 0.0) / static_cast<double>(setup.n);
      for (double& v : e.omega) v = mean + (v - mean) * (*setup.frequency_spread / spread);
    }
    if (setup.center_frequencies) {
      const double mean = std::accumulate(e.omega.begin(), e.omega.end(), 0.0) / static_cast<double>(setup.n);
      for (double& v : e.omega) v -= mean;
    }
  }

  if (setup.theta0) {
    if (setup.theta0->size() != setup.n) throw ConfigError("theta0", "length must equal n");
    e.theta0 = *setup.theta0;
    return e;
  }
  double lo, hi;
  if (setup.phase_interval) {
    std::tie(lo, hi) = *setup.phase_interval;
    if (lo > hi) throw ConfigError("phase_interval", "bounds out of order");
  } else {
    const double d_omega = phase_diameter(e.omega);
    if (!(setup.kappa > d_omega)) throw ConfigError("kappa", "protocol phase interval needs kappa > D(Omega)");
    const double half = 0.5 * (kPi - theta_star(setup.kappa, d_omega));
    lo = -half;
    hi = half;
  }
  e.theta0 = rng::uniform_vector(setup.seed, kPhaseStream, setup.n, lo, hi);
  return e;
}

SystemConfig make_config(const ScenarioSetup& setup, const FrequencyResponse& model, std::vector<double> omega) {
  SystemConfig config;
  config.n = setup.n;
  config.kappa = setup.kappa;
  config.omega = std::move(omega);
  config.model = model;
  config.dt = setup.dt;
  config.t_final = setup.t_final;
  config.record_every = setup.record_every;
  config.validate();
  return config;
}

Json to_json(const ScenarioSetup& setup) {
  Json j;
  j["n"] = setup.n;
  j["kappa"] = setup.kappa;
  j["dt"] = setup.dt;
  j["t_final"] = setup.t_final;
  j["record_every"] = setup.record_every;
  j["model"] = std::string(to_string(setup.model));
  j["c"] = setup.c;
  j["frequency_interval"] = {setup.freq_lo, setup.freq_hi};
  j["center_frequencies"] = setup.center_frequencies;
  if (setup.frequency_spread) j["frequency_spread"] = *setup.frequency_spread;
  if (setup.phase_interval) j["phase_interval"] = {setup.phase_interval->first, setup.phase_interval->second};
  return j;
}

Predicate check_nonincreasing(std::string name, const std::vector<double>& times, const std::vector<double>& values,
                              double tol, const std::vector<bool>& mask) {
  double worst = -std::numeric_limits<double>::infinity();
  std::optional<double> first;
  std::size_t checked = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (!mask.empty() && !(mask[k] && mask[k - 1])) continue;
    if (std::isnan(values[k]) || std::isnan(values[k - 1])) continue;
    const double rise = values[k] - values[k - 1];
    ++checked;
    worst = std::max(worst, rise);
    if (rise > tol && !first) first = times[k];
  }
  if (checked == 0) worst = 0.0;
  Predicate p = check_le(std::move(name), worst, tol);
  p.first_violation_time = first;
  p.note = "max per-step increase over " + std::to_string(checked) + " steps";
  return p;
}

Predicate check_nondecreasing(std::string name, const std::vector<double>& times, const std::vector<double>& values,
                              double tol, const std::vector<bool>& mask) {
  std::vector<double> negated(values.size());
  std::transform(values.begin(), values.end(), negated.begin(), [](double v) { return -v; });
  Predicate p = check_nonincreasing(std::move(name), times, negated, tol, mask);
  p.note = "max per-step decrease" + p.note.substr(std::string("max per-step increase").size());
  return p;
}

double max_pairwise_sine(std::span<const double> theta) {
  double worst = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i)
    for (std::size_t j = i + 1; j < theta.size(); ++j) worst = std::max(worst, std::abs(std::sin(theta[i] - theta[j])));
  return worst;
}

ScenarioOutput run_simulate(const ScenarioSetup& setup) {
  const Ensemble ensemble = protocol_ensemble(setup);
  const FrequencyResponse model(setup.model, setup.c);
  const SystemConfig config = make_config(setup, model, ensemble.omega);

  ScenarioOutput out;
  out.report = new_report("simulate", setup, ensemble);
  out.runs.push_back(simulate_run(std::string(to_string(setup.model)), config, ensemble.theta0));
  const auto& traj = out.runs.back().trajectory;
  const auto& d = out.runs.back().diagnostics;
  const bool homogeneous = is_homogeneous(config.omega);

  auto& res = out.report.results;
  res["homogeneous"] = homogeneous;
  res["initial_diameter"] = d.phase_diameter.front();
  res["initial_order_parameter"] = d.order.front().r;
  res["final_diameter"] = d.phase_diameter.back();
  res["final_frequency_diameter"] = d.freq_diameter.back();
  res["final_order_parameter"] = d.order.back().r;
  res["fit"] = fit_json(d, homogeneous);

  if (model.is_classical()) {
    const double nu_sum = std::accumulate(config.omega.begin(), config.omega.end(), 0.0);
    double worst = 0.0;
    std::optional<double> first;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      const auto& v = traj.velocities[k];
      const double dev = std::abs(std::accumulate(v.begin(), v.end(), 0.0) - nu_sum);
      worst = std::max(worst, dev);
      if (dev > 1e-10 && !first) first = traj.samples[k].t;
    }
    auto p = check_le("mean_frequency_conservation", worst, 1e-10);
    p.first_violation_time = first;
    out.report.predicates.push_back(std::move(p));
  } else {
    double fastest = 0.0;
    for (const auto& v : traj.velocities)
      for (double w : v) fastest = std::max(fastest, std::abs(w));
    out.report.predicates.push_back(check_lt("subluminal_velocities", fastest, model.velocity_bound()));
  }
  add_monotonicity_checks(out.report, traj, d);
  return out;
}

ScenarioOutput run_four_model_comparison(const ScenarioSetup& setup) {
  const Ensemble ensemble = protocol_ensemble(setup);
  const ModelKind kinds[] = {ModelKind::Classical, ModelKind::RelativisticFull, ModelKind::ProperVelocity,
                             ModelKind::Rapidity};

  ScenarioOutput out;
  out.report = new_report("compare", setup, ensemble);
  out.runs.resize(4);
  parallel_runs(4, [&](std::size_t k) {
    const SystemConfig config = make_config(setup, FrequencyResponse(kinds[k], setup.c), ensemble.omega);
    out.runs[k] = simulate_run(std::string(to_string(kinds[k])), config, ensemble.theta0);
  });

  const bool homogeneous = is_homogeneous(ensemble.omega);
  auto& res = out.report.results;
  res["homogeneous"] = homogeneous;
  Json rates = Json::object();
  for (const auto& run : out.runs) rates[run.label] = fit_json(run.diagnostics, homogeneous);
  res["fits"] = rates;

  Json snapshots = Json::array();
  for (double t : {0.0, 1.0, 2.0, 3.0}) {
    if (t > setup.t_final + 1e-9) break;
    Json snap;
    snap["t"] = t;
    for (const auto& run : out.runs) {
      const PhaseState* s = sample_at(run.trajectory, t);
      snap[run.label] = s ? Json(s->theta) : Json(nullptr);
    }
    snapshots.push_back(std::move(snap));
  }
  res["snapshots"] = snapshots;

  const double relativistic = rate_of(rates["relativistic"]);
  const double others = std::min({rate_of(rates["classical"]), rate_of(rates["proper-velocity"]),
                                  rate_of(rates["rapidity"])});
  auto p = check_lt("relativistic_rate_smallest", relativistic, others);
  p.note = homogeneous ? "full-series fits" : "fits over the initial transient, qualitative";
  out.report.predicates.push_back(std::move(p));
  return out;
}

ScenarioOutput run_rate_vs_c(const ScenarioSetup& setup, const std::vector<double>& c_list, bool homogeneous) {
  require_c_list(c_list, 1);
  ScenarioSetup local = setup;
  if (homogeneous && !local.omega) local.omega = std::vector<double>(local.n, 0.0);
  const Ensemble ensemble = protocol_ensemble(local);
  if (homogeneous && !is_homogeneous(ensemble.omega)) throw ConfigError("omega", "homogeneous run needs identical frequencies");

  ScenarioOutput out;
  out.report = new_report("rate-vs-c", local, ensemble);
  out.report.config["c_list"] = c_list;
  out.report.config["homogeneous"] = homogeneous;

  const std::size_t m = c_list.size();
  out.runs.resize(m + 1);
  parallel_runs(m + 1, [&](std::size_t k) {
    if (k == m) {
      out.runs[k] = simulate_run("classical", make_config(local, FrequencyResponse::classical(), ensemble.omega),
                                 ensemble.theta0);
      return;
    }
    const SystemConfig config =
        make_config(local, FrequencyResponse(ModelKind::RelativisticFull, c_list[k]), ensemble.omega);
    out.runs[k] = simulate_run("relativistic_c" + format_c(c_list[k]), config, ensemble.theta0);
  });

  Json table = Json::array();
  std::vector<double> rates(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& d = out.runs[k].diagnostics;
    Json row;
    row["c"] = c_list[k];
    row["fit"] = fit_json(d, homogeneous);
    row["terminal_diameter"] = d.phase_diameter.back();
    rates[k] = rate_of(row["fit"]);
    table.push_back(std::move(row));
  }
  auto& res = out.report.results;
  res["table"] = table;
  res["classical"] = {{"fit", fit_json(out.runs[m].diagnostics, homogeneous)},
                      {"terminal_diameter", out.runs[m].diagnostics.phase_diameter.back()}};

  for (std::size_t k = 1; k < m; ++k) {
    auto p = check_ge("rate_nondecreasing_c" + format_c(c_list[k - 1]) + "_c" + format_c(c_list[k]), rates[k],
                      rates[k - 1]);
    if (!homogeneous) p.note = "transient fits, qualitative";
    out.report.predicates.push_back(std::move(p));
  }
  auto find = [&](double c) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < m; ++k)
      if (std::abs(c_list[k] - c) <= 1e-12) return k;
    return std::nullopt;
  };
  if (auto i5 = find(5.0), i10 = find(10.0); i5 && i10) {
    const double rel = std::abs(rates[*i5] - rates[*i10]) / rates[*i10];
    out.report.predicates.push_back(check_lt("rates_c5_c10_within_10pct", rel, 0.10));
  }
  return out;
}

ScenarioOutput run_limit_scaling(const ScenarioSetup& setup, const std::vector<double>& c_list) {
  require_c_list(c_list, 2);
  const Ensemble sampled = protocol_ensemble(setup);

  struct Regime {
    std::string name;
    std::vector<double> omega;
  };
  const std::vector<Regime> regimes = {{"heterogeneous", sampled.omega},
                                       {"identical", std::vector<double>(setup.n, 0.2)},
                                       {"zero", std::vector<double>(setup.n, 0.0)}};

  ScenarioOutput out;
  out.report = new_report("limit", setup, sampled);
  out.report.config["c_list"] = c_list;

  const std::size_t m = c_list.size();
  const std::size_t per_regime = m + 1;
  out.runs.resize(regimes.size() * per_regime);
  parallel_runs(out.runs.size(), [&](std::size_t k) {
    const Regime& regime = regimes[k / per_regime];
    const std::size_t j = k % per_regime;
    if (j == 0) {
      out.runs[k] = simulate_run(regime.name + "_classical",
                                 make_config(setup, FrequencyResponse::classical(), regime.omega), sampled.theta0);
    } else {
      const double c = c_list[j - 1];
      out.runs[k] = simulate_run(regime.name + "_relativistic_c" + format_c(c),
                                 make_config(setup, FrequencyResponse(ModelKind::RelativisticFull, c), regime.omega),
                                 sampled.theta0);
    }
  });

  std::vector<double> checkpoints;
  for (int q = 1; q <= 5; ++q) checkpoints.push_back(setup.t_final * q / 5.0);

  Json regimes_json = Json::array();
  for (std::size_t r = 0; r < regimes.size(); ++r) {
    const Trajectory& reference = out.runs[r * per_regime].trajectory;
    std::vector<double> sup(m, 0.0);
    std::vector<std::vector<double>> sup_at(m, std::vector<double>(checkpoints.size(), 0.0));
    for (std::size_t j = 0; j < m; ++j) {
      const Trajectory& traj = out.runs[r * per_regime + j + 1].trajectory;
      double running = 0.0;
      std::size_t q = 0;
      for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.samples[k].t;
        while (q < checkpoints.size() && t > checkpoints[q] + 1e-9) sup_at[j][q++] = running;
        running = std::max(running, l1_discrepancy(traj.samples[k].theta, reference.samples[k].theta));
      }
      while (q < checkpoints.size()) sup_at[j][q++] = running;
      sup[j] = running;
    }

    Json table = Json::array();
    for (std::size_t j = 0; j < m; ++j) {
      const double c2 = c_list[j] * c_list[j];
      Json row;
      row["c"] = c_list[j];
      row["sup_l1"] = sup[j];
      row["c2_sup_l1"] = c2 * sup[j];
      Json cps = Json::array();
      for (std::size_t q = 0; q < checkpoints.size(); ++q)
        cps.push_back({{"t", checkpoints[q]}, {"c2_sup_l1", c2 * sup_at[j][q]}});
      row["checkpoints"] = cps;
      table.push_back(std::move(row));
    }
    Json rj;
    rj["regime"] = regimes[r].name;
    rj["omega"] = regimes[r].omega;
    rj["boundedness_asserted"] = regimes[r].name == "zero";
    rj["table"] = table;
    regimes_json.push_back(std::move(rj));

    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (std::abs(c_list[j] - 2.0 * c_list[i]) > 1e-9 * c_list[i]) continue;
        out.report.predicates.push_back(check_in("scaling_" + regimes[r].name + "_c" + format_c(c_list[i]) + "_c" +
                                                     format_c(c_list[j]),
                                                 sup[i] / sup[j], 3.0, 5.0));
      }
    }
    if (regimes[r].name == "zero") {
      for (std::size_t j = 0; j < m; ++j) {
        const double early = sup_at[j].front();
        const double growth = early > 0.0 ? (sup[j] - early) / early : 0.0;
        auto p = check_lt("bounded_zero_regime_c" + format_c(c_list[j]), growth, 0.05);
        p.note = "relative growth of c^2 s(c) from t=" + format_c(checkpoints.front()) + " to t=" +
                 format_c(checkpoints.back());
        out.report.predicates.push_back(std::move(p));
      }
    }
  }
  out.report.results["checkpoints"] = checkpoints;
  out.report.results["regimes"] = regimes_json;
  return out;
}

ScenarioOutput run_sync_predicates(const ScenarioSetup& setup) {
  const Ensemble ensemble = protocol_ensemble(setup);
  const FrequencyResponse model(setup.model, setup.c);
  const SystemConfig config = make_config(setup, model, ensemble.omega);

  ScenarioOutput out;
  out.report = new_report("sync-check", setup, ensemble);
  out.runs.push_back(simulate_run(std::string(to_string(setup.model)), config, ensemble.theta0));
  const auto& traj = out.runs.back().trajectory;
  const auto& d = out.runs.back().diagnostics;

  const bool homogeneous = is_homogeneous(config.omega);
  const double d0 = d.phase_diameter.front();
  const double r0 = d.order.front().r;
  const double d_omega = d.omega_diameter;
  const bool theta_star_defined = config.kappa > d_omega;
  const double t_star_angle = theta_star_defined ? theta_star(config.kappa, d_omega) : std::nan("");

  Json hyp;
  hyp["homogeneous"] = homogeneous;
  hyp["initial_diameter"] = d0;
  hyp["initial_order_parameter"] = r0;
  hyp["omega_diameter"] = d_omega;
  hyp["diameter_below_pi"] = d0 < kPi;
  hyp["kappa_gt_omega_diameter"] = theta_star_defined;
  hyp["kappa_gt_omega_diameter_over_d0"] = d0 > 0.0 && config.kappa > d_omega / d0;
  if (theta_star_defined) {
    hyp["theta_star"] = t_star_angle;
    hyp["diameter_below_pi_minus_theta_star"] = d0 < kPi - t_star_angle;
  }
  out.report.results["hypotheses"] = hyp;
  out.report.results["final_diameter"] = d.phase_diameter.back();
  out.report.results["final_frequency_diameter"] = d.freq_diameter.back();

  auto& preds = out.report.predicates;
  if (homogeneous && d0 < kPi) {
    double worst = 0.0;
    std::optional<double> first;
    for (std::size_t k = 0; k < d.times.size(); ++k) {
      worst = std::max(worst, d.phase_diameter[k] - d0);
      if (d.phase_diameter[k] > d0 + 1e-12 && !first) first = d.times[k];
    }
    auto p = check_le("half_circle_invariance", worst, 1e-12);
    p.first_violation_time = first;
    p.note = "max of D(theta(t)) - D(theta(0))";
    preds.push_back(std::move(p));
  }
  if (homogeneous && d0 > 0.0 && d0 < kPi) {
    const double rate = predicted_rate(config, d0);
    out.report.results["predicted_rate"] = rate;
    double worst = 0.0;
    std::optional<double> first;
    for (std::size_t k = 0; k < d.times.size(); ++k) {
      const double ratio = d.phase_diameter[k] / (std::exp(-rate * d.times[k]) * d0);
      worst = std::max(worst, ratio);
      if (ratio > 1.0 + kEnvelopeSlack && !first) first = d.times[k];
    }
    auto p = check_le("exponential_envelope", worst, 1.0 + kEnvelopeSlack);
    p.first_violation_time = first;
    p.note = "max of D(t) / (exp(-Lambda t) D(0))";
    preds.push_back(std::move(p));
  }
  if (!homogeneous && theta_star_defined) {
    const double bound = std::max(t_star_angle, std::min(d0, kPi - d0)) + 1e-6;
    std::optional<std::size_t> entry;
    for (std::size_t k = 0; k < d.times.size() && !entry; ++k)
      if (d.phase_diameter[k] <= bound) entry = k;
    double worst = *std::min_element(d.phase_diameter.begin(), d.phase_diameter.end());
    std::optional<double> first;
    if (entry) {
      worst = 0.0;
      for (std::size_t k = *entry; k < d.times.size(); ++k) {
        worst = std::max(worst, d.phase_diameter[k]);
        if (d.phase_diameter[k] > bound && !first) first = d.times[k];
      }
      out.report.results["trapping_entry_time"] = d.times[*entry];
    } else {
      out.report.results["trapping_entry_time"] = nullptr;
      first = d.times.back();
    }
    auto p = check_le("diameter_trapping", worst, bound);
    p.first_violation_time = first;
    p.note = entry ? "max D(theta) after entry" : "diameter never entered the trapping region";
    preds.push_back(std::move(p));
  }
  preds.push_back(check_lt("frequency_synchronization", d.freq_diameter.back(), kAsymptoticTolerance));
  if (homogeneous && r0 > 0.0) {
    const double sine = max_pairwise_sine(traj.samples.back().theta);
    out.report.results["final_max_pairwise_sine"] = sine;
    preds.push_back(check_lt("generic_dichotomy", sine, kAsymptoticTolerance));
  }
  add_monotonicity_checks(out.report, traj, d);
  return out;
}

ScenarioOutput run_rcs_crosscheck(const ScenarioSetup& setup) {
  if (setup.model != ModelKind::RelativisticFull) throw ConfigError("model", "rcs-check runs the relativistic model");
  const Ensemble ensemble = protocol_ensemble(setup);
  const FrequencyResponse model(setup.model, setup.c);
  const SystemConfig sampled = make_config(setup, model, ensemble.omega);

  // Consistent initial velocities: theta_dot(0) solves the first-order law.
  const std::vector<double> thetadot0 = rhs(sampled, ensemble.theta0);
  const std::vector<double> induced = induced_frequencies(sampled, ensemble.theta0, thetadot0);
  const SystemConfig config = make_config(setup, model, induced);

  ScenarioOutput out;
  out.report = new_report("rcs-check", setup, ensemble);
  out.runs.resize(2);
  MomentumTrajectory momentum;
  parallel_runs(2, [&](std::size_t k) {
    if (k == 0)
      out.runs[0] = simulate_run("relativistic_first_order", config, ensemble.theta0);
    else
      momentum = simulate_momentum(config, ensemble.theta0, thetadot0);
  });

  Trajectory as_phase;
  as_phase.config = config;
  for (std::size_t k = 0; k < momentum.size(); ++k) {
    as_phase.samples.push_back({momentum.samples[k].t, momentum.samples[k].theta});
    as_phase.velocities.push_back(momentum.velocities[k]);
  }
  out.runs[1] = make_run("relativistic_momentum", std::move(as_phase));

  const Trajectory& first = out.runs[0].trajectory;
  double deviation = 0.0;
  std::optional<double> first_bad;
  for (std::size_t k = 0; k < first.size(); ++k) {
    for (std::size_t i = 0; i < config.n; ++i) {
      const double dev = std::abs(first.samples[k].theta[i] - momentum.samples[k].theta[i]);
      deviation = std::max(deviation, dev);
      if (dev > kAsymptoticTolerance && !first_bad) first_bad = first.samples[k].t;
    }
  }
  double residual = 0.0;
  std::optional<double> first_residual;
  for (std::size_t k = 0; k < momentum.size(); ++k) {
    residual = std::max(residual, momentum.max_residual[k]);
    if (momentum.max_residual[k] >= 1e-8 && !first_residual) first_residual = momentum.samples[k].t;
  }
  double nu_gap = 0.0;
  for (std::size_t i = 0; i < config.n; ++i) nu_gap = std::max(nu_gap, std::abs(induced[i] - ensemble.omega[i]));

  auto& res = out.report.results;
  res["induced_frequencies"] = induced;
  res["induced_vs_sampled_max_gap"] = nu_gap;
  res["max_theta_deviation"] = deviation;
  res["max_conservation_residual"] = residual;

  auto p = check_le("theta_agreement", deviation, kAsymptoticTolerance);
  p.first_violation_time = first_bad;
  out.report.predicates.push_back(std::move(p));
  auto q = check_lt("induced_frequency_conservation", residual, 1e-8);
  q.first_violation_time = first_residual;
  out.report.predicates.push_back(std::move(q));
  return out;
}

ScenarioOutput run_admissibility(const ScenarioSetup& setup, std::size_t samples) {
  ScenarioOutput out;
  out.report.scenario = "admissibility";
  out.report.seed = setup.seed;
  out.report.rng_algorithm = std::string(rng::kAlgorithm);
  out.report.config = {{"c", setup.c}, {"samples", samples}};
  Json rows = Json::array();
  for (auto kind : {ModelKind::Classical, ModelKind::RelativisticFull, ModelKind::ProperVelocity,
                    ModelKind::Rapidity}) {
    const auto report = check_admissible(FrequencyResponse(kind, setup.c), samples);
    const std::string name(to_string(kind));
    rows.push_back({{"model", name},
                    {"pass", report.pass},
                    {"max_odd_residual", report.max_odd_residual},
                    {"max_roundtrip_residual", report.max_roundtrip_residual},
                    {"monotone", report.monotone},
                    {"failure", report.failure}});
    out.report.predicates.push_back(check_le("oddness_" + name, report.max_odd_residual, 1e-12));
    out.report.predicates.push_back(check_le("roundtrip_" + name, report.max_roundtrip_residual, 1e-10));
    out.report.predicates.push_back(check_ge("monotone_" + name, report.monotone ? 1.0 : 0.0, 1.0));
  }
  out.report.results["models"] = rows;
  return out;
}

}  // namespace relkura
