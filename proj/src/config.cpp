#include "relkura/config.hpp"

#include <cmath>
#include <fstream>

#include "relkura/error.hpp"

namespace relkura {

std::string_view to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::Simulate: return "simulate";
    case Scenario::Compare: return "compare";
    case Scenario::RateVsC: return "rate-vs-c";
    case Scenario::Limit: return "limit";
    case Scenario::SyncCheck: return "sync-check";
    case Scenario::RcsCheck: return "rcs-check";
    case Scenario::Admissibility: return "admissibility";
  }
  return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view name) noexcept {
  for (auto s : {Scenario::Simulate, Scenario::Compare, Scenario::RateVsC, Scenario::Limit, Scenario::SyncCheck,
                 Scenario::RcsCheck, Scenario::Admissibility}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

double RunConfig::effective_dt() const {
  if (dt) return *dt;
  return scenario == Scenario::RcsCheck ? 1e-3 : 0.01;
}

double RunConfig::effective_t_final() const {
  if (t_final) return *t_final;
  switch (scenario) {
    case Scenario::RateVsC: return 20.0;
    case Scenario::SyncCheck: return 50.0;
    default: return 10.0;
  }
}

std::vector<double> RunConfig::effective_c_list() const {
  if (c_list) return *c_list;
  if (scenario == Scenario::Limit) return {5.0, 10.0, 20.0};
  return {0.5, 1.0, 5.0, 10.0};
}

namespace {

double get_number(const Json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

std::size_t get_count(const Json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(key, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

std::vector<double> get_vector(const Json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_array()) throw ConfigError(key, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(key, "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::pair<double, double> get_interval(const Json& doc, const char* key) {
  const auto v = get_vector(doc, key);
  if (v.size() != 2) throw ConfigError(key, "expected [lo, hi]");
  return {v[0], v[1]};
}

bool get_bool(const Json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const Json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

RunConfig parse_config_json(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config", "expected a JSON object");
  static const char* const kKeys[] = {"scenario", "model",       "n",      "kappa",   "c",
                                      "dt",       "t_final",     "record_every", "seed", "omega",
                                      "theta0",   "c_list",      "homogeneous",  "frequency_interval",
                                      "center_frequencies", "frequency_spread", "phase_interval", "samples", "out"};
  for (const auto& item : doc.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || item.key() == k;
    if (!known) throw ConfigError(item.key(), "unknown configuration key");
  }

  RunConfig cfg;
  if (doc.contains("scenario")) {
    const auto name = get_string(doc, "scenario");
    const auto s = parse_scenario(name);
    if (!s) throw ConfigError("scenario", "unknown scenario '" + name + "'");
    cfg.scenario = *s;
  }
  if (doc.contains("model")) {
    const auto name = get_string(doc, "model");
    const auto m = parse_model_kind(name);
    if (!m) throw ConfigError("model", "unknown model '" + name + "'");
    cfg.model = *m;
  }
  if (doc.contains("n")) cfg.n = get_count(doc, "n");
  if (doc.contains("kappa")) cfg.kappa = get_number(doc, "kappa");
  if (doc.contains("c")) cfg.c = get_number(doc, "c");
  if (doc.contains("dt")) cfg.dt = get_number(doc, "dt");
  if (doc.contains("t_final")) cfg.t_final = get_number(doc, "t_final");
  if (doc.contains("record_every")) cfg.record_every = get_count(doc, "record_every");
  if (doc.contains("seed")) {
    const auto& v = doc.at("seed");
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
      throw ConfigError("seed", "expected a nonnegative integer");
    cfg.seed = v.get<std::uint64_t>();
  }
  if (doc.contains("omega")) cfg.omega = get_vector(doc, "omega");
  if (doc.contains("theta0")) cfg.theta0 = get_vector(doc, "theta0");
  if (doc.contains("c_list")) cfg.c_list = get_vector(doc, "c_list");
  if (doc.contains("homogeneous")) cfg.homogeneous = get_bool(doc, "homogeneous");
  if (doc.contains("frequency_interval")) cfg.frequency_interval = get_interval(doc, "frequency_interval");
  if (doc.contains("center_frequencies")) cfg.center_frequencies = get_bool(doc, "center_frequencies");
  if (doc.contains("frequency_spread")) cfg.frequency_spread = get_number(doc, "frequency_spread");
  if (doc.contains("phase_interval")) cfg.phase_interval = get_interval(doc, "phase_interval");
  if (doc.contains("samples")) cfg.samples = get_count(doc, "samples");
  if (doc.contains("out")) cfg.out = get_string(doc, "out");
  return cfg;
}

RunConfig parse_config(const std::optional<std::filesystem::path>& config_path, const Json& overrides) {
  Json doc = Json::object();
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) throw ConfigError("config", "cannot open " + config_path->string());
    try {
      doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
      throw ConfigError("config", std::string("invalid JSON: ") + err.what());
    }
    if (!doc.is_object()) throw ConfigError("config", "expected a JSON object");
  }
  for (const auto& item : overrides.items()) doc[item.key()] = item.value();
  RunConfig cfg = parse_config_json(doc);
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  if (cfg.n == 0) throw ConfigError("n", "must be at least 1");
  if (!(std::isfinite(cfg.kappa) && cfg.kappa >= 0.0)) throw ConfigError("kappa", "must be finite and nonnegative");
  if (!(std::isfinite(cfg.c) && cfg.c > 0.0)) throw ConfigError("c", "must be finite and positive");
  const double dt = cfg.effective_dt();
  if (!(std::isfinite(dt) && dt > 0.0)) throw ConfigError("dt", "must be positive");
  const double t_final = cfg.effective_t_final();
  if (!(std::isfinite(t_final) && t_final >= dt)) throw ConfigError("t_final", "must be at least dt");
  if (cfg.record_every == 0) throw ConfigError("record_every", "must be at least 1");
  if (cfg.omega && cfg.omega->size() != cfg.n) throw ConfigError("omega", "length must equal n");
  if (cfg.theta0 && cfg.theta0->size() != cfg.n) throw ConfigError("theta0", "length must equal n");
  for (const auto* v : {&cfg.omega, &cfg.theta0})
    if (*v)
      for (double x : **v)
        if (!std::isfinite(x)) throw ConfigError(v == &cfg.omega ? "omega" : "theta0", "entries must be finite");
  if (cfg.frequency_interval.first > cfg.frequency_interval.second)
    throw ConfigError("frequency_interval", "bounds out of order");
  if (cfg.phase_interval && cfg.phase_interval->first > cfg.phase_interval->second)
    throw ConfigError("phase_interval", "bounds out of order");
  if (cfg.frequency_spread && !(*cfg.frequency_spread >= 0.0)) throw ConfigError("frequency_spread", "must be nonnegative");
  if (cfg.samples < 3) throw ConfigError("samples", "must be at least 3");
  const auto c_list = cfg.effective_c_list();
  for (std::size_t k = 0; k < c_list.size(); ++k) {
    if (!(std::isfinite(c_list[k]) && c_list[k] > 0.0)) throw ConfigError("c_list", "entries must be positive");
    if (k > 0 && !(c_list[k] > c_list[k - 1])) throw ConfigError("c_list", "entries must be strictly ascending");
  }
  if (cfg.scenario == Scenario::RcsCheck && cfg.model != ModelKind::RelativisticFull)
    throw ConfigError("model", "rcs-check runs the relativistic model");
}

ScenarioSetup to_setup(const RunConfig& cfg) {
  ScenarioSetup s;
  s.seed = cfg.seed;
  s.n = cfg.n;
  s.kappa = cfg.kappa;
  s.dt = cfg.effective_dt();
  s.t_final = cfg.effective_t_final();
  s.record_every = cfg.record_every;
  s.model = cfg.model;
  s.c = cfg.c;
  s.freq_lo = cfg.frequency_interval.first;
  s.freq_hi = cfg.frequency_interval.second;
  s.center_frequencies = cfg.center_frequencies;
  s.frequency_spread = cfg.frequency_spread;
  s.phase_interval = cfg.phase_interval;
  s.omega = cfg.omega;
  s.theta0 = cfg.theta0;
  return s;
}

ScenarioOutput run_scenario(const RunConfig& cfg) {
  const ScenarioSetup setup = to_setup(cfg);
  switch (cfg.scenario) {
    case Scenario::Simulate: return run_simulate(setup);
    case Scenario::Compare: return run_four_model_comparison(setup);
    case Scenario::RateVsC: return run_rate_vs_c(setup, cfg.effective_c_list(), cfg.homogeneous);
    case Scenario::Limit: return run_limit_scaling(setup, cfg.effective_c_list());
    case Scenario::SyncCheck: return run_sync_predicates(setup);
    case Scenario::RcsCheck: return run_rcs_crosscheck(setup);
    case Scenario::Admissibility: return run_admissibility(setup, cfg.samples);
  }
  throw ConfigError("scenario", "unhandled scenario");
}

}  // namespace relkura
