#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relkura/experiments.hpp"
#include "relkura/models.hpp"
#include "relkura/report.hpp"

namespace relkura {

enum class Scenario { Simulate, Compare, RateVsC, Limit, SyncCheck, RcsCheck, Admissibility };

std::string_view to_string(Scenario s) noexcept;
std::optional<Scenario> parse_scenario(std::string_view name) noexcept;

/// Everything one CLI invocation needs. Unset optionals take scenario defaults.
struct RunConfig {
  Scenario scenario = Scenario::Simulate;
  ModelKind model = ModelKind::RelativisticFull;
  std::size_t n = 10;
  double kappa = 1.0;
  double c = 1.0;
  std::optional<double> dt;
  std::optional<double> t_final;
  std::size_t record_every = 1;
  std::uint64_t seed = 0;
  std::optional<std::vector<double>> omega;
  std::optional<std::vector<double>> theta0;
  std::optional<std::vector<double>> c_list;
  bool homogeneous = true;
  std::pair<double, double> frequency_interval{-0.15, 0.15};
  bool center_frequencies = false;
  std::optional<double> frequency_spread;
  std::optional<std::pair<double, double>> phase_interval;
  std::size_t samples = 1001;
  std::filesystem::path out = "relkura_out";

  double effective_dt() const;
  double effective_t_final() const;
  std::vector<double> effective_c_list() const;
};

/// Reads the JSON keys of RunConfig (snake_case, see README) on top of the
/// defaults. Throws ConfigError naming the offending key.
RunConfig parse_config_json(const Json& doc);

/// Loads `config_path` when given, then applies `overrides` key by key, then
/// validates.
RunConfig parse_config(const std::optional<std::filesystem::path>& config_path, const Json& overrides);

/// Throws ConfigError naming the first invalid field.
void validate(const RunConfig& config);

ScenarioSetup to_setup(const RunConfig& config);

/// Dispatches to the scenario runner.
ScenarioOutput run_scenario(const RunConfig& config);

}  // namespace relkura
