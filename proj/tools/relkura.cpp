// relkura: command-line front end for the relativistic Kuramoto scenarios.
//
// Exit codes: 0 all predicates pass, 1 some predicate failed, 2 configuration
// error, 3 numerical failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "relkura/config.hpp"
#include "relkura/error.hpp"
#include "relkura/io.hpp"
#include "relkura/kernels.hpp"

namespace {

std::string describe(const relkura::Predicate& p) {
  std::ostringstream line;
  line << (p.pass ? "PASS " : "FAIL ") << p.name << ": observed " << relkura::format_number(p.observed) << ' '
       << p.relation << ' ';
  if (p.expected_upper)
    line << '[' << relkura::format_number(p.expected) << ", " << relkura::format_number(*p.expected_upper) << ']';
  else
    line << relkura::format_number(p.expected);
  if (!p.pass && p.first_violation_time) line << " (first violation t=" << relkura::format_number(*p.first_violation_time) << ')';
  return line.str();
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw relkura::ConfigError("c_list", "cannot parse '" + item + "'");
    }
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic Kuramoto simulations and synchronization checks"};
  std::optional<std::string> scenario, model, out, c_list;
  std::optional<std::size_t> n, record_every;
  std::optional<double> kappa, c, dt, t_final;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> config_path;

  app.add_option("--scenario", scenario,
                 "simulate | compare | rate-vs-c | limit | sync-check | rcs-check | admissibility");
  app.add_option("--model", model, "classical | relativistic | proper-velocity | rapidity");
  app.add_option("--n", n, "number of oscillators (default 10)");
  app.add_option("--kappa", kappa, "coupling strength (default 1)");
  app.add_option("--c", c, "speed of light (default 1)");
  app.add_option("--dt", dt, "RK4 step (default 0.01, 0.001 for rcs-check)");
  app.add_option("--t-final", t_final, "integration horizon");
  app.add_option("--record-every", record_every, "steps between recorded samples (default 1)");
  app.add_option("--seed", seed, "RNG seed (default 0)");
  app.add_option("--c-list", c_list, "comma-separated speeds for rate-vs-c and limit");
  app.add_option("--out", out, "output directory (default relkura_out)");
  app.add_option("--config", config_path, "JSON configuration file; flags override its values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "relkura: " << e.what() << '\n';
    return 2;
  }

  try {
    relkura::kernels::configure_threads_from_env();

    relkura::Json overrides = relkura::Json::object();
    if (scenario) overrides["scenario"] = *scenario;
    if (model) overrides["model"] = *model;
    if (n) overrides["n"] = *n;
    if (kappa) overrides["kappa"] = *kappa;
    if (c) overrides["c"] = *c;
    if (dt) overrides["dt"] = *dt;
    if (t_final) overrides["t_final"] = *t_final;
    if (record_every) overrides["record_every"] = *record_every;
    if (seed) overrides["seed"] = *seed;
    if (c_list) overrides["c_list"] = parse_list(*c_list);
    if (out) overrides["out"] = *out;

    std::optional<std::filesystem::path> path;
    if (config_path) path = *config_path;
    const relkura::RunConfig config = relkura::parse_config(path, overrides);

    std::error_code ec;
    std::filesystem::create_directories(config.out, ec);
    if (ec) throw relkura::ConfigError("out", "cannot create " + config.out.string() + ": " + ec.message());

    relkura::ScenarioOutput result = relkura::run_scenario(config);
    for (const auto& run : result.runs) {
      for (auto& file : relkura::write_run_files(config.out, run)) result.report.files.push_back(std::move(file));
    }
    result.report.files.push_back("report.json");
    relkura::write_report(config.out / "report.json", result.report);

    for (const auto& p : result.report.predicates) std::cout << describe(p) << '\n';
    std::cout << relkura::to_string(config.scenario) << ": " << result.report.predicates.size() - result.report.failures()
              << '/' << result.report.predicates.size() << " predicates passed; report at "
              << (config.out / "report.json").string() << '\n';
    return result.report.all_passed() ? 0 : 1;
  } catch (const relkura::ConfigError& e) {
    std::cerr << "relkura: configuration error in " << e.what() << '\n';
    return 2;
  } catch (const relkura::UnsupportedModel& e) {
    std::cerr << "relkura: " << e.what() << '\n';
    return 2;
  } catch (const relkura::NumericalError& e) {
    std::cerr << "relkura: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "relkura: " << e.what() << '\n';
    return 3;
  }
}
