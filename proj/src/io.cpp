#include "relkura/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "relkura/error.hpp"

namespace relkura {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const std::size_t n = traj.config.n;
  out << 't';
  for (std::size_t i = 1; i <= n; ++i) out << ",theta_" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",thetadot_" << i;
  out << '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out << format_number(traj.samples[k].t);
    for (double v : traj.samples[k].theta) out << ',' << format_number(v);
    for (double v : traj.velocities[k]) out << ',' << format_number(v);
    out << '\n';
  }
}

void write_diagnostics_csv(std::ostream& out, const DiagnosticsSeries& diag) {
  out << "t,diameter,freq_diameter,r,phi,potential,energy\n";
  for (std::size_t k = 0; k < diag.times.size(); ++k) {
    const auto& op = diag.order[k];
    out << format_number(diag.times[k]) << ',' << format_number(diag.phase_diameter[k]) << ','
        << format_number(diag.freq_diameter[k]) << ',' << format_number(op.r) << ','
        << (op.phi_defined ? format_number(op.phi) : "nan") << ',' << format_number(diag.potential[k]) << ','
        << format_number(diag.energy[k]) << '\n';
  }
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError("out", "cannot write " + file.string());
  return out;
}

}  // namespace

std::vector<std::string> write_run_files(const std::filesystem::path& dir, const NamedRun& run) {
  const std::string traj_name = "trajectory_" + run.label + ".csv";
  const std::string diag_name = "diagnostics_" + run.label + ".csv";
  {
    auto out = open_for_write(dir / traj_name);
    write_trajectory_csv(out, run.trajectory);
  }
  {
    auto out = open_for_write(dir / diag_name);
    write_diagnostics_csv(out, run.diagnostics);
  }
  return {traj_name, diag_name};
}

void write_report(const std::filesystem::path& file, const ExperimentReport& report) {
  auto out = open_for_write(file);
  out << report.to_json().dump(2) << '\n';
}

}  // namespace relkura
