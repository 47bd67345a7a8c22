#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "relkura/diagnostics.hpp"
#include "relkura/dynamics.hpp"
#include "relkura/experiments.hpp"
#include "relkura/report.hpp"

namespace relkura {

/// 17 significant digits; NaN as "nan".
std::string format_number(double v);

/// Header t,theta_1..theta_N,thetadot_1..thetadot_N; one row per sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Header t,diameter,freq_diameter,r,phi,potential,energy.
void write_diagnostics_csv(std::ostream& out, const DiagnosticsSeries& diag);

/// Writes trajectory_<label>.csv and diagnostics_<label>.csv into dir;
/// returns the file names (relative to dir).
std::vector<std::string> write_run_files(const std::filesystem::path& dir, const NamedRun& run);

/// Two-space indented report.json with the report's field order.
void write_report(const std::filesystem::path& file, const ExperimentReport& report);

}  // namespace relkura
