#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("relkura_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const fs::path& dir) {
  const std::string cmd = std::string(RELKURA_CLI_PATH) + " " + args + " > " + (dir / "stdout.txt").string() +
                          " 2> " + (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

TEST_CASE("simulate writes csv files and a report") {
  const auto dir = scratch("simulate");
  const auto out = dir / "out";
  REQUIRE(run("--scenario simulate --model relativistic --t-final 2 --seed 3 --out " + out.string(), dir) == 0);
  CHECK(fs::exists(out / "report.json"));
  const std::string traj = slurp(out / "trajectory_relativistic.csv");
  CHECK(traj.rfind("t,theta_1,", 0) == 0);
  CHECK(traj.find("thetadot_10") != std::string::npos);
  const std::string diag = slurp(out / "diagnostics_relativistic.csv");
  CHECK(diag.rfind("t,diameter,freq_diameter,r,phi,potential,energy\n", 0) == 0);
  CHECK(slurp(dir / "stdout.txt").find("PASS potential_nonincreasing") != std::string::npos);
  const std::string report = slurp(out / "report.json");
  CHECK(report.find("\"rng\": \"splitmix64-counter/v1\"") != std::string::npos);
  CHECK(report.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("reruns are byte identical") {
  const auto dir = scratch("rerun");
  const std::string args = "--scenario compare --t-final 3 --seed 11 --out ";
  REQUIRE(run(args + (dir / "a").string(), dir) == 0);
  REQUIRE(run(args + (dir / "b").string(), dir) == 0);
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    const auto name = entry.path().filename();
    CHECK(slurp(entry.path()) == slurp(dir / "b" / name));
  }
}

TEST_CASE("config file with flag override") {
  const auto dir = scratch("config");
  std::ofstream(dir / "cfg.json") << R"({"scenario": "simulate", "model": "rapidity", "n": 4, "t_final": 1})";
  REQUIRE(run("--config " + (dir / "cfg.json").string() + " --n 5 --out " + (dir / "out").string(), dir) == 0);
  const std::string header = slurp(dir / "out" / "trajectory_rapidity.csv");
  CHECK(header.find("theta_5") != std::string::npos);
  CHECK(header.find("theta_6") == std::string::npos);
}

TEST_CASE("failed predicate exits with 1") {
  const auto dir = scratch("fail");
  CHECK(run("--scenario limit --c-list 0.5,1 --t-final 5 --out " + (dir / "out").string(), dir) == 1);
  CHECK(slurp(dir / "stdout.txt").find("FAIL scaling_") != std::string::npos);
  CHECK(slurp(dir / "out" / "report.json").find("\"passed\": false") != std::string::npos);
}

TEST_CASE("configuration errors exit with 2") {
  const auto dir = scratch("config_error");
  CHECK(run("--dt -1 --out " + (dir / "out").string(), dir) == 2);
  CHECK(slurp(dir / "stderr.txt").find("dt") != std::string::npos);
  CHECK(run("--model newtonian", dir) == 2);
  CHECK(run("--no-such-flag", dir) == 2);
  CHECK(run("--scenario rcs-check --model classical", dir) == 2);
}

TEST_CASE("numerical failures exit with 3") {
  const auto dir = scratch("numerical");
  std::ofstream(dir / "cfg.json") << R"({"model": "classical", "n": 2, "kappa": 1e308,
    "omega": [1e308, -1e308], "theta0": [0.0, 1.0], "dt": 1, "t_final": 1})";
  CHECK(run("--config " + (dir / "cfg.json").string() + " --out " + (dir / "out").string(), dir) == 3);
}
