#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace relkura {

using Json = nlohmann::ordered_json;

/// One checked claim. `relation` reads as "observed <relation> expected".
struct Predicate {
  std::string name;
  std::string relation;  ///< "<=", ">=", "<", "in", "=="
  double expected = 0.0;
  double observed = 0.0;
  bool pass = false;
  std::optional<double> expected_upper;           ///< upper end for "in"
  std::optional<double> first_violation_time;     ///< set on time-series failures
  std::optional<double> margin;                   ///< signed slack, negative on failure
  std::string note;
};

Predicate check_le(std::string name, double observed, double bound);
Predicate check_lt(std::string name, double observed, double bound);
Predicate check_ge(std::string name, double observed, double bound);
Predicate check_in(std::string name, double observed, double lo, double hi);

struct ExperimentReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string rng_algorithm;
  Json config = Json::object();
  Json results = Json::object();
  std::vector<Predicate> predicates;
  std::vector<std::string> files;

  bool all_passed() const;
  std::size_t failures() const;
  Json to_json() const;
};

Json to_json(const Predicate& p);

}  // namespace relkura
