#include "relkura/report.hpp"

#include <algorithm>
#include <cmath>

namespace relkura {

namespace {

// NaN and infinities have no JSON spelling.
Json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

Predicate make(std::string name, std::string relation, double expected, double observed) {
  Predicate p;
  p.name = std::move(name);
  p.relation = std::move(relation);
  p.expected = expected;
  p.observed = observed;
  return p;
}

}  // namespace

Predicate check_le(std::string name, double observed, double bound) {
  Predicate p = make(std::move(name), "<=", bound, observed);
  p.pass = observed <= bound;
  p.margin = bound - observed;
  return p;
}

Predicate check_lt(std::string name, double observed, double bound) {
  Predicate p = make(std::move(name), "<", bound, observed);
  p.pass = observed < bound;
  p.margin = bound - observed;
  return p;
}

Predicate check_ge(std::string name, double observed, double bound) {
  Predicate p = make(std::move(name), ">=", bound, observed);
  p.pass = observed >= bound;
  p.margin = observed - bound;
  return p;
}

Predicate check_in(std::string name, double observed, double lo, double hi) {
  Predicate p = make(std::move(name), "in", lo, observed);
  p.expected_upper = hi;
  p.pass = observed >= lo && observed <= hi;
  p.margin = std::min(observed - lo, hi - observed);
  return p;
}

bool ExperimentReport::all_passed() const { return failures() == 0; }

std::size_t ExperimentReport::failures() const {
  return static_cast<std::size_t>(std::count_if(predicates.begin(), predicates.end(), [](const Predicate& p) { return !p.pass; }));
}

Json to_json(const Predicate& p) {
  Json j;
  j["name"] = p.name;
  j["relation"] = p.relation;
  if (p.expected_upper)
    j["expected"] = Json::array({number(p.expected), number(*p.expected_upper)});
  else
    j["expected"] = number(p.expected);
  j["observed"] = number(p.observed);
  j["pass"] = p.pass;
  if (p.margin) j["margin"] = number(*p.margin);
  if (p.first_violation_time) j["first_violation_time"] = number(*p.first_violation_time);
  if (!p.note.empty()) j["note"] = p.note;
  return j;
}

Json ExperimentReport::to_json() const {
  Json j;
  j["scenario"] = scenario;
  j["seed"] = seed;
  j["rng"] = rng_algorithm;
  j["config"] = config;
  j["results"] = results;
  Json preds = Json::array();
  for (const auto& p : predicates) preds.push_back(relkura::to_json(p));
  j["predicates"] = std::move(preds);
  j["files"] = files;
  j["passed"] = all_passed();
  return j;
}

}  // namespace relkura
