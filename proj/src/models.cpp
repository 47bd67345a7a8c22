#include "relkura/models.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

#include "relkura/error.hpp"

namespace relkura {

namespace {

constexpr double kStepTolerance = 4.0 * std::numeric_limits<double>::epsilon();
constexpr int kNewtonBudget = 200;

// Largest representable speed strictly below c.
double subluminal(double v, double c) {
  const double cap = std::nextafter(c, 0.0);
  return std::clamp(v, -cap, cap);
}

// Inverse of w Gamma (1 + Gamma/c^2) for y >= 0. F is convex on [0, c) and
// dominates the proper-velocity map, so c y / sqrt(c^2 + y^2) bounds the root
// from above; Newton started there decreases monotonically. Bisection guards
// against iterates leaving the bracket.
double invert_relativistic(double y, double c) {
  if (y == 0.0) return 0.0;
  double lo = 0.0;
  double hi = subluminal(c * y / std::hypot(c, y), c);
  double w = hi;
  for (int it = 0; it < kNewtonBudget; ++it) {
    const double gamma = lorentz_factor(w, c);
    const double residual = w * gamma * (1.0 + gamma / (c * c)) - y;
    if (residual == 0.0) return w;
    if (residual > 0.0)
      hi = w;
    else
      lo = w;
    const double slope = gamma * gamma * gamma + gamma * gamma * (2.0 * gamma * gamma - 1.0) / (c * c);
    double next = w - residual / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - w) <= kStepTolerance * w || hi - lo <= kStepTolerance * hi) return next;
    w = next;
  }
  std::ostringstream msg;
  msg << "relativistic inverse did not converge for y=" << y << " c=" << c;
  throw ConvergenceError(msg.str());
}

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Classical: return "classical";
    case ModelKind::RelativisticFull: return "relativistic";
    case ModelKind::ProperVelocity: return "proper-velocity";
    case ModelKind::Rapidity: return "rapidity";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) noexcept {
  for (auto kind : {ModelKind::Classical, ModelKind::RelativisticFull, ModelKind::ProperVelocity,
                    ModelKind::Rapidity}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

FrequencyResponse::FrequencyResponse(ModelKind kind, double c) : kind_(kind), c_(c) {
  if (kind_ != ModelKind::Classical && !(std::isfinite(c) && c > 0.0)) {
    throw DomainError("speed of light c must be finite and positive");
  }
  if (kind_ == ModelKind::Classical) c_ = std::numeric_limits<double>::infinity();
}

double FrequencyResponse::velocity_bound() const noexcept {
  return is_classical() ? std::numeric_limits<double>::infinity() : c_;
}

double lorentz_factor(double omega, double c) noexcept {
  const double beta = omega / c;
  return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

static void require_subluminal(const FrequencyResponse& model, double omega) {
  if (!std::isfinite(omega) || std::abs(omega) >= model.velocity_bound()) {
    std::ostringstream msg;
    msg << "velocity " << omega << " outside (-" << model.velocity_bound() << ", "
        << model.velocity_bound() << ")";
    throw DomainError(msg.str());
  }
}

double eval_f(const FrequencyResponse& model, double omega) {
  require_subluminal(model, omega);
  const double c = model.c();
  switch (model.kind()) {
    case ModelKind::Classical: return omega;
    case ModelKind::RelativisticFull: {
      const double gamma = lorentz_factor(omega, c);
      return omega * gamma * (1.0 + gamma / (c * c));
    }
    case ModelKind::ProperVelocity: return omega * lorentz_factor(omega, c);
    case ModelKind::Rapidity: return c * std::atanh(omega / c);
  }
  return omega;
}

double eval_f_prime(const FrequencyResponse& model, double omega) {
  require_subluminal(model, omega);
  if (model.is_classical()) return 1.0;
  const double c = model.c();
  const double gamma = lorentz_factor(omega, c);
  const double gamma2 = gamma * gamma;
  switch (model.kind()) {
    case ModelKind::RelativisticFull: return gamma2 * gamma + gamma2 * (2.0 * gamma2 - 1.0) / (c * c);
    case ModelKind::ProperVelocity: return gamma2 * gamma;
    case ModelKind::Rapidity: return gamma2;
    case ModelKind::Classical: break;
  }
  return 1.0;
}

double eval_g(const FrequencyResponse& model, double y) {
  if (!std::isfinite(y)) throw DomainError("drive must be finite");
  const double c = model.c();
  switch (model.kind()) {
    case ModelKind::Classical: return y;
    case ModelKind::ProperVelocity: return subluminal(c * y / std::hypot(c, y), c);
    case ModelKind::Rapidity: return subluminal(c * std::tanh(y / c), c);
    case ModelKind::RelativisticFull: {
      const double w = invert_relativistic(std::abs(y), c);
      return std::signbit(y) ? -w : w;
    }
  }
  return y;
}

double eval_g_prime(const FrequencyResponse& model, double y) {
  if (model.is_classical()) {
    if (!std::isfinite(y)) throw DomainError("drive must be finite");
    return 1.0;
  }
  return 1.0 / eval_f_prime(model, eval_g(model, y));
}

double min_g_prime(const FrequencyResponse& model, double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi) {
    throw DomainError("min_g_prime needs a finite interval with lo <= hi");
  }
  const double extreme = std::abs(lo) > std::abs(hi) ? lo : hi;
  const double value = eval_g_prime(model, extreme);
#ifndef NDEBUG
  assert(value <= min_g_prime_sampled(model, lo, hi) * (1.0 + 1e-12));
#endif
  return value;
}

double min_g_prime_sampled(const FrequencyResponse& model, double lo, double hi,
                           std::size_t samples) {
  if (samples < 2 || lo == hi) return eval_g_prime(model, lo);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples; ++k) {
    const double y = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(samples - 1);
    best = std::min(best, eval_g_prime(model, y));
  }
  return best;
}

AdmissibilityReport check_admissible(const FrequencyResponse& model, std::size_t samples) {
  if (samples < 3) throw DomainError("admissibility check needs at least 3 samples");
  AdmissibilityReport report;
  report.samples = samples;
  const double half_width = model.is_classical() ? 1e3 : 0.999 * model.velocity_bound();

  double previous = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples; ++k) {
    const double w = -half_width + 2.0 * half_width * static_cast<double>(k) / static_cast<double>(samples - 1);
    const double fw = eval_f(model, w);
    const double odd = std::abs(eval_f(model, -w) + fw) / std::max(1.0, std::abs(fw));
    const double roundtrip = std::abs(eval_g(model, fw) - w);
    report.max_odd_residual = std::max(report.max_odd_residual, odd);
    report.max_roundtrip_residual = std::max(report.max_roundtrip_residual, roundtrip);
    if (!(fw > previous)) {
      report.monotone = false;
      if (report.failure.empty()) report.failure = "F not strictly increasing at w=" + std::to_string(w);
    }
    previous = fw;
  }
  if (report.max_odd_residual > 1e-12 && report.failure.empty()) report.failure = "oddness residual above 1e-12";
  if (report.max_roundtrip_residual > 1e-10 && report.failure.empty()) report.failure = "round trip residual above 1e-10";
  report.pass = report.failure.empty();
  return report;
}

}  // namespace relkura
