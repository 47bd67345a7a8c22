#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace relkura {

/// Drive nonlinearity selecting the left-hand side F(theta_dot) of
///   F(theta_dot_i) = nu_i + (kappa/N) sum_j sin(theta_j - theta_i).
enum class ModelKind {
  Classical,         ///< F(w) = w
  RelativisticFull,  ///< F(w) = w Gamma (1 + Gamma / c^2)
  ProperVelocity,    ///< F(w) = w Gamma
  Rapidity,          ///< F(w) = c atanh(w / c)
};

/// Config-file spelling: "classical", "relativistic", "proper-velocity", "rapidity".
std::string_view to_string(ModelKind kind) noexcept;
std::optional<ModelKind> parse_model_kind(std::string_view name) noexcept;

/// An odd, strictly increasing C^1 map F : (-L, L) -> R together with its
/// inverse G. L is the speed of light c for the relativistic kinds and
/// infinite for the classical model, which degenerates to F = G = identity.
class FrequencyResponse {
 public:
  /// Throws DomainError unless c is finite and positive (ignored for Classical).
  FrequencyResponse(ModelKind kind, double c);

  static FrequencyResponse classical() { return {ModelKind::Classical, 1.0}; }

  ModelKind kind() const noexcept { return kind_; }
  double c() const noexcept { return c_; }
  double velocity_bound() const noexcept;
  bool is_classical() const noexcept { return kind_ == ModelKind::Classical; }

  friend bool operator==(const FrequencyResponse&, const FrequencyResponse&) = default;

 private:
  ModelKind kind_;
  double c_;
};

/// Lorentz factor 1/sqrt((1 - w/c)(1 + w/c)); factored to keep precision as |w| -> c.
double lorentz_factor(double omega, double c) noexcept;

/// F(omega). Throws DomainError when |omega| >= velocity_bound or omega is not finite.
double eval_f(const FrequencyResponse& model, double omega);

/// F'(omega) > 0, closed form for every kind:
///   Classical 1, ProperVelocity Gamma^3, Rapidity Gamma^2,
///   RelativisticFull Gamma^3 + Gamma^2 (2 Gamma^2 - 1) / c^2.
double eval_f_prime(const FrequencyResponse& model, double omega);

/// G(y) = F^{-1}(y), always strictly inside (-L, L). The full relativistic
/// kind is inverted by safeguarded Newton; the others have closed forms.
/// Throws ConvergenceError if the root finder exhausts its budget.
double eval_g(const FrequencyResponse& model, double y);

/// G'(y) = 1 / F'(G(y)).
double eval_g_prime(const FrequencyResponse& model, double y);

/// min of G' over [lo, hi]. G' is even and decreasing in |y| for all kinds, so
/// the minimum sits at the endpoint of larger magnitude.
double min_g_prime(const FrequencyResponse& model, double lo, double hi);

/// Brute-force minimum of G' over `samples` equispaced points of [lo, hi].
double min_g_prime_sampled(const FrequencyResponse& model, double lo, double hi,
                           std::size_t samples = 1001);

struct AdmissibilityReport {
  bool pass = true;
  std::size_t samples = 0;
  double max_odd_residual = 0.0;        ///< max |F(-w) + F(w)| / max(1, |F(w)|)
  double max_roundtrip_residual = 0.0;  ///< max |G(F(w)) - w|
  bool monotone = true;
  std::string failure;                  ///< first failed check, empty on pass
};

/// Samples F on a symmetric grid in (-0.999 L, 0.999 L) ([-1e3, 1e3] when
/// classical) and checks oddness, strict monotonicity and the G o F round trip.
/// Failures are reported, not thrown.
AdmissibilityReport check_admissible(const FrequencyResponse& model, std::size_t samples);

}  // namespace relkura
