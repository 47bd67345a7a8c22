#include "relkura/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "relkura/error.hpp"

namespace relkura::kernels {

namespace {

void check_sizes(std::size_t n, std::size_t other, std::size_t out) {
  if (other != n || out != n) throw DomainError("kernel arguments must all have length N");
}

inline double sine_row(std::span<const double> theta, std::size_t i) {
  const double ti = theta[i];
  double sum = 0.0;
  for (std::size_t j = 0; j < theta.size(); ++j) sum += std::sin(theta[j] - ti);
  return sum;
}

inline double cosine_row(std::span<const double> theta, std::span<const double> velocity, std::size_t i) {
  const double ti = theta[i];
  const double vi = velocity[i];
  double sum = 0.0;
  for (std::size_t j = 0; j < theta.size(); ++j) sum += std::cos(theta[j] - ti) * (velocity[j] - vi);
  return sum;
}

}  // namespace

void coupling_drive_serial(std::span<const double> theta, std::span<const double> nu, double kappa,
                           std::span<double> out) {
  const std::size_t n = theta.size();
  check_sizes(n, nu.size(), out.size());
  const double scale = kappa / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = nu[i] + scale * sine_row(theta, i);
}

void coupling_drive_parallel(std::span<const double> theta, std::span<const double> nu, double kappa,
                             std::span<double> out) {
  const std::size_t n = theta.size();
  check_sizes(n, nu.size(), out.size());
  const double scale = kappa / static_cast<double>(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto row = static_cast<std::size_t>(i);
    out[row] = nu[row] + scale * sine_row(theta, row);
  }
}

void momentum_coupling_serial(std::span<const double> theta, std::span<const double> velocity,
                              double kappa, std::span<double> out) {
  const std::size_t n = theta.size();
  check_sizes(n, velocity.size(), out.size());
  const double scale = kappa / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = scale * cosine_row(theta, velocity, i);
}

void momentum_coupling_parallel(std::span<const double> theta, std::span<const double> velocity,
                                double kappa, std::span<double> out) {
  const std::size_t n = theta.size();
  check_sizes(n, velocity.size(), out.size());
  const double scale = kappa / static_cast<double>(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto row = static_cast<std::size_t>(i);
    out[row] = scale * cosine_row(theta, velocity, row);
  }
}

void coupling_drive(std::span<const double> theta, std::span<const double> nu, double kappa,
                    std::span<double> out) {
  if (theta.size() >= kParallelThreshold)
    coupling_drive_parallel(theta, nu, kappa, out);
  else
    coupling_drive_serial(theta, nu, kappa, out);
}

void momentum_coupling(std::span<const double> theta, std::span<const double> velocity, double kappa,
                       std::span<double> out) {
  if (theta.size() >= kParallelThreshold)
    momentum_coupling_parallel(theta, velocity, kappa, out);
  else
    momentum_coupling_serial(theta, velocity, kappa, out);
}

int configure_threads_from_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("RELKURA_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 0) throw ConfigError("RELKURA_THREADS", "expected a nonnegative integer");
    if (cap > 0) omp_set_num_threads(static_cast<int>(cap));
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace relkura::kernels
