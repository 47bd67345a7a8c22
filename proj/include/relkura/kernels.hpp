#pragma once

#include <cstddef>
#include <span>

namespace relkura::kernels {

// All-to-all coupling kernels. Row i is summed over j in ascending order in
// both variants, so the OpenMP version is bitwise identical to the serial one.

/// out_i = nu_i + (kappa/N) sum_j sin(theta_j - theta_i)
void coupling_drive_serial(std::span<const double> theta, std::span<const double> nu, double kappa,
                           std::span<double> out);
void coupling_drive_parallel(std::span<const double> theta, std::span<const double> nu, double kappa,
                             std::span<double> out);

/// out_i = (kappa/N) sum_j cos(theta_j - theta_i) (velocity_j - velocity_i)
void momentum_coupling_serial(std::span<const double> theta, std::span<const double> velocity,
                              double kappa, std::span<double> out);
void momentum_coupling_parallel(std::span<const double> theta, std::span<const double> velocity,
                                double kappa, std::span<double> out);

/// Below this ensemble size thread start-up costs more than the O(N^2) sum.
inline constexpr std::size_t kParallelThreshold = 256;

void coupling_drive(std::span<const double> theta, std::span<const double> nu, double kappa,
                    std::span<double> out);
void momentum_coupling(std::span<const double> theta, std::span<const double> velocity, double kappa,
                       std::span<double> out);

/// Applies the RELKURA_THREADS cap (0 or unset = OpenMP default). Returns the
/// thread count in effect.
int configure_threads_from_env();

}  // namespace relkura::kernels
