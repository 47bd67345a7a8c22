#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "relkura/kernels.hpp"
#include "relkura/rng.hpp"

using namespace relkura;

namespace {

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("parallel coupling kernels are bitwise identical to the serial reference") {
  for (std::size_t n : {1u, 2u, 10u, 255u, 256u, 700u}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto theta = rng::uniform_vector(seed, 11, n, -10.0, 10.0);
      const auto nu = rng::uniform_vector(seed, 12, n, -1.0, 1.0);
      std::vector<double> serial(n), parallel(n), dispatched(n);
      kernels::coupling_drive_serial(theta, nu, 1.3, serial);
      kernels::coupling_drive_parallel(theta, nu, 1.3, parallel);
      kernels::coupling_drive(theta, nu, 1.3, dispatched);
      CHECK(bitwise_equal(serial, parallel));
      CHECK(bitwise_equal(serial, dispatched));

      kernels::momentum_coupling_serial(theta, nu, 0.7, serial);
      kernels::momentum_coupling_parallel(theta, nu, 0.7, parallel);
      kernels::momentum_coupling(theta, nu, 0.7, dispatched);
      CHECK(bitwise_equal(serial, parallel));
      CHECK(bitwise_equal(serial, dispatched));
    }
  }
}

TEST_CASE("coupling drive hand values") {
  const double half_pi = std::acos(0.0);
  std::vector<double> theta{0.0, half_pi}, nu{0.0, 0.0}, out(2);
  kernels::coupling_drive_serial(theta, nu, 1.0, out);
  CHECK(out[0] == doctest::Approx(0.5));
  CHECK(out[1] == doctest::Approx(-0.5));

  std::vector<double> one_theta{3.0}, one_nu{0.25}, one_out(1);
  kernels::coupling_drive_serial(one_theta, one_nu, 5.0, one_out);
  CHECK(one_out[0] == 0.25);
}

TEST_CASE("coupling drive antisymmetry sums to the natural frequencies") {
  const auto theta = rng::uniform_vector(5, 1, 40, -3.0, 3.0);
  const auto nu = rng::uniform_vector(5, 2, 40, -0.3, 0.3);
  std::vector<double> out(40);
  kernels::coupling_drive(theta, nu, 2.0, out);
  double drive = 0.0, natural = 0.0;
  for (std::size_t i = 0; i < 40; ++i) {
    drive += out[i];
    natural += nu[i];
  }
  CHECK(drive == doctest::Approx(natural).epsilon(1e-12));
}

TEST_CASE("mismatched kernel arguments are rejected") {
  std::vector<double> theta(3), nu(2), out(3);
  CHECK_THROWS(kernels::coupling_drive_serial(theta, nu, 1.0, out));
  CHECK_THROWS(kernels::momentum_coupling_parallel(theta, nu, 1.0, out));
}

TEST_CASE("thread cap from the environment") {
  CHECK(kernels::configure_threads_from_env() >= 1);
}
