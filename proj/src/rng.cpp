#include "relkura/rng.hpp"

namespace relkura::rng {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64_finalize(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t draw_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
  const std::uint64_t key = splitmix64_finalize(seed ^ splitmix64_finalize(stream + kGolden));
  return splitmix64_finalize(key + (index + 1) * kGolden);
}

double draw_unit(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
  return static_cast<double>(draw_bits(seed, stream, index) >> 11) * 0x1.0p-53;
}

std::vector<double> uniform_vector(std::uint64_t seed, std::uint64_t stream, std::size_t n, double lo, double hi) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = lo + (hi - lo) * draw_unit(seed, stream, k);
  return out;
}

}  // namespace relkura::rng
