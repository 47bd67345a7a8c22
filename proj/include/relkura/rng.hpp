#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace relkura::rng {

// Counter-based generator: the k-th draw of stream s under seed is
//   splitmix64_finalize(key(seed, s) + (k + 1) * 0x9E3779B97F4A7C15)
// so any draw can be reproduced without replaying the sequence, and results
// depend only on 64-bit integer arithmetic.
inline constexpr std::string_view kAlgorithm = "splitmix64-counter/v1";

std::uint64_t splitmix64_finalize(std::uint64_t x) noexcept;
std::uint64_t draw_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept;

/// Uniform on [0, 1) from the top 53 bits.
double draw_unit(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept;

/// n draws lo + (hi - lo) u; a degenerate interval yields exactly lo.
std::vector<double> uniform_vector(std::uint64_t seed, std::uint64_t stream, std::size_t n, double lo, double hi);

}  // namespace relkura::rng
