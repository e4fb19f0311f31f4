#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace kohnen::cli {

/// Parses "100000", "1e5", "10^5", "3*10^4" and "3e4". ValidationError on anything else.
double parse_number(std::string_view text);

/// parse_number restricted to non-negative integers below 2^63.
std::uint64_t parse_count(std::string_view text);

/// Comma-separated list of parse_number values.
std::vector<double> parse_list(std::string_view text);

/// Seeded generator whose outputs do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace kohnen::cli
