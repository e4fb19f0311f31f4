#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Number-theoretic transforms over primes p = c * 2^24 + 1 < 2^62.
namespace kohnen::ntt {

struct Prime {
  std::uint64_t modulus;
  std::uint64_t generator;  // primitive root
};

inline constexpr unsigned kMaxLogSize = 24;

/// Transform-friendly primes in descending order (computed once).
const std::vector<Prime>& primes();

/// Cyclic convolution mod p of a and b, truncated to out_len entries.
/// Inputs hold residues in [0, p).
std::vector<std::uint64_t> convolve(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                    std::size_t out_len, const Prime& prime);

}  // namespace kohnen::ntt
