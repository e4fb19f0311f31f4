#pragma once

#include <cstdint>

// Small number-theoretic helpers on machine integers.
namespace kohnen::arith {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

/// Kronecker symbol (a | n) for n >= 0, extended to n = 0 by (a|0) = [|a| = 1].
int kronecker(std::int64_t a, std::uint64_t n);

bool is_prime(std::uint64_t n);
bool is_squarefree(std::uint64_t n);

/// D = 1, or D = 1 mod 4 squarefree, or D = 4m with m = 2, 3 mod 4 squarefree.
bool is_fundamental_discriminant(std::int64_t d);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

}  // namespace kohnen::arith
