#include "kohnen/arith.hpp"

#include <cstdlib>
#include <initializer_list>

namespace kohnen::arith {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

int kronecker(std::int64_t a, std::uint64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  // Strip the factor 2 from n using (a|2).
  int result = 1;
  if ((n & 1) == 0) {
    if ((a & 1) == 0) return 0;
    unsigned twos = 0;
    while ((n & 1) == 0) {
      n >>= 1;
      ++twos;
    }
    const std::int64_t r8 = ((a % 8) + 8) % 8;
    if ((twos & 1) && (r8 == 3 || r8 == 5)) result = -result;
  }
  // Now n is odd: Jacobi symbol with a possibly negative numerator.
  std::uint64_t b = n;
  std::uint64_t x;
  if (a < 0) {
    // (a|b) = (-1|b) (|a| | b), (-1|b) = (-1)^((b-1)/2)
    if ((b & 3) == 3) result = -result;
    x = static_cast<std::uint64_t>(-(a + 1)) + 1;
  } else {
    x = static_cast<std::uint64_t>(a);
  }
  x %= b;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      const std::uint64_t r = b & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::uint64_t t = x;
    x = b;
    b = t;
    if ((x & 3) == 3 && (b & 3) == 3) result = -result;
    x %= b;
  }
  return b == 1 ? result : 0;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_squarefree(std::uint64_t n) {
  if (n == 0) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return true;
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 1) return true;
  if (d == 0) return false;
  const std::uint64_t magnitude = static_cast<std::uint64_t>(d < 0 ? -d : d);
  const std::int64_t r4 = ((d % 4) + 4) % 4;
  if (r4 == 1) return is_squarefree(magnitude);
  if (r4 == 0) {
    const std::int64_t m = d / 4;
    const std::int64_t m4 = ((m % 4) + 4) % 4;
    return (m4 == 2 || m4 == 3) && is_squarefree(magnitude / 4);
  }
  return false;
}

}  // namespace kohnen::arith
