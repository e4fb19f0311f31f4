#include "kohnen/ntt.hpp"

#include <algorithm>
#include <stdexcept>

#include "kohnen/arith.hpp"
#include "kohnen/error.hpp"

namespace kohnen::ntt {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Montgomery arithmetic with R = 2^64; valid for odd p < 2^62.
class Montgomery {
 public:
  explicit Montgomery(u64 p) : p_(p) {
    u64 inv = p;  // Newton iteration for p^{-1} mod 2^64
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    neg_inv_ = ~inv + 1;
    const u64 r_mod = static_cast<u64>((static_cast<u128>(1) << 64) % p);
    r2_ = static_cast<u64>(static_cast<u128>(r_mod) * r_mod % p);
  }

  u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * neg_inv_;
    u64 u = static_cast<u64>((t + static_cast<u128>(m) * p_) >> 64);
    return u >= p_ ? u - p_ : u;
  }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 to(u64 a) const { return mul(a, r2_); }
  u64 from(u64 a) const { return reduce(a); }
  u64 add(u64 a, u64 b) const {
    const u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 pow(u64 base_mont, u64 e) const {
    u64 result = to(1);
    while (e > 0) {
      if (e & 1) result = mul(result, base_mont);
      base_mont = mul(base_mont, base_mont);
      e >>= 1;
    }
    return result;
  }

 private:
  u64 p_;
  u64 neg_inv_;
  u64 r2_;
};

u64 primitive_root(u64 p) {
  // p - 1 = c * 2^k; collect the distinct prime factors of p - 1.
  std::vector<u64> factors{2};
  u64 c = (p - 1) >> kMaxLogSize;
  while ((c & 1) == 0) c >>= 1;
  for (u64 q = 3; q * q <= c; q += 2) {
    if (c % q == 0) {
      factors.push_back(q);
      while (c % q == 0) c /= q;
    }
  }
  if (c > 1) factors.push_back(c);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (u64 q : factors) {
      if (arith::pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

void transform(std::vector<u64>& a, bool inverse, const Montgomery& mont, u64 root_mont) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  // twiddles[k] = w_n^k (or its inverse) for k < n/2
  std::vector<u64> twiddles(std::max<std::size_t>(n / 2, 1));
  const u64 w = inverse ? mont.pow(root_mont, n - 1) : root_mont;
  twiddles[0] = mont.to(1);
  for (std::size_t k = 1; k < n / 2; ++k) twiddles[k] = mont.mul(twiddles[k - 1], w);

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const u64 u = a[i + j];
        const u64 v = mont.mul(a[i + j + half], twiddles[j * step]);
        a[i + j] = mont.add(u, v);
        a[i + j + half] = mont.sub(u, v);
      }
    }
  }
}

}  // namespace

const std::vector<Prime>& primes() {
  static const std::vector<Prime> table = [] {
    std::vector<Prime> out;
    const u64 limit = (u64{1} << 62);
    for (u64 c = (limit - 1) >> kMaxLogSize; out.size() < 48 && c > 0; --c) {
      const u64 p = (c << kMaxLogSize) | 1;
      if (p >= limit) continue;
      if (arith::is_prime(p)) out.push_back({p, primitive_root(p)});
    }
    return out;
  }();
  return table;
}

std::vector<std::uint64_t> convolve(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                    std::size_t out_len, const Prime& prime) {
  std::vector<u64> result(out_len, 0);
  if (a.empty() || b.empty() || out_len == 0) return result;
  const std::size_t full = a.size() + b.size() - 1;
  std::size_t n = 1;
  unsigned log_n = 0;
  while (n < full) {
    n <<= 1;
    ++log_n;
  }
  if (log_n > kMaxLogSize) {
    throw CapacityError("transform length exceeds 2^24");
  }
  const u64 p = prime.modulus;
  const Montgomery mont(p);
  const u64 root = mont.pow(mont.to(prime.generator), (p - 1) >> log_n);

  const bool squaring = a.data() == b.data() && a.size() == b.size();
  std::vector<u64> fa(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = mont.to(a[i]);
  transform(fa, false, mont, root);
  if (squaring) {
    for (auto& x : fa) x = mont.mul(x, x);
  } else {
    std::vector<u64> fb(n, 0);
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = mont.to(b[i]);
    transform(fb, false, mont, root);
    for (std::size_t i = 0; i < n; ++i) fa[i] = mont.mul(fa[i], fb[i]);
  }
  transform(fa, true, mont, root);
  const u64 n_inv = mont.to(arith::pow_mod(n % p, p - 2, p));
  const std::size_t count = std::min(out_len, full);
  for (std::size_t i = 0; i < count; ++i) result[i] = mont.from(mont.mul(fa[i], n_inv));
  return result;
}

}  // namespace kohnen::ntt
