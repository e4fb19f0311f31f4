#include "kohnen/qseries.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "kohnen/arith.hpp"
#include "kohnen/error.hpp"
#include "kohnen/ntt.hpp"
#include "kohnen/parallel.hpp"

namespace kohnen::qseries {

namespace {

constexpr std::size_t kSchoolbookCutoff = 64;
constexpr unsigned kPrimeBits = 61;  // every transform prime exceeds 2^61

std::size_t effective_length(const QSeries& a, std::size_t cap) {
  std::size_t len = std::min(a.precision(), cap);
  while (len > 0 && sgn(a[len - 1]) == 0) --len;
  return len;
}

struct NonzeroTerm {
  std::size_t index;
  const Integer* value;
};

std::vector<NonzeroTerm> nonzero_terms(const QSeries& a, std::size_t cap) {
  std::vector<NonzeroTerm> out;
  const std::size_t len = std::min(a.precision(), cap);
  for (std::size_t i = 0; i < len; ++i) {
    if (sgn(a[i]) != 0) out.push_back({i, &a[i]});
  }
  return out;
}

std::vector<std::uint64_t> residues(const QSeries& a, std::size_t len, std::uint64_t p) {
  std::vector<std::uint64_t> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
  }
  return out;
}

}  // namespace

QSeries QSeries::one(std::size_t precision) {
  std::vector<Integer> c(precision);
  if (precision > 0) c[0] = 1;
  return QSeries(std::move(c));
}

std::size_t QSeries::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const Integer& x) { return sgn(x) != 0; }));
}

std::size_t QSeries::max_bits() const {
  std::size_t bits = 0;
  for (const auto& x : coeffs_) {
    if (sgn(x) != 0) bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
  }
  return bits;
}

QSeries QSeries::truncated(std::size_t precision) const {
  const std::size_t n = std::min(precision, coeffs_.size());
  return QSeries(std::vector<Integer>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n)));
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.precision(), b.precision());
  std::vector<Integer> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = a[i] + b[i];
  return QSeries(std::move(c));
}

QSeries operator-(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.precision(), b.precision());
  std::vector<Integer> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = a[i] - b[i];
  return QSeries(std::move(c));
}

QSeries scaled(const QSeries& a, const Integer& k) {
  std::vector<Integer> c(a.precision());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] * k;
  return QSeries(std::move(c));
}

QSeries series_mul_schoolbook(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.precision(), b.precision());
  std::vector<Integer> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (sgn(b[j]) != 0) mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return QSeries(std::move(c));
}

QSeries series_mul_sparse(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.precision(), b.precision());
  const bool a_sparser = a.nonzero_count() <= b.nonzero_count();
  const QSeries& sparse = a_sparser ? a : b;
  const QSeries& dense = a_sparser ? b : a;
  std::vector<Integer> c(n);
  for (const auto& term : nonzero_terms(sparse, n)) {
    const std::size_t i = term.index;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (sgn(dense[j]) != 0) mpz_addmul(c[i + j].get_mpz_t(), term.value->get_mpz_t(), dense[j].get_mpz_t());
    }
  }
  return QSeries(std::move(c));
}

QSeries series_mul_transform(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.precision(), b.precision());
  const std::size_t la = effective_length(a, n);
  const std::size_t lb = effective_length(b, n);
  if (la == 0 || lb == 0) return QSeries::zero(n);

  // |c_k| <= min(la, lb) * max|a| * max|b|; the sign needs one more bit.
  const std::size_t bound_bits =
      a.max_bits() + b.max_bits() + static_cast<std::size_t>(std::bit_width(std::min(la, lb))) + 2;
  const std::size_t prime_count = (bound_bits + kPrimeBits - 1) / kPrimeBits;
  const auto& table = ntt::primes();
  if (prime_count > table.size()) {
    throw CapacityError("coefficients too large for the transform prime set");
  }
  const std::size_t out_len = std::min(n, la + lb - 1);
  const bool squaring = &a == &b;

  std::vector<std::vector<std::uint64_t>> images(prime_count);
  parallel_for(prime_count, [&](std::size_t k) {
    const auto& prime = table[k];
    const auto ra = residues(a, la, prime.modulus);
    if (squaring) {
      images[k] = ntt::convolve(ra, ra, out_len, prime);
    } else {
      const auto rb = residues(b, lb, prime.modulus);
      images[k] = ntt::convolve(ra, rb, out_len, prime);
    }
  });

  // Garner mixed-radix reconstruction, then lift to the symmetric range.
  std::vector<std::vector<std::uint64_t>> inverse(prime_count, std::vector<std::uint64_t>(prime_count, 0));
  for (std::size_t i = 0; i < prime_count; ++i) {
    for (std::size_t j = i + 1; j < prime_count; ++j) {
      const std::uint64_t pj = table[j].modulus;
      inverse[i][j] = arith::pow_mod(table[i].modulus % pj, pj - 2, pj);
    }
  }
  Integer modulus = 1;
  for (std::size_t k = 0; k < prime_count; ++k) modulus *= static_cast<unsigned long>(table[k].modulus);
  const Integer half = modulus / 2;

  std::vector<Integer> c(n);
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (out_len + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t blk) {
    std::vector<std::uint64_t> digits(prime_count);
    const std::size_t hi = std::min(out_len, (blk + 1) * kBlock);
    for (std::size_t idx = blk * kBlock; idx < hi; ++idx) {
      for (std::size_t j = 0; j < prime_count; ++j) {
        const std::uint64_t pj = table[j].modulus;
        std::uint64_t t = images[j][idx];
        for (std::size_t i = 0; i < j; ++i) {
          const std::uint64_t vi = digits[i] % pj;
          t = t >= vi ? t - vi : t + pj - vi;
          t = arith::mul_mod(t, inverse[i][j], pj);
        }
        digits[j] = t;
      }
      Integer& x = c[idx];
      x = static_cast<unsigned long>(digits[prime_count - 1]);
      for (std::size_t j = prime_count - 1; j-- > 0;) {
        x *= static_cast<unsigned long>(table[j].modulus);
        x += static_cast<unsigned long>(digits[j]);
      }
      if (x > half) x -= modulus;
    }
  });
  return QSeries(std::move(c));
}

QSeries series_mul(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.precision(), b.precision());
  if (n <= kSchoolbookCutoff) return series_mul_schoolbook(a, b);
  const std::size_t sparse_limit = 4 * static_cast<std::size_t>(std::sqrt(static_cast<double>(n))) + 4;
  if (std::min(a.nonzero_count(), b.nonzero_count()) <= sparse_limit) return series_mul_sparse(a, b);
  return series_mul_transform(a, b);
}

QSeries series_pow(const QSeries& a, unsigned e) {
  QSeries result = QSeries::one(a.precision());
  if (e == 0) return result;
  QSeries base = a;
  bool first = true;
  for (;;) {
    if (e & 1) {
      result = first ? base : series_mul(result, base);
      first = false;
    }
    e >>= 1;
    if (e == 0) break;
    base = series_mul(base, base);
  }
  return result;
}

QSeries theta_series(std::size_t precision) {
  std::vector<Integer> c(precision);
  if (precision > 0) c[0] = 1;
  for (std::size_t k = 1; k * k < precision; ++k) c[k * k] = 2;
  return QSeries(std::move(c));
}

QSeries eisenstein_F(std::size_t precision) {
  std::vector<std::uint64_t> sigma(precision, 0);
  for (std::size_t d = 1; d < precision; d += 2) {
    for (std::size_t m = d; m < precision; m += 2 * d) sigma[m] += d;  // odd multiples of d
  }
  std::vector<Integer> c(precision);
  for (std::size_t n = 1; n < precision; n += 2) c[n] = static_cast<unsigned long>(sigma[n]);
  return QSeries(std::move(c));
}

EtaSpec::EtaSpec(unsigned scale, unsigned exponent) : scale_(scale), exponent_(exponent) {
  if (scale == 0 || exponent == 0) throw ValidationError("eta product needs positive scale and exponent");
  if ((static_cast<std::uint64_t>(scale) * exponent) % 24 != 0) {
    throw ValidationError("eta product scale*exponent must be divisible by 24");
  }
}

QSeries euler_product(std::size_t precision, unsigned scale) {
  // prod (1 - x^n) = sum_k (-1)^k x^{k(3k-1)/2}, k over all integers
  std::vector<Integer> c(precision);
  if (precision == 0) return QSeries(std::move(c));
  c[0] = 1;
  for (std::uint64_t k = 1;; ++k) {
    const std::uint64_t e1 = scale * (k * (3 * k - 1) / 2);
    const std::uint64_t e2 = scale * (k * (3 * k + 1) / 2);
    if (e1 >= precision) break;
    const long sign = (k & 1) ? -1 : 1;
    c[e1] = sign;
    if (e2 < precision) c[e2] = sign;
  }
  return QSeries(std::move(c));
}

QSeries eta_product(const EtaSpec& spec, std::size_t precision) {
  const std::size_t shift = spec.prefactor();
  std::vector<Integer> out(precision);
  if (shift >= precision) return QSeries(std::move(out));
  const std::size_t len = precision - shift;

  // B = A^m with A_0 = 1 satisfies n B_n = sum_{k=1}^{n} ((m+1)k - n) A_k B_{n-k}.
  const QSeries base = euler_product(len, spec.scale());
  const auto terms = nonzero_terms(base, len);
  const long m = static_cast<long>(spec.exponent());
  std::vector<Integer> power(len);
  power[0] = 1;
  Integer acc, weight;
  for (std::size_t n = 1; n < len; ++n) {
    acc = 0;
    for (const auto& term : terms) {
      const std::size_t k = term.index;
      if (k == 0) continue;
      if (k > n) break;
      weight = (m + 1) * static_cast<long>(k) - static_cast<long>(n);
      weight *= *term.value;
      mpz_addmul(acc.get_mpz_t(), weight.get_mpz_t(), power[n - k].get_mpz_t());
    }
    mpz_divexact_ui(power[n].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
  }
  for (std::size_t n = 0; n < len; ++n) out[n + shift] = std::move(power[n]);
  return QSeries(std::move(out));
}

}  // namespace kohnen::qseries
