#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <vector>

namespace kohnen::qseries {

using Integer = mpz_class;

/// Truncated power series sum_{n < N} a_n q^n with exact integer coefficients.
///
/// Immutable once built. Binary operations return a series whose precision
/// is the minimum of the operand precisions.
class QSeries {
 public:
  QSeries() = default;
  explicit QSeries(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {}

  static QSeries zero(std::size_t precision) { return QSeries(std::vector<Integer>(precision)); }
  static QSeries one(std::size_t precision);

  std::size_t precision() const noexcept { return coeffs_.size(); }
  const Integer& operator[](std::size_t n) const { return coeffs_[n]; }
  std::span<const Integer> coeffs() const noexcept { return coeffs_; }

  std::size_t nonzero_count() const;
  /// Number of bits of the largest coefficient in absolute value.
  std::size_t max_bits() const;
  QSeries truncated(std::size_t precision) const;

  friend bool operator==(const QSeries& a, const QSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Integer> coeffs_;
};

QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries scaled(const QSeries& a, const Integer& k);

/// Truncated product. Dispatches to the schoolbook, sparse or multi-modular
/// transform kernel; all three are exact and give identical results.
QSeries series_mul(const QSeries& a, const QSeries& b);

/// O(N^2) reference product.
QSeries series_mul_schoolbook(const QSeries& a, const QSeries& b);

/// Product exploiting the sparsity of whichever operand has fewer nonzeros.
QSeries series_mul_sparse(const QSeries& a, const QSeries& b);

/// Product through number-theoretic transforms over word-size primes with
/// CRT reconstruction of the exact result.
QSeries series_mul_transform(const QSeries& a, const QSeries& b);

/// a^e by binary powering; a^0 is the unit series at a's precision.
QSeries series_pow(const QSeries& a, unsigned e);

/// theta(z) = sum_{n in Z} q^{n^2}.
QSeries theta_series(std::size_t precision);

/// F(z) = sum_{n odd} sigma_1(n) q^n, weight 2 on Gamma0(4).
QSeries eisenstein_F(std::size_t precision);

/// eta(delta z)^m with delta*m divisible by 24, so the leading power
/// q^{delta m / 24} is integral.
class EtaSpec {
 public:
  /// Throws ValidationError unless scale, exponent > 0 and 24 | scale*exponent.
  EtaSpec(unsigned scale, unsigned exponent);

  unsigned scale() const noexcept { return scale_; }
  unsigned exponent() const noexcept { return exponent_; }
  unsigned prefactor() const noexcept { return scale_ * exponent_ / 24; }

 private:
  unsigned scale_;
  unsigned exponent_;
};

/// q^{delta m/24} prod_{n>=1} (1 - q^{delta n})^m to the given precision.
QSeries eta_product(const EtaSpec& spec, std::size_t precision);

/// prod_{n>=1} (1 - q^{scale n}) via the pentagonal number theorem.
QSeries euler_product(std::size_t precision, unsigned scale = 1);

}  // namespace kohnen::qseries
