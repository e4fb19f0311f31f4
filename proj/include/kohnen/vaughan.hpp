#pragma once

#include <cstdint>
#include <vector>

#include "kohnen/lambda.hpp"
#include "kohnen/sieve.hpp"

// Combinatorial splitting of Lambda_r by the parameters Q and R.
namespace kohnen::sieve {

struct VaughanParams {
  double Q = 1.0;
  double R = 1.0;
  double X = 1.0;        // Q * R
  unsigned r = 1;
  double m_block = 1.0;  // X^{1/26}, the block size paired with Q = X^{9/13}, R = X^{4/13}

  /// Q = X^{9/13}, R = X^{4/13}.
  static VaughanParams defaults(double X, unsigned r);
  /// Explicit Q and R (both >= 1); X = Q R.
  static VaughanParams custom(double Q, double R, unsigned r);
};

/// The four sums of the identity
///   Lambda_r(n) = S1 - S2 + S3 + S4,
/// S1 = sum_{d|n, d<=R} mu(d) log^r(n/d),
/// S2 = sum_{lm|n, m<=R, l<=Q} mu(m) Lambda_r(l),
/// S3 = sum_{lm|n, l<=Q} mu(m) Lambda_r(l),
/// S4 = sum_{lm|n, m>R, l>Q} mu(m) Lambda_r(l).
struct VaughanTerms {
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  double reassembled() const { return s1 - s2 + s3 + s4; }
};

struct VaughanTermsExact {
  LogMonomialSum s1, s2, s3, s4;
  LogMonomialSum reassembled() const;
};

VaughanTerms vaughan_terms(const Factorization& n, const VaughanParams& params);
VaughanTermsExact vaughan_terms_exact(const Factorization& n, const VaughanParams& params);

struct VaughanTwoTerm {
  double s1 = 0, s2 = 0;
  double value() const { return s1 - s2; }
};

/// Valid for Q < n <= QR, where S3 and S4 vanish; both are recomputed and
/// checked (AssertionFailure if not exactly zero). ValidationError outside the range.
VaughanTwoTerm vaughan_two_term(const Factorization& n, const VaughanParams& params);

/// Lambda*_R(n) and the dyadic blocks Lambda*_{LM}(n), L < l <= 2L, M < m <= 2M.
///
/// L runs over Q/2, Q/4, ... (2L <= Q) until the block reaches l = 2; M over
/// R/2, R/4, ... with the last M block extended down to m = 1. The grid has
/// at most ceil(log2 Q) x ceil(log2 R) cells.
struct DyadicDecomposition {
  double lambda_star_r = 0.0;
  std::vector<double> l_bounds;  // L values
  std::vector<double> m_bounds;  // M values (last block includes m = 1)
  std::vector<double> grid;      // row-major [L][M]

  double cell(std::size_t li, std::size_t mi) const { return grid[li * m_bounds.size() + mi]; }
  /// Lambda*_R - sum_L sum_M Lambda*_{LM}.
  double reassembled() const;
};

/// Requires Q < n <= QR (ValidationError otherwise).
DyadicDecomposition dyadic_decomposition(const Factorization& n, const VaughanParams& params);

/// Dyadic bounds 2L <= limit covering l in [lowest, limit].
std::vector<double> dyadic_bounds(double limit);

}  // namespace kohnen::sieve
