#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kohnen/qseries.hpp"

namespace kohnen::forms {

using qseries::Integer;
using qseries::QSeries;

/// theta^theta_power * F^f_power, a weight (theta_power/2 + 2 f_power) form on Gamma0(4).
struct Monomial {
  unsigned theta_power;
  unsigned f_power;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// All (a, b) with a + 4b = 2 ell + 1, by decreasing a. Throws for ell < 2.
std::vector<Monomial> monomial_basis(int ell);

/// A Kohnen plus-space cusp form of weight ell + 1/2 on Gamma0(4), stored by
/// its exact coefficients c(0..N-1).
///
/// Invariants checked on construction: c(0) = 0 and c(n) = 0 whenever
/// (-1)^ell n = 2, 3 (mod 4). The paper-style normalized coefficients are
/// a_f(n) = c(n) / n^{(2 ell - 1)/4}.
class HalfIntegralForm {
 public:
  /// Throws ValidationError when an invariant fails.
  HalfIntegralForm(int ell, std::vector<Integer> coeffs);

  int ell() const noexcept { return ell_; }
  /// "13/2" for ell = 6.
  std::string weight() const;
  static constexpr unsigned level() noexcept { return 4; }
  std::size_t precision() const noexcept { return coeffs_.size(); }
  const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }
  const Integer& c(std::size_t n) const { return coeffs_.at(n); }
  QSeries series() const { return QSeries(coeffs_); }

  /// a_f(n) in double precision; exactly 0.0 when c(n) = 0.
  /// Throws PrecisionError for n >= precision and ValidationError for n = 0.
  double normalized_coeff(std::uint64_t n) const;

  /// a_f(n) for every n < precision (entry 0 is 0.0).
  std::vector<double> normalized_table() const;

  /// c(n) as doubles, the unnormalized f-hat_n = n^{(k-1)/2} a_f(n).
  std::vector<double> raw_table() const;

  friend bool operator==(const HalfIntegralForm&, const HalfIntegralForm&) = default;

 private:
  int ell_;
  std::vector<Integer> coeffs_;
};

/// True when n may carry a nonzero coefficient in the plus space of weight ell + 1/2.
bool plus_space_allows(int ell, std::uint64_t n);

/// Constraint horizon used by build_plus_cusp_form for a basis of the given size.
std::size_t constraint_horizon(std::size_t monomial_count);

/// Builds the normalized plus-space cusp form of weight ell + 1/2.
///
/// Solves for the combination of monomial_basis(ell) whose coefficients vanish
/// at n = 0 and at every non-plus index below the constraint horizon. Requires
/// a one-dimensional solution space (AssertionFailure otherwise), divides out
/// the content and makes the first nonzero coefficient positive.
HalfIntegralForm build_plus_cusp_form(int ell, std::size_t precision);

/// Same construction with an explicit constraint horizon (for stability checks).
HalfIntegralForm build_plus_cusp_form(int ell, std::size_t precision, std::size_t horizon);

/// Coefficients tau(n) of Delta = eta^24, the Shimura lift of the ell = 6 form.
class ShimuraLiftOracle {
 public:
  explicit ShimuraLiftOracle(std::size_t precision);

  std::size_t precision() const noexcept { return tau_.size(); }
  const Integer& tau(std::uint64_t n) const;
  const std::vector<Integer>& table() const noexcept { return tau_; }

  /// lambda(n) = tau(n) / n^{11/2}, the unitary normalization; entry 0 is 0.
  std::vector<double> unitary_coefficients() const;

 private:
  std::vector<Integer> tau_;
};

/// Half-integral weight T(p^2):
///   b(n) = c(p^2 n) + ((-1)^ell n | p) p^{ell-1} c(n) + p^{2 ell - 1} c(n/p^2),
/// with the Kronecker symbol at p = 2, on plus-space indices n (other b(n) are
/// 0, which is the plus-space projection at p = 2). Returns b(n) for n < out_len; out_len = 0
/// requests the maximum floor(N / p^2). Throws PrecisionError when
/// p^2 * out_len exceeds the form precision.
QSeries hecke_Tp2(const HalfIntegralForm& form, std::uint64_t p, std::size_t out_len = 0);

struct EigenReport {
  bool ok = false;
  std::uint64_t prime = 0;
  Integer eigenvalue;          // tau(p) from the oracle
  std::size_t checked = 0;     // number of coefficients compared
  std::optional<std::size_t> first_mismatch;
};

/// Checks hecke_Tp2(form, p) == tau(p) * c on the computable range.
EigenReport eigenvalue_check(const HalfIntegralForm& form, std::uint64_t p, const ShimuraLiftOracle& oracle);

}  // namespace kohnen::forms
