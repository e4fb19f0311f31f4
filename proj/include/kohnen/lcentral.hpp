#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "kohnen/forms.hpp"

// Central values L(1/2, Delta x chi_D) from a smoothed approximate functional
// equation, in the unitary normalization lambda(n) = tau(n) / n^{11/2}:
//
//   L(1/2) = S(A) + eps S(1/A),  S(A) = sum_n lambda(n) chi_D(n) n^{-1/2} V(n / (A |D|)),
//   V(y) = (1 / 2 pi i) int_(c) (2 pi y)^{-u} Gamma(6 + u) / Gamma(6) G(u) du / u,
//
// with conductor D^2 and root number eps = chi_D(-1).
namespace kohnen::lcentral {

/// Kronecker symbol (D | n) for D a fundamental discriminant or 1.
int kronecker_chi(std::int64_t D, std::uint64_t n);

/// eps = chi_D(-1) = sign(D) for the twist of Delta.
int root_number(std::int64_t D);

/// Unitary Fourier coefficients lambda(n) of the lift, entry 0 unused.
class LiftTable {
 public:
  explicit LiftTable(std::vector<double> lambda) : lambda_(std::move(lambda)) {}
  /// lambda(n) = tau(n) / n^{11/2} for n < precision, from eta^24.
  static LiftTable delta(std::size_t precision);

  std::size_t precision() const noexcept { return lambda_.size(); }
  double operator[](std::size_t n) const { return lambda_[n]; }

 private:
  std::vector<double> lambda_;
};

enum class Kernel {
  incomplete_gamma,  // G(u) = 1:  V(y) = Gamma(6, 2 pi y) / Gamma(6)
  gaussian,          // G(u) = exp(u^2 / s^2)
};

const char* to_string(Kernel k);

/// Gamma(6, 2 pi y) / Gamma(6) by adaptive Gauss-Legendre on the defining integral.
double incomplete_gamma_kernel(double y);
/// Same function from the finite sum e^{-x} sum_{j<6} x^j / j!, x = 2 pi y.
double incomplete_gamma_closed_form(double y);

/// The Gaussian-weighted cutoff, integrated along Re(u) = 1.
class GaussianKernel {
 public:
  explicit GaussianKernel(double scale = 3.0);
  double operator()(double y) const;
  double scale() const noexcept { return scale_; }

 private:
  double scale_;
  std::vector<double> t_;
  std::vector<double> weight_;
  std::vector<double> g_re_, g_im_;  // Gamma(7 + it) G(1 + it) / (Gamma(6) (1 + it))
};

struct CentralOptions {
  Kernel kernel = Kernel::incomplete_gamma;
  double balance = 1.0;        // A
  double gaussian_scale = 3.0;
};

struct CentralValue {
  std::int64_t D = 1;
  double value = 0.0;
  std::uint64_t truncation = 0;
  double error_estimate = 0.0;  // tail bound plus quadrature tolerance
  int root_number = 1;
  bool forced_zero = false;     // root number -1
};

/// Minimum truncation accepted for discriminant D (30 |D|).
std::uint64_t required_truncation(std::int64_t D);

/// Sums n <= T. ValidationError when D is not fundamental, T < 30|D| or the
/// balance is not positive; PrecisionError when the table is shorter than T.
CentralValue central_value(const LiftTable& lift, std::int64_t D, std::uint64_t T, const CentralOptions& options = {});

/// Positive fundamental discriminants (including 1) up to Dmax, ascending.
std::vector<std::int64_t> positive_fundamental_discriminants(std::int64_t Dmax);

struct WaldspurgerRow {
  std::int64_t D = 0;
  double a_f = 0.0;
  double a_f_sq = 0.0;
  CentralValue L;
  double L_doubled = 0.0;     // same sum with truncation 2T
  double ratio = 0.0;         // a_f(D)^2 D^{d_exponent} / L, 0 when excluded
  double ratio_doubled = 0.0;
  bool included = false;      // L >= l_floor and c(D) != 0
};

struct WaldspurgerScan {
  double d_exponent = 0.0;
  double l_floor = 0.01;
  std::vector<WaldspurgerRow> rows;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double spread() const { return min_ratio > 0.0 ? max_ratio / min_ratio : 0.0; }
  std::size_t included() const;
};

struct WaldspurgerOptions {
  double d_exponent = 0.0;
  double l_floor = 0.01;
  std::uint64_t truncation_factor = 30;  // T = factor * D
  CentralOptions central;
};

/// Rows for every positive fundamental D <= Dmax; needs the form precision
/// above Dmax and the lift table beyond 2 * factor * Dmax.
WaldspurgerScan waldspurger_ratio_scan(const forms::HalfIntegralForm& form, const LiftTable& lift, std::int64_t Dmax,
                                       const WaldspurgerOptions& options = {});

inline constexpr std::array<double, 3> kSiegelEpsilons{0.05, 0.1, 0.2};

struct SiegelRow {
  std::uint64_t p = 0;
  CentralValue L;
  bool nonzero = false;
  std::array<double, 3> reference{};  // p^{-eps}
  std::array<bool, 3> above{};        // |L| >= p^{-eps}
};

struct SiegelProbe {
  std::vector<SiegelRow> rows;  // ascending p
  double min_nonzero = 0.0;
  std::uint64_t argmin = 0;
  std::array<bool, 3> all_above{};
};

/// Primes p = 1 (mod 4) up to Pmax.
SiegelProbe siegel_probe(const LiftTable& lift, std::uint64_t Pmax, std::uint64_t truncation_factor = 30,
                         const CentralOptions& options = {});

}  // namespace kohnen::lcentral
