#include "kohnen/forms.hpp"

#include <algorithm>
#include <cmath>

#include "kohnen/arith.hpp"
#include "kohnen/error.hpp"

namespace kohnen::forms {

namespace {

using Rational = mpq_class;

std::int64_t signed_index(int ell, std::uint64_t n) {
  const auto value = static_cast<std::int64_t>(n);
  return (ell % 2 == 0) ? value : -value;
}

// Basis of the right nullspace of a dense rational matrix (rows x cols).
std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> m, std::size_t cols) {
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      const Rational factor = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<Rational> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v) {
  Integer denom_lcm = 1;
  for (const auto& x : v) mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> out(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].get_num() * (denom_lcm / v[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

Integer integer_power(std::uint64_t base, unsigned e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  return out;
}

}  // namespace

std::vector<Monomial> monomial_basis(int ell) {
  if (ell < 2) throw ValidationError("ell must be at least 2");
  const unsigned total = 2 * static_cast<unsigned>(ell) + 1;
  std::vector<Monomial> out;
  for (unsigned b = 0; 4 * b <= total; ++b) out.push_back({total - 4 * b, b});
  return out;
}

bool plus_space_allows(int ell, std::uint64_t n) {
  const std::int64_t r = ((signed_index(ell, n) % 4) + 4) % 4;
  return r == 0 || r == 1;
}

std::size_t constraint_horizon(std::size_t monomial_count) { return 4 * monomial_count + 40; }

HalfIntegralForm::HalfIntegralForm(int ell, std::vector<Integer> coeffs) : ell_(ell), coeffs_(std::move(coeffs)) {
  if (ell_ < 2) throw ValidationError("ell must be at least 2");
  if (coeffs_.empty()) throw ValidationError("form needs positive precision");
  if (sgn(coeffs_[0]) != 0) throw ValidationError("cusp form must have c(0) = 0");
  for (std::size_t n = 1; n < coeffs_.size(); ++n) {
    if (sgn(coeffs_[n]) != 0 && !plus_space_allows(ell_, n)) {
      throw ValidationError("coefficient at n = " + std::to_string(n) + " violates plus-space support");
    }
  }
}

std::string HalfIntegralForm::weight() const { return std::to_string(2 * ell_ + 1) + "/2"; }

double HalfIntegralForm::normalized_coeff(std::uint64_t n) const {
  if (n == 0) throw ValidationError("normalized coefficients start at n = 1");
  if (n >= coeffs_.size()) {
    throw PrecisionError("coefficient index " + std::to_string(n) + " beyond form precision",
                         coeffs_.size() - 1);
  }
  const Integer& c = coeffs_[n];
  if (sgn(c) == 0) return 0.0;
  return c.get_d() / std::pow(static_cast<double>(n), (2.0 * ell_ - 1.0) / 4.0);
}

std::vector<double> HalfIntegralForm::normalized_table() const {
  std::vector<double> out(coeffs_.size(), 0.0);
  for (std::size_t n = 1; n < coeffs_.size(); ++n) out[n] = normalized_coeff(n);
  return out;
}

std::vector<double> HalfIntegralForm::raw_table() const {
  std::vector<double> out(coeffs_.size(), 0.0);
  for (std::size_t n = 0; n < coeffs_.size(); ++n) out[n] = coeffs_[n].get_d();
  return out;
}

HalfIntegralForm build_plus_cusp_form(int ell, std::size_t precision) {
  return build_plus_cusp_form(ell, precision, constraint_horizon(monomial_basis(ell).size()));
}

HalfIntegralForm build_plus_cusp_form(int ell, std::size_t precision, std::size_t horizon) {
  if (ell < 2 || ell % 2 != 0) throw ValidationError("only even ell >= 2 is supported");
  if (precision < 200) throw ValidationError("form precision must be at least 200");
  const auto basis = monomial_basis(ell);
  const std::size_t k = basis.size();

  // Consecutive theta exponents differ by 4: theta^a = theta^{a_min} (theta^4)^j.
  const QSeries theta = qseries::theta_series(precision);
  const QSeries f = qseries::eisenstein_F(precision);
  const QSeries theta4 = qseries::series_pow(theta, 4);
  std::vector<QSeries> theta_powers(k);  // index by f_power
  theta_powers[k - 1] = qseries::series_pow(theta, basis.back().theta_power);
  for (std::size_t b = k - 1; b-- > 0;) theta_powers[b] = qseries::series_mul(theta_powers[b + 1], theta4);
  std::vector<QSeries> f_powers(k);
  f_powers[0] = QSeries::one(precision);
  for (std::size_t b = 1; b < k; ++b) f_powers[b] = qseries::series_mul(f_powers[b - 1], f);

  std::vector<QSeries> monomials;
  for (const auto& m : basis) monomials.push_back(qseries::series_mul(theta_powers[m.f_power], f_powers[m.f_power]));

  std::vector<std::vector<Rational>> rows;
  const std::size_t limit = std::min(precision, horizon);
  for (std::size_t n = 0; n < limit; ++n) {
    if (n != 0 && plus_space_allows(ell, n)) continue;
    std::vector<Rational> row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = monomials[i][n];
    rows.push_back(std::move(row));
  }
  const auto kernel = nullspace(std::move(rows), k);
  if (kernel.size() != 1) {
    throw AssertionFailure("plus-space cusp solution space has dimension " + std::to_string(kernel.size()) +
                           " (expected 1)");
  }
  const auto weights = primitive_integer_vector(kernel.front());

  std::vector<Integer> c(precision);
  for (std::size_t i = 0; i < k; ++i) {
    if (sgn(weights[i]) == 0) continue;
    for (std::size_t n = 0; n < precision; ++n) {
      mpz_addmul(c[n].get_mpz_t(), weights[i].get_mpz_t(), monomials[i][n].get_mpz_t());
    }
  }
  Integer content = 0;
  for (const auto& x : c) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
  if (sgn(content) == 0) throw AssertionFailure("plus-space solution vanished identically");
  const auto first = std::find_if(c.begin(), c.end(), [](const Integer& x) { return sgn(x) != 0; });
  if (sgn(*first) < 0) content = -content;
  for (auto& x : c) {
    if (!mpz_divisible_p(x.get_mpz_t(), content.get_mpz_t())) {
      throw AssertionFailure("non-integral normalized coefficient");
    }
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
  }
  for (std::size_t n = 0; n < precision; ++n) {
    if (sgn(c[n]) != 0 && (n == 0 || !plus_space_allows(ell, n))) {
      throw AssertionFailure("constructed form violates plus-space support at n = " + std::to_string(n));
    }
  }
  return HalfIntegralForm(ell, std::move(c));
}

ShimuraLiftOracle::ShimuraLiftOracle(std::size_t precision) {
  const auto delta = qseries::eta_product(qseries::EtaSpec(1, 24), precision);
  tau_.assign(delta.coeffs().begin(), delta.coeffs().end());
}

const Integer& ShimuraLiftOracle::tau(std::uint64_t n) const {
  if (n >= tau_.size()) {
    throw PrecisionError("tau(" + std::to_string(n) + ") beyond oracle precision", tau_.size() - 1);
  }
  return tau_[n];
}

std::vector<double> ShimuraLiftOracle::unitary_coefficients() const {
  std::vector<double> out(tau_.size(), 0.0);
  for (std::size_t n = 1; n < tau_.size(); ++n) {
    out[n] = tau_[n].get_d() / std::pow(static_cast<double>(n), 5.5);
  }
  return out;
}

QSeries hecke_Tp2(const HalfIntegralForm& form, std::uint64_t p, std::size_t out_len) {
  if (!arith::is_prime(p)) throw ValidationError("Hecke operator T(p^2) needs a prime p");
  const std::uint64_t p2 = p * p;
  const std::size_t max_out = form.precision() / p2;
  if (out_len == 0) out_len = max_out;
  if (out_len > max_out) {
    throw PrecisionError("T(" + std::to_string(p2) + ") needs precision " + std::to_string(out_len * p2), max_out);
  }
  const int ell = form.ell();
  const Integer middle = integer_power(p, static_cast<unsigned>(ell - 1));
  const Integer last = integer_power(p, static_cast<unsigned>(2 * ell - 1));
  std::vector<Integer> b(out_len);
  for (std::size_t n = 0; n < out_len; ++n) {
    // at p = 2 the operator includes the projection onto the plus space
    if (!plus_space_allows(ell, n)) continue;
    b[n] = form.c(p2 * n);
    const int symbol = arith::kronecker(signed_index(ell, n), p);
    if (symbol != 0 && sgn(form.c(n)) != 0) {
      if (symbol > 0) {
        mpz_addmul(b[n].get_mpz_t(), middle.get_mpz_t(), form.c(n).get_mpz_t());
      } else {
        mpz_submul(b[n].get_mpz_t(), middle.get_mpz_t(), form.c(n).get_mpz_t());
      }
    }
    if (n % p2 == 0) mpz_addmul(b[n].get_mpz_t(), last.get_mpz_t(), form.c(n / p2).get_mpz_t());
  }
  return QSeries(std::move(b));
}

EigenReport eigenvalue_check(const HalfIntegralForm& form, std::uint64_t p, const ShimuraLiftOracle& oracle) {
  EigenReport report;
  report.prime = p;
  report.eigenvalue = oracle.tau(p);
  const auto image = hecke_Tp2(form, p);
  report.checked = image.precision();
  for (std::size_t n = 0; n < image.precision(); ++n) {
    if (image[n] != report.eigenvalue * form.c(n)) {
      report.first_mismatch = n;
      break;
    }
  }
  report.ok = !report.first_mismatch.has_value() && report.checked > 0;
  return report;
}

}  // namespace kohnen::forms
