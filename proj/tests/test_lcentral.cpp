#include <doctest.h>

#include <cmath>

#include "kohnen/arith.hpp"
#include "kohnen/error.hpp"
#include "kohnen/forms.hpp"
#include "kohnen/lcentral.hpp"
#include "kohnen/quadrature.hpp"

using namespace kohnen;
using namespace kohnen::lcentral;

namespace {

const LiftTable& lift() {
  static const LiftTable t = LiftTable::delta(20001);
  return t;
}

std::vector<std::int64_t> fundamental_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  for (std::int64_t D = -bound; D <= bound; ++D) {
    if (D == 1 || arith::is_fundamental_discriminant(D)) out.push_back(D);
  }
  return out;
}

}  // namespace

TEST_CASE("Kronecker characters") {
  CHECK(kronecker_chi(5, 1) == 1);
  CHECK(kronecker_chi(5, 2) == -1);
  CHECK(kronecker_chi(8, 3) == -1);
  CHECK(kronecker_chi(-4, 3) == -1);
  CHECK(kronecker_chi(-3, 2) == -1);
  CHECK(kronecker_chi(12, 6) == 0);
  CHECK(kronecker_chi(1, 12345) == 1);
  CHECK_THROWS_AS(kronecker_chi(9, 2), ValidationError);
  CHECK_THROWS_AS(kronecker_chi(2, 3), ValidationError);
  for (std::int64_t D : fundamental_up_to(100)) {
    const auto q = static_cast<std::uint64_t>(std::llabs(D));
    for (std::uint64_t m = 1; m <= 1000; ++m) {
      const int cm = kronecker_chi(D, m);
      REQUIRE(cm == kronecker_chi(D, m + q));
      for (std::uint64_t n = 1; n * m <= 1000; ++n) REQUIRE(kronecker_chi(D, m * n) == cm * kronecker_chi(D, n));
    }
    CHECK(root_number(D) == (D < 0 ? -1 : 1));
  }
}

TEST_CASE("Gauss-Legendre rules and adaptive integration") {
  const auto& rule = quadrature::gauss_legendre(20);
  double w = 0.0;
  for (double x : rule.weights) w += x;
  CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
  const auto r = quadrature::integrate([](double x) { return std::exp(-x) * std::sin(5 * x); }, 0.0, 40.0);
  CHECK(r.value == doctest::Approx(5.0 / 26.0).epsilon(1e-12));
  const auto poly = quadrature::integrate([](double x) { return std::pow(x, 39); }, 0.0, 1.0);
  CHECK(poly.value == doctest::Approx(1.0 / 40.0).epsilon(1e-14));
}

TEST_CASE("cutoff functions") {
  for (double y = 0.001; y < 20.0; y *= 1.3) {
    REQUIRE(std::fabs(incomplete_gamma_kernel(y) - incomplete_gamma_closed_form(y)) < 1e-12);
  }
  CHECK(incomplete_gamma_kernel(0.0) == 1.0);
  const GaussianKernel g;
  CHECK(g(1e-4) == doctest::Approx(1.0).epsilon(1e-8));
  double prev = 1.0;
  for (double y = 0.01; y < 30.0; y *= 1.5) {
    const double v = g(y);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
  CHECK(std::fabs(g(60.0)) < 1e-8);
}

TEST_CASE("central value of Delta") {
  CentralOptions ig;
  CentralOptions gauss;
  gauss.kernel = Kernel::gaussian;
  const auto a = central_value(lift(), 1, 100, ig);
  const auto b = central_value(lift(), 1, 100, gauss);
  CHECK(std::fabs(a.value - b.value) < 1e-6);
  CHECK(std::fabs(a.value - b.value) < a.error_estimate + b.error_estimate + 1e-10);
  // regression anchor: L(6, Delta) in the unitary normalization
  CHECK(a.value == doctest::Approx(0.79212283864).epsilon(1e-9));
  CHECK(a.root_number == 1);
  CHECK_FALSE(a.forced_zero);
  ig.balance = 1.3;
  CHECK(central_value(lift(), 1, 100, ig).value == doctest::Approx(a.value).epsilon(1e-10));
}

TEST_CASE("truncation, balance and kernel consistency") {
  for (std::int64_t D : positive_fundamental_discriminants(200)) {
    const std::uint64_t T = required_truncation(D);
    const auto v = central_value(lift(), D, T);
    const auto v2 = central_value(lift(), D, 2 * T);
    REQUIRE(std::fabs(v.value - v2.value) < 1e-6);
    REQUIRE(v.error_estimate < 1e-6);
  }
  CentralOptions gauss;
  gauss.kernel = Kernel::gaussian;
  for (std::int64_t D : {5, 8, 13, 60, 101, 197}) {
    const auto a = central_value(lift(), D, 60 * D);
    const auto b = central_value(lift(), D, 60 * D, gauss);
    CHECK(std::fabs(a.value - b.value) < 1e-6);
  }
}

TEST_CASE("root number -1 forces vanishing") {
  CentralOptions opt;
  opt.balance = 1.25;
  for (std::int64_t D : {-3, -4, -7, -8, -15, -20, -23, -24, -163}) {
    const auto v = central_value(lift(), D, 60 * static_cast<std::uint64_t>(-D), opt);
    CHECK(v.forced_zero);
    CHECK(std::fabs(v.value) < 1e-6);
  }
}

TEST_CASE("precondition errors") {
  CHECK_THROWS_AS(central_value(lift(), 5, 100), ValidationError);
  CHECK_THROWS_AS(central_value(lift(), 9, 1000), ValidationError);
  CHECK_THROWS_AS(central_value(lift(), 997, 30000), PrecisionError);
  CentralOptions bad;
  bad.balance = 0.0;
  CHECK_THROWS_AS(central_value(lift(), 5, 200, bad), ValidationError);
}

TEST_CASE("Waldspurger proportionality") {
  const auto form = forms::build_plus_cusp_form(6, 1000);
  const auto scan = waldspurger_ratio_scan(form, lift(), 200);
  CHECK(scan.included() > 40);
  CHECK(scan.spread() <= 1.02);
  MESSAGE("a_f(D)^2 / L constant: " << scan.min_ratio << " .. " << scan.max_ratio);
  for (const auto& row : scan.rows) {
    if (row.included) CHECK(std::fabs(row.ratio_doubled / row.ratio - 1.0) < 0.005);
    if (row.a_f == 0.0) CHECK(std::fabs(row.L.value) < 1e-6);
    if (row.L.value < scan.l_floor) CHECK_FALSE(row.included);
  }
  CHECK(scan.rows.front().D == 1);

  WaldspurgerOptions literal;
  literal.d_exponent = 0.5;
  const auto half = waldspurger_ratio_scan(form, lift(), 200, literal);
  MESSAGE("with D^{1/2}: spread " << half.spread());
  CHECK(half.spread() > 2.0);
  CHECK_THROWS_AS(waldspurger_ratio_scan(form, lift(), 5000), PrecisionError);
}

TEST_CASE("Siegel probe") {
  const auto probe = siegel_probe(lift(), 200);
  REQUIRE(!probe.rows.empty());
  for (std::size_t i = 0; i < probe.rows.size(); ++i) {
    CHECK(probe.rows[i].p % 4 == 1);
    CHECK(arith::is_prime(probe.rows[i].p));
    if (i > 0) CHECK(probe.rows[i].p > probe.rows[i - 1].p);
  }
  WARN(probe.all_above[2]);
  MESSAGE("min nonzero |L(1/2, Delta x chi_p)| = " << probe.min_nonzero << " at p = " << probe.argmin);
}
