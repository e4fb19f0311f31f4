#include <doctest.h>

#include <random>

#include "kohnen/error.hpp"
#include "kohnen/ntt.hpp"
#include "kohnen/parallel.hpp"
#include "kohnen/qseries.hpp"

using namespace kohnen;
using namespace kohnen::qseries;

namespace {

QSeries from(std::initializer_list<long> values) {
  std::vector<Integer> c;
  for (long v : values) c.emplace_back(v);
  return QSeries(std::move(c));
}

QSeries random_series(std::mt19937_64& rng, std::size_t n, unsigned bits) {
  std::vector<Integer> c(n);
  for (auto& x : c) {
    Integer v = 0;
    for (unsigned b = 0; b < bits; b += 32) v = (v << 32) + static_cast<unsigned long>(rng() & 0xffffffffu);
    if (rng() & 1) v = -v;
    x = v;
  }
  return QSeries(std::move(c));
}

// q prod (1 - q^n)^24 by repeated multiplication with (1 - q^n), 24 times each.
std::vector<Integer> delta_by_brute_force(std::size_t n) {
  std::vector<Integer> c(n, 0);
  if (n > 1) c[1] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::size_t i = n - 1; i >= k; --i) c[i] -= c[i - k];
    }
  }
  return c;
}

long r2(long n) {
  long count = 0;
  for (long a = -n; a <= n; ++a)
    for (long b = -n; b <= n; ++b)
      if (a * a + b * b == n) ++count;
  return count;
}

}  // namespace

TEST_CASE("products of small series") {
  CHECK(series_mul(theta_series(6), theta_series(6)) == from({1, 4, 4, 0, 4, 8}));
  CHECK(series_mul(from({1, 1, 0}), from({1, -1, 0})) == from({1, 0, -1}));
  const QSeries a = from({3, -1, 4, 1, -5});
  CHECK(series_mul(a, QSeries::one(5)) == a);
  CHECK(series_pow(a, 0) == QSeries::one(5));
  CHECK(series_pow(theta_series(50), 2) == series_mul(theta_series(50), theta_series(50)));
  CHECK(series_mul(eisenstein_F(10), eisenstein_F(10))[4] == 8);
}

TEST_CASE("precision follows the shorter operand") {
  const auto p = series_mul(theta_series(10), eisenstein_F(7));
  CHECK(p.precision() == 7);
  CHECK((theta_series(4) + eisenstein_F(9)).precision() == 4);
  CHECK(series_mul(QSeries::zero(0), theta_series(5)).precision() == 0);
}

TEST_CASE("theta and F generators") {
  CHECK(theta_series(10) == from({1, 2, 0, 0, 2, 0, 0, 0, 0, 2}));
  CHECK(theta_series(1) == from({1}));
  CHECK(theta_series(26).nonzero_count() == 6);
  CHECK(eisenstein_F(10) == from({0, 1, 0, 4, 0, 6, 0, 8, 0, 13}));
  const auto F = eisenstein_F(400);
  CHECK(F[15] == 24);
  for (std::size_t n = 0; n < 400; n += 2) CHECK(F[n] == 0);
  for (std::size_t n = 1; n < 400; n += 2) {
    long sigma = 0;
    for (std::size_t d = 1; d <= n; ++d)
      if (n % d == 0) sigma += static_cast<long>(d);
    CHECK(F[n] == sigma);
  }
}

TEST_CASE("theta squared counts lattice points") {
  const auto t2 = series_mul(theta_series(400), theta_series(400));
  for (long n = 0; n < 400; ++n) CHECK(t2[n] == r2(n));
}

TEST_CASE("eta products") {
  CHECK(eta_product(EtaSpec(1, 24), 6) == from({0, 1, -24, 252, -1472, 4830}));
  const auto e = eta_product(EtaSpec(24, 1), 50);
  CHECK(e[1] == 1);
  CHECK(e[25] == -1);
  CHECK_THROWS_AS(EtaSpec(1, 23), ValidationError);
  CHECK(EtaSpec(8, 3).prefactor() == 1);
  const std::size_t n = 300;
  const auto delta = eta_product(EtaSpec(1, 24), n);
  const auto brute = delta_by_brute_force(n);
  for (std::size_t i = 0; i < n; ++i) CHECK(delta[i] == brute[i]);
}

TEST_CASE("tau is multiplicative on coprime arguments") {
  const std::size_t n = 10001;
  const auto tau = eta_product(EtaSpec(1, 24), n);
  CHECK(tau[1] == 1);
  std::size_t checked = 0;
  for (std::size_t a = 2; a < n; ++a) {
    for (std::size_t b = a + 1; a * b < n; ++b) {
      if (std::gcd(a, b) != 1) continue;
      REQUIRE(tau[a * b] == tau[a] * tau[b]);
      ++checked;
    }
  }
  CHECK(checked > 10000);
  // Hecke relation at prime powers
  for (std::size_t p : {2u, 3u, 5u, 7u}) {
    const Integer p11 = [&] {
      Integer x = 1;
      for (int i = 0; i < 11; ++i) x *= static_cast<unsigned long>(p);
      return x;
    }();
    CHECK(tau[p * p] == tau[p] * tau[p] - p11);
  }
}

TEST_CASE("ring laws on random truncations") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_series(rng, 40 + trial, 70);
    const auto b = random_series(rng, 45, 40);
    const auto c = random_series(rng, 38 + 2 * trial, 100);
    CHECK(series_mul(a, b) == series_mul(b, a));
    CHECK(series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c)));
    CHECK(series_mul(a, b + c) == series_mul(a, b) + series_mul(a, c));
  }
}

TEST_CASE("multiplication kernels agree") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 17u, 300u, 1500u}) {
    const auto a = random_series(rng, n, 200);
    const auto b = random_series(rng, n, 64);
    const auto ref = series_mul_schoolbook(a, b);
    CHECK(series_mul_transform(a, b) == ref);
    CHECK(series_mul_sparse(a, b) == ref);
    CHECK(series_mul(a, b) == ref);
    CHECK(series_mul_transform(a, a) == series_mul_schoolbook(a, a));
  }
  const auto t = theta_series(3000);
  const auto f = eisenstein_F(3000);
  CHECK(series_mul_sparse(t, f) == series_mul_transform(t, f));
  CHECK(series_mul(t, f) == series_mul_schoolbook(t, f));
}

TEST_CASE("transform primes") {
  const auto& primes = ntt::primes();
  REQUIRE(primes.size() >= 16);
  for (const auto& p : primes) {
    CHECK(p.modulus % (std::uint64_t{1} << ntt::kMaxLogSize) == 1);
    CHECK(p.modulus < (std::uint64_t{1} << 62));
  }
  const std::vector<std::uint64_t> a{1, 2, 3}, b{4, 5};
  CHECK(ntt::convolve(a, b, 4, primes[0]) == std::vector<std::uint64_t>{4, 13, 22, 15});
}

TEST_CASE("results do not depend on the worker count") {
  std::mt19937_64 rng(5);
  const auto a = random_series(rng, 5000, 90);
  const auto b = random_series(rng, 5000, 90);
  set_max_threads(1);
  const auto one = series_mul(a, b);
  const auto eta1 = eta_product(EtaSpec(1, 24), 3000);
  set_max_threads(4);
  CHECK(series_mul(a, b) == one);
  CHECK(eta_product(EtaSpec(1, 24), 3000) == eta1);
  set_max_threads(0);
}
