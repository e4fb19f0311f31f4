#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>

#include "kohnen/error.hpp"
#include "kohnen/lambda.hpp"
#include "kohnen/parallel.hpp"
#include "kohnen/sieve.hpp"
#include "kohnen/vaughan.hpp"
#include "oracles.hpp"

using namespace kohnen;
using namespace kohnen::sieve;

namespace {

const FactorSieve& small_sieve() {
  static const FactorSieve s(100000);
  return s;
}

double log_pow(std::uint64_t n, unsigned r) { return std::pow(std::log(static_cast<double>(n)), r); }

}  // namespace

TEST_CASE("least prime factors") {
  const auto& s = small_sieve();
  CHECK(s.least_prime_factor(12) == 2);
  CHECK(s.least_prime_factor(35) == 5);
  CHECK(s.least_prime_factor(97) == 97);
  CHECK(s.is_prime(99991));
  CHECK_FALSE(s.is_prime(99999));
  CHECK_THROWS_AS(s.least_prime_factor(100001), ValidationError);
  for (std::uint64_t n = 2; n <= 100000; ++n) {
    const auto f = oracle::trial_factor(n);
    REQUIRE(s.least_prime_factor(n) == f.front().p);
  }
}

TEST_CASE("arithmetic functions") {
  const auto& s = small_sieve();
  auto a = s.arithmetic(30);
  CHECK(a.omega == 3);
  CHECK(a.big_omega == 3);
  CHECK(a.mu == -1);
  a = s.arithmetic(12);
  CHECK(a.omega == 2);
  CHECK(a.big_omega == 3);
  CHECK(a.mu == 0);
  a = s.arithmetic(1);
  CHECK(a.omega == 0);
  CHECK(a.big_omega == 0);
  CHECK(a.mu == 1);
  CHECK(s.factorize(360) == Factorization{{2, 3}, {3, 2}, {5, 1}});
  for (std::uint64_t n = 2; n <= 20000; ++n) {
    REQUIRE(s.omega(n) == oracle::omega(n));
    REQUIRE(s.big_omega(n) == oracle::big_omega(n));
    REQUIRE(s.mobius(n) == oracle::mobius(n));
    REQUIRE(value_of(s.factorize(n)) == n);
  }
}

TEST_CASE("segmented sieve across segment boundaries") {
  const std::uint64_t limit = 3 * FactorSieve::kSegmentSize + 12345;
  set_max_threads(3);
  const FactorSieve s(limit);
  set_max_threads(0);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 3000; ++i) {
    const std::uint64_t n = 2 + rng() % (limit - 1);
    REQUIRE(s.least_prime_factor(n) == oracle::trial_factor(n).front().p);
  }
  for (std::uint64_t k = 1; k <= 3; ++k) {
    for (std::uint64_t n = k * FactorSieve::kSegmentSize - 3; n <= k * FactorSieve::kSegmentSize + 3; ++n) {
      CHECK(s.least_prime_factor(n) == oracle::trial_factor(n).front().p);
    }
  }
  CHECK(s.least_prime_factor(limit) == oracle::trial_factor(limit).front().p);
}

TEST_CASE("capacity guard and cache files") {
  const auto saved = FactorSieve::max_limit();
  FactorSieve::set_max_limit(1000);
  CHECK_THROWS_AS(FactorSieve(1001), CapacityError);
  FactorSieve::set_max_limit(saved);
  CHECK_THROWS_AS(FactorSieve(1), ValidationError);

  CHECK(FactorSieve::cache_file_name(5000) == "lpf_X5000_S4194304_v1.bin");
  const auto dir = std::filesystem::temp_directory_path() / "kohnen_sieve_cache_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const FactorSieve s(5000);
  s.save(dir / FactorSieve::cache_file_name(5000));
  const auto loaded = FactorSieve::load(dir / FactorSieve::cache_file_name(5000), 5000);
  REQUIRE(loaded.has_value());
  for (std::uint64_t n = 2; n <= 5000; ++n) REQUIRE(loaded->least_prime_factor(n) == s.least_prime_factor(n));
  CHECK_FALSE(FactorSieve::load(dir / FactorSieve::cache_file_name(5000), 4000).has_value());
  CHECK_FALSE(FactorSieve::load(dir / "missing.bin", 5000).has_value());

  setenv("KOHNEN_SIEVE_CACHE", dir.c_str(), 1);
  const auto built = build_factor_sieve(7000);
  CHECK(std::filesystem::exists(dir / FactorSieve::cache_file_name(7000)));
  const auto reused = build_factor_sieve(7000);
  CHECK(reused.least_prime_factor(6999) == built.least_prime_factor(6999));
  unsetenv("KOHNEN_SIEVE_CACHE");
  std::filesystem::remove_all(dir);
}

TEST_CASE("almost primes") {
  const auto& s = small_sieve();
  CHECK(almost_primes(30, 1, CountMode::distinct, s) ==
        std::vector<std::uint64_t>{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29});
  CHECK(almost_primes(10, 2, CountMode::with_multiplicity, s) == std::vector<std::uint64_t>{2, 3, 4, 5, 6, 7, 9, 10});
  CHECK(almost_primes(1000, 10, CountMode::with_multiplicity, s).size() == 999);
  for (std::uint64_t n = 2; n <= 5000; ++n) {
    CHECK(is_almost_prime(n, 2, CountMode::distinct, s) == (oracle::omega(n) <= 2));
    CHECK(is_almost_prime(n, 2, CountMode::with_multiplicity, s) == (oracle::big_omega(n) <= 2));
  }
}

TEST_CASE("Lambda_r small cases") {
  const auto& s = small_sieve();
  const double l2 = std::log(2.0), l3 = std::log(3.0);
  CHECK(lambda_r_exact(1, s.factorize(8)).value == doctest::Approx(l2).epsilon(1e-15));
  CHECK(lambda_r_exact(2, s.factorize(6)).value == doctest::Approx(2 * l2 * l3).epsilon(1e-15));
  const auto zero = lambda_r_exact(1, s.factorize(6));
  CHECK(zero.exact.empty());
  CHECK(zero.value == 0.0);
  CHECK(lambda_r_exact(3, {}).exact.empty());
  CHECK(lambda_r_exact(2, s.factorize(6)).exact.to_string() == "2*log(2)*log(3)");
  for (auto [p, q] : {std::pair{3ul, 7ul}, {11ul, 101ul}, {2ul, 49999ul}}) {
    CHECK(lambda_r_exact(2, s.factorize(p * q)).value ==
          doctest::Approx(2 * std::log(double(p)) * std::log(double(q))).epsilon(1e-14));
  }
  const auto table = lambda_r_table(1, 1000, s);
  for (std::uint64_t n = 2; n <= 1000; ++n) CHECK((table[n] != 0.0) == (oracle::omega(n) == 1));
}

TEST_CASE("Mobius inversion and support") {
  const auto& s = small_sieve();
  for (unsigned r = 1; r <= 4; ++r) {
    // n = 360, r = 3 is the worked case; scan a full range as well
    for (std::uint64_t n = 2; n <= 3000; ++n) {
      double sum = 0.0;
      for (auto d : oracle::divisors(n)) sum += lambda_r_exact(r, s.factorize(d)).value;
      REQUIRE(std::fabs(sum - log_pow(n, r)) <= 1e-9 * log_pow(n, r));
      const bool empty = lambda_r_exact(r, s.factorize(n)).exact.empty();
      REQUIRE(empty == (oracle::omega(n) > r));
    }
  }
  double sum = 0.0;
  for (auto d : oracle::divisors(360)) sum += lambda_r_exact(3, s.factorize(d)).value;
  CHECK(sum == doctest::Approx(log_pow(360, 3)).epsilon(1e-12));
}

TEST_CASE("recurrence table against the divisor-sum definition") {
  const auto& s = small_sieve();
  auto table = lambda_r_table(1, 10000, s);
  for (unsigned r = 1; r <= 4; ++r) {
    if (r > 1) {
      const auto next = lambda_next(table, r - 1, s);
      CHECK(next == lambda_r_table(r, 10000, s));
      table = next;
    }
    for (std::uint64_t n = 2; n <= 10000; ++n) {
      const long double ref = oracle::lambda_r(r, n);
      const double scale = log_pow(n, r);
      REQUIRE(std::fabs(table[n] - static_cast<double>(ref)) <= 1e-10 * scale);
      if (oracle::omega(n) > r) REQUIRE(table[n] == 0.0);
    }
  }
}

TEST_CASE("Dirichlet series main terms at 10^7") {
  const std::uint64_t X = 10000000;
  const auto s = build_factor_sieve(X);
  auto table = lambda_r_table(1, X, s);
  const double L = std::log(static_cast<double>(X));
  constexpr double kEuler = 0.57721566490153286;
  for (unsigned r = 1; r <= 3; ++r) {
    if (r > 1) table = lambda_next(table, r - 1, s);
    CompensatedSum sum;
    for (double v : table) sum.add(v);
    const double leading = r * X * std::pow(L, r - 1);
    const double two_term = leading * (1.0 - (r - 1) * (1.0 + kEuler) / L);
    MESSAGE("r=" << r << ": sum/leading = " << sum.value() / leading << ", sum/two-term = " << sum.value() / two_term);
    CHECK(std::fabs(sum.value() / two_term - 1.0) < 0.1);
    if (r <= 2) CHECK(std::fabs(sum.value() / leading - 1.0) < 0.1);
  }
}

TEST_CASE("Vaughan identity") {
  const auto& s = small_sieve();
  CHECK(vaughan_terms({}, VaughanParams::custom(3, 3, 2)).reassembled() == 0.0);
  const auto prime = s.factorize(101);
  const auto p = VaughanParams::custom(50, 10, 1);
  const auto t = vaughan_terms(prime, p);
  CHECK(t.s1 == doctest::Approx(std::log(101.0)));
  CHECK(t.s2 == 0.0);
  CHECK(t.s3 == 0.0);
  CHECK(t.s4 == 0.0);

  std::mt19937_64 rng(17);
  const FactorSieve big(1000000);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::uint64_t n = 2 + rng() % 999999;
    const unsigned r = 1 + rng() % 4;
    const double ln = std::log(static_cast<double>(n));
    const double Q = std::exp(ln * (rng() % 1000) / 1000.0), R = std::exp(ln * (rng() % 1000) / 1000.0);
    const auto params = VaughanParams::custom(Q, R, r);
    const auto f = big.factorize(n);
    const auto terms = vaughan_terms(f, params);
    REQUIRE(std::fabs(terms.reassembled() - lambda_r_exact(r, f).value) <= 1e-9 * log_pow(n, r));
    if (Q < n && n <= Q * R) {
      REQUIRE(terms.s3 == 0.0);
      REQUIRE(terms.s4 == 0.0);
    }
  }
}

TEST_CASE("Vaughan identity on the symbolic path") {
  const auto& s = small_sieve();
  std::mt19937_64 rng(23);
  for (int pair = 0; pair < 4; ++pair) {
    const double Q = 1.0 + static_cast<double>(rng() % 60), R = 1.0 + static_cast<double>(rng() % 60);
    for (unsigned r = 1; r <= 3; ++r) {
      const auto params = VaughanParams::custom(Q, R, r);
      for (std::uint64_t n = 1; n <= 2000; ++n) {
        const auto f = n == 1 ? Factorization{} : s.factorize(n);
        auto diff = vaughan_terms_exact(f, params).reassembled();
        diff.add(lambda_r_exact(r, f).exact, -1);
        REQUIRE(diff.empty());
      }
    }
  }
}

TEST_CASE("two-term form") {
  const auto& s = small_sieve();
  const auto params = VaughanParams::custom(100, 50, 2);
  const auto prime = vaughan_two_term(s.factorize(4999), params);
  CHECK(prime.value() == doctest::Approx(log_pow(4999, 2)).epsilon(1e-12));
  const auto composite = vaughan_two_term(s.factorize(2 * 3 * 5 * 7 * 11), params);
  CHECK(std::fabs(composite.value()) < 1e-9 * log_pow(2310, 2));
  CHECK_THROWS_AS(vaughan_two_term(s.factorize(99), params), ValidationError);
  CHECK_THROWS_AS(vaughan_two_term(s.factorize(5001), params), ValidationError);
}

TEST_CASE("dyadic decomposition") {
  const auto& s = small_sieve();
  const auto params = VaughanParams::defaults(50000, 3);
  CHECK(params.Q == doctest::Approx(std::pow(50000.0, 9.0 / 13.0)));
  CHECK(params.R == doctest::Approx(std::pow(50000.0, 4.0 / 13.0)));
  CHECK(params.m_block == doctest::Approx(std::pow(50000.0, 1.0 / 26.0)));
  const auto prime = dyadic_decomposition(s.factorize(49999), params);
  CHECK(prime.lambda_star_r == doctest::Approx(log_pow(49999, 3)).epsilon(1e-12));
  for (double v : prime.grid) CHECK(v == 0.0);
  CHECK(prime.l_bounds.size() <= std::ceil(std::log2(params.Q)));
  CHECK(prime.m_bounds.size() <= std::ceil(std::log2(params.R)));
  for (double L : prime.l_bounds) CHECK(2 * L <= params.Q * (1 + 1e-12));
  for (double M : prime.m_bounds) CHECK(2 * M <= params.R * (1 + 1e-12));
  for (std::uint64_t n = static_cast<std::uint64_t>(params.Q) + 1; n <= 50000; n += 7) {
    const auto f = s.factorize(n);
    const auto d = dyadic_decomposition(f, params);
    REQUIRE(std::fabs(d.reassembled() - lambda_r_exact(3, f).value) <= 1e-9 * log_pow(n, 3));
    CHECK(d.lambda_star_r == vaughan_terms(f, params).s1);
  }
  CHECK_THROWS_AS(dyadic_decomposition(s.factorize(100), params), ValidationError);
  CHECK(dyadic_bounds(8.0) == std::vector<double>{4, 2, 1});
}
