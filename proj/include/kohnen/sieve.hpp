#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace kohnen::sieve {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization in increasing prime order; empty for n = 1.
using Factorization = std::vector<PrimePower>;

struct ArithmeticData {
  Factorization factors;
  unsigned omega = 0;      // distinct primes
  unsigned big_omega = 0;  // primes with multiplicity
  int mu = 1;
};

std::uint64_t value_of(const Factorization& f);
ArithmeticData arithmetic_data(Factorization f);

/// Least-prime-factor table over [2, limit].
///
/// Built by a segmented sieve (segments of 2^22 entries, filled
/// independently). Composite entries store their least prime factor, which
/// is below 2^16 for limit < 2^32; primes store 0.
class FactorSieve {
 public:
  static constexpr std::uint64_t kSegmentSize = std::uint64_t{1} << 22;
  static constexpr unsigned kFormatVersion = 1;

  /// Throws CapacityError above max_limit() and ValidationError below 2.
  explicit FactorSieve(std::uint64_t limit);

  static std::uint64_t max_limit();
  static void set_max_limit(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::uint64_t least_prime_factor(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const;
  Factorization factorize(std::uint64_t n) const;
  ArithmeticData arithmetic(std::uint64_t n) const;
  unsigned omega(std::uint64_t n) const;
  unsigned big_omega(std::uint64_t n) const;
  int mobius(std::uint64_t n) const;

  /// Binary cache file name keyed by (limit, segment size, version).
  static std::string cache_file_name(std::uint64_t limit);
  void save(const std::filesystem::path& path) const;
  static std::optional<FactorSieve> load(const std::filesystem::path& path, std::uint64_t limit);

 private:
  FactorSieve() = default;
  void check_range(std::uint64_t n) const;

  std::uint64_t limit_ = 0;
  std::vector<std::uint16_t> lpf_;  // index n; 0 marks a prime (or n < 2)
};

/// Builds a sieve, reusing the cache directory named by KOHNEN_SIEVE_CACHE
/// when that variable is set.
FactorSieve build_factor_sieve(std::uint64_t limit);

enum class CountMode { distinct, with_multiplicity };

/// 1 < n <= limit with omega(n) <= r (distinct) or Omega(n) <= r, ascending.
std::vector<std::uint64_t> almost_primes(std::uint64_t limit, unsigned r, CountMode mode, const FactorSieve& sieve);

/// Membership test matching almost_primes.
bool is_almost_prime(std::uint64_t n, unsigned r, CountMode mode, const FactorSieve& sieve);

const char* to_string(CountMode mode);

}  // namespace kohnen::sieve
