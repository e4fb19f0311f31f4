#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kohnen/sieve.hpp"

namespace kohnen::sieve {

/// Integer combination of monomials prod_i log(p_i), each monomial keyed by
/// the multiset of its primes (sorted, with repetition): {2, 2, 3} is
/// log(2)^2 log(3). Zero coefficients are never stored.
class LogMonomialSum {
 public:
  using Key = std::vector<std::uint64_t>;

  void add(const Key& key, std::int64_t coefficient);
  void add(const LogMonomialSum& other, std::int64_t scale = 1);

  bool empty() const noexcept { return terms_.empty(); }
  const std::map<Key, std::int64_t>& terms() const noexcept { return terms_; }
  double evaluate() const;
  std::string to_string() const;

  friend bool operator==(const LogMonomialSum&, const LogMonomialSum&) = default;

 private:
  std::map<Key, std::int64_t> terms_;
};

/// Lambda_r(n) = sum_{d | n} mu(d) log(n/d)^r in exact and floating form.
struct LambdaValue {
  double value = 0.0;  // evaluation of exact; exactly 0.0 when exact is empty
  LogMonomialSum exact;
};

/// Expands the divisor sum over squarefree d | n into log-prime monomials.
/// The result is the empty combination exactly when omega(n) > r or n = 1.
LambdaValue lambda_r_exact(unsigned r, const Factorization& n);

/// (log n)^r as a monomial combination.
LogMonomialSum log_power_exact(unsigned r, const Factorization& n);

/// Lambda_r(n) for 0 <= n <= limit (entries 0 and 1 are 0.0).
///
/// Uses Lambda_{k+1} = Lambda_k log + Lambda_k * Lambda_1 from Lambda_1, so
/// every n with omega(n) > r holds an exact 0.0.
std::vector<double> lambda_r_table(unsigned r, std::uint64_t limit, const FactorSieve& sieve);

/// One step of the recurrence above: Lambda_{k+1} from Lambda_k.
std::vector<double> lambda_next(const std::vector<double>& lambda_k, unsigned k, const FactorSieve& sieve);

}  // namespace kohnen::sieve
