#include "kohnen/lambda.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "kohnen/error.hpp"
#include "kohnen/parallel.hpp"

namespace kohnen::sieve {

namespace {

using i128 = __int128;

struct Composition {
  std::vector<unsigned> parts;
  i128 multinomial;
};

// All ways to write r as an ordered sum of k nonnegative parts.
std::vector<Composition> compositions(std::size_t k, unsigned r) {
  std::vector<i128> factorial(r + 1, 1);
  for (unsigned i = 1; i <= r; ++i) factorial[i] = factorial[i - 1] * i;
  std::vector<Composition> out;
  std::vector<unsigned> parts(k, 0);
  auto recurse = [&](auto&& self, std::size_t i, unsigned remaining) -> void {
    if (i + 1 == k) {
      parts[i] = remaining;
      i128 m = factorial[r];
      for (unsigned e : parts) m /= factorial[e];
      out.push_back({parts, m});
      return;
    }
    for (unsigned e = 0; e <= remaining; ++e) {
      parts[i] = e;
      self(self, i + 1, remaining - e);
    }
  };
  if (k > 0) recurse(recurse, 0, r);
  return out;
}

i128 ipow(i128 base, unsigned e) {
  i128 out = 1;
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

LogMonomialSum to_sum(const Factorization& n, const std::vector<Composition>& comps, const std::vector<i128>& acc) {
  LogMonomialSum out;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (acc[c] == 0) continue;
    if (acc[c] > std::numeric_limits<std::int64_t>::max() || acc[c] < std::numeric_limits<std::int64_t>::min()) {
      throw CapacityError("log-monomial coefficient overflows 64 bits");
    }
    LogMonomialSum::Key key;
    for (std::size_t i = 0; i < n.size(); ++i) key.insert(key.end(), comps[c].parts[i], n[i].prime);
    out.add(key, static_cast<std::int64_t>(acc[c]));
  }
  return out;
}

}  // namespace

void LogMonomialSum::add(const Key& key, std::int64_t coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

void LogMonomialSum::add(const LogMonomialSum& other, std::int64_t scale) {
  for (const auto& [key, c] : other.terms_) add(key, c * scale);
}

double LogMonomialSum::evaluate() const {
  CompensatedSum sum;
  for (const auto& [key, c] : terms_) {
    double term = static_cast<double>(c);
    for (std::uint64_t p : key) term *= std::log(static_cast<double>(p));
    sum.add(term);
  }
  return sum.value();
}

std::string LogMonomialSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    out << (c < 0 ? -c : c);
    for (std::uint64_t p : key) out << "*log(" << p << ")";
  }
  return out.str();
}

LambdaValue lambda_r_exact(unsigned r, const Factorization& n) {
  if (r == 0) throw ValidationError("Lambda_r needs r >= 1");
  LambdaValue out;
  const std::size_t k = n.size();
  if (k == 0) return out;  // n = 1
  if (k >= 32) throw CapacityError("too many prime factors");
  const auto comps = compositions(k, r);
  std::vector<i128> acc(comps.size(), 0);
  std::vector<i128> b(k);
  // d runs over squarefree divisors: d = prod_{i in S} p_i, log(n/d) = sum_i (a_i - [i in S]) log p_i.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    const bool negative = (__builtin_popcountll(mask) & 1) != 0;
    for (std::size_t i = 0; i < k; ++i) b[i] = n[i].exponent - ((mask >> i) & 1);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      i128 term = comps[c].multinomial;
      for (std::size_t i = 0; i < k && term != 0; ++i) term *= ipow(b[i], comps[c].parts[i]);
      acc[c] += negative ? -term : term;
    }
  }
  out.exact = to_sum(n, comps, acc);
  out.value = out.exact.evaluate();
  return out;
}

LogMonomialSum log_power_exact(unsigned r, const Factorization& n) {
  if (n.empty()) return {};
  const auto comps = compositions(n.size(), r);
  std::vector<i128> acc(comps.size(), 0);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    i128 term = comps[c].multinomial;
    for (std::size_t i = 0; i < n.size(); ++i) term *= ipow(n[i].exponent, comps[c].parts[i]);
    acc[c] = term;
  }
  return to_sum(n, comps, acc);
}

std::vector<double> lambda_next(const std::vector<double>& lambda_k, unsigned k, const FactorSieve& sieve) {
  const std::uint64_t limit = lambda_k.size() - 1;
  std::vector<double> out(lambda_k.size(), 0.0);
  constexpr std::uint64_t kBlock = 1 << 16;
  const std::size_t blocks = static_cast<std::size_t>(limit / kBlock + 1);
  parallel_for(blocks, [&](std::size_t blk) {
    const std::uint64_t lo = std::max<std::uint64_t>(2, blk * kBlock);
    const std::uint64_t hi = std::min(limit + 1, (blk + 1) * kBlock);
    for (std::uint64_t n = lo; n < hi; ++n) {
      const auto f = sieve.factorize(n);
      if (f.size() > k + 1) continue;  // structural zero
      double v = lambda_k[n] * std::log(static_cast<double>(n));
      for (const auto& pp : f) {
        const double log_p = std::log(static_cast<double>(pp.prime));
        std::uint64_t q = n;
        for (unsigned j = 0; j < pp.exponent; ++j) {
          q /= pp.prime;
          v += lambda_k[q] * log_p;
        }
      }
      out[n] = v;
    }
  });
  return out;
}

std::vector<double> lambda_r_table(unsigned r, std::uint64_t limit, const FactorSieve& sieve) {
  if (r == 0) throw ValidationError("Lambda_r needs r >= 1");
  if (limit > sieve.limit()) throw PrecisionError("Lambda_r table beyond sieve range", sieve.limit());
  std::vector<double> table(limit + 1, 0.0);
  for (std::uint64_t n = 2; n <= limit; ++n) {
    const auto f = sieve.factorize(n);
    if (f.size() == 1) table[n] = std::log(static_cast<double>(f[0].prime));
  }
  for (unsigned k = 1; k < r; ++k) table = lambda_next(table, k, sieve);
  return table;
}

}  // namespace kohnen::sieve
