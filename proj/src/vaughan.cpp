#include "kohnen/vaughan.hpp"

#include <cmath>

#include "kohnen/error.hpp"
#include "kohnen/parallel.hpp"

namespace kohnen::sieve {

namespace {

struct Divisor {
  std::uint64_t value;
  Factorization factors;
};

void collect_divisors(const Factorization& n, std::size_t i, Divisor& current, bool squarefree_only,
                      std::vector<Divisor>& out) {
  if (i == n.size()) {
    out.push_back(current);
    return;
  }
  const unsigned top = squarefree_only ? std::min(1u, n[i].exponent) : n[i].exponent;
  const std::uint64_t saved = current.value;
  for (unsigned e = 0; e <= top; ++e) {
    if (e > 0) {
      current.value *= n[i].prime;
      current.factors.push_back({n[i].prime, e});
    }
    collect_divisors(n, i + 1, current, squarefree_only, out);
    if (e > 0) current.factors.pop_back();
  }
  current.value = saved;
}

std::vector<Divisor> divisors(const Factorization& n, bool squarefree_only = false) {
  std::vector<Divisor> out;
  Divisor current{1, {}};
  collect_divisors(n, 0, current, squarefree_only, out);
  return out;
}

Factorization quotient(const Factorization& n, const Factorization& d) {
  Factorization out;
  std::size_t j = 0;
  for (const auto& pp : n) {
    unsigned e = pp.exponent;
    if (j < d.size() && d[j].prime == pp.prime) e -= d[j++].exponent;
    if (e > 0) out.push_back({pp.prime, e});
  }
  return out;
}

int mobius_of_squarefree(const Factorization& d) { return (d.size() % 2) ? -1 : 1; }

// For each divisor l with Lambda_r(l) != 0: l, Lambda_r(l), and the squarefree
// divisors m of n/l with their Moebius values.
struct LPart {
  std::uint64_t l;
  LambdaValue lambda;
  std::vector<std::pair<std::uint64_t, int>> m_terms;
};

std::vector<LPart> l_parts(const Factorization& n, unsigned r) {
  std::vector<LPart> out;
  for (const auto& l : divisors(n)) {
    auto lambda = lambda_r_exact(r, l.factors);
    if (lambda.exact.empty()) continue;
    LPart part{l.value, std::move(lambda), {}};
    for (const auto& m : divisors(quotient(n, l.factors), true)) {
      part.m_terms.emplace_back(m.value, mobius_of_squarefree(m.factors));
    }
    out.push_back(std::move(part));
  }
  return out;
}

void check_params(const VaughanParams& p) {
  if (p.r == 0) throw ValidationError("Lambda_r needs r >= 1");
  if (!(p.Q >= 1.0) || !(p.R >= 1.0)) throw ValidationError("Vaughan parameters need Q, R >= 1");
}

void check_range(std::uint64_t n, const VaughanParams& p) {
  const double value = static_cast<double>(n);
  if (!(value > p.Q && value <= p.Q * p.R)) {
    throw ValidationError("n = " + std::to_string(n) + " outside (Q, QR]");
  }
}

std::size_t dyadic_index(double value, const std::vector<double>& bounds, bool extend_last) {
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (value > bounds[i]) return i;
  }
  return extend_last ? bounds.size() - 1 : bounds.size();
}

}  // namespace

VaughanParams VaughanParams::defaults(double X, unsigned r) {
  if (!(X >= 1.0)) throw ValidationError("Vaughan parameters need X >= 1");
  VaughanParams p;
  p.Q = std::pow(X, 9.0 / 13.0);
  p.R = std::pow(X, 4.0 / 13.0);
  p.X = X;
  p.r = r;
  p.m_block = std::pow(X, 1.0 / 26.0);
  check_params(p);
  return p;
}

VaughanParams VaughanParams::custom(double Q, double R, unsigned r) {
  VaughanParams p;
  p.Q = Q;
  p.R = R;
  p.X = Q * R;
  p.r = r;
  p.m_block = std::pow(p.X, 1.0 / 26.0);
  check_params(p);
  return p;
}

LogMonomialSum VaughanTermsExact::reassembled() const {
  LogMonomialSum out = s1;
  out.add(s2, -1);
  out.add(s3);
  out.add(s4);
  return out;
}

VaughanTerms vaughan_terms(const Factorization& n, const VaughanParams& params) {
  check_params(params);
  VaughanTerms out;
  if (n.empty()) return out;
  const double log_n = std::log(static_cast<double>(value_of(n)));

  CompensatedSum s1;
  for (const auto& d : divisors(n, true)) {
    if (static_cast<double>(d.value) > params.R) continue;
    const double log_q = log_n - std::log(static_cast<double>(d.value));
    s1.add(mobius_of_squarefree(d.factors) * std::pow(log_q, params.r));
  }
  out.s1 = s1.value();

  CompensatedSum s2, s3, s4;
  for (const auto& part : l_parts(n, params.r)) {
    const bool l_small = static_cast<double>(part.l) <= params.Q;
    long mu_small = 0, mu_large = 0;
    for (const auto& [m, mu] : part.m_terms) {
      (static_cast<double>(m) <= params.R ? mu_small : mu_large) += mu;
    }
    const double lam = part.lambda.value;
    if (l_small) {
      s2.add(lam * static_cast<double>(mu_small));
      s3.add(lam * static_cast<double>(mu_small + mu_large));
    } else {
      s4.add(lam * static_cast<double>(mu_large));
    }
  }
  out.s2 = s2.value();
  out.s3 = s3.value();
  out.s4 = s4.value();
  return out;
}

VaughanTermsExact vaughan_terms_exact(const Factorization& n, const VaughanParams& params) {
  check_params(params);
  VaughanTermsExact out;
  if (n.empty()) return out;
  for (const auto& d : divisors(n, true)) {
    if (static_cast<double>(d.value) > params.R) continue;
    out.s1.add(log_power_exact(params.r, quotient(n, d.factors)), mobius_of_squarefree(d.factors));
  }
  for (const auto& part : l_parts(n, params.r)) {
    const bool l_small = static_cast<double>(part.l) <= params.Q;
    for (const auto& [m, mu] : part.m_terms) {
      const bool m_small = static_cast<double>(m) <= params.R;
      if (l_small && m_small) out.s2.add(part.lambda.exact, mu);
      if (l_small) out.s3.add(part.lambda.exact, mu);
      if (!l_small && !m_small) out.s4.add(part.lambda.exact, mu);
    }
  }
  return out;
}

VaughanTwoTerm vaughan_two_term(const Factorization& n, const VaughanParams& params) {
  check_params(params);
  check_range(value_of(n), params);
  const auto terms = vaughan_terms(n, params);
  if (terms.s3 != 0.0 || terms.s4 != 0.0) {
    throw AssertionFailure("S3 or S4 nonzero inside (Q, QR] for n = " + std::to_string(value_of(n)));
  }
  return {terms.s1, terms.s2};
}

std::vector<double> dyadic_bounds(double limit) {
  std::vector<double> out;
  if (!(limit > 1.0)) return out;
  const auto count = static_cast<std::size_t>(std::ceil(std::log2(limit)));
  double L = limit;
  for (std::size_t i = 0; i < count; ++i) {
    L /= 2.0;
    out.push_back(L);
  }
  return out;
}

double DyadicDecomposition::reassembled() const {
  CompensatedSum sum;
  sum.add(lambda_star_r);
  for (double v : grid) sum.add(-v);
  return sum.value();
}

DyadicDecomposition dyadic_decomposition(const Factorization& n, const VaughanParams& params) {
  check_params(params);
  check_range(value_of(n), params);
  DyadicDecomposition out;
  out.l_bounds = dyadic_bounds(params.Q);
  out.m_bounds = dyadic_bounds(params.R);
  out.lambda_star_r = vaughan_terms(n, params).s1;
  const std::size_t rows = out.l_bounds.size();
  const std::size_t cols = out.m_bounds.size();
  std::vector<long> mu_by_block(cols);
  std::vector<CompensatedSum> cells(rows * cols);
  for (const auto& part : l_parts(n, params.r)) {
    const double l = static_cast<double>(part.l);
    if (l > params.Q) continue;
    const std::size_t li = dyadic_index(l, out.l_bounds, false);
    if (li >= rows) continue;  // only l = 1, where Lambda_r vanishes
    std::fill(mu_by_block.begin(), mu_by_block.end(), 0);
    for (const auto& [m, mu] : part.m_terms) {
      if (static_cast<double>(m) > params.R) continue;
      mu_by_block[dyadic_index(static_cast<double>(m), out.m_bounds, true)] += mu;
    }
    for (std::size_t mi = 0; mi < cols; ++mi) {
      if (mu_by_block[mi] != 0) cells[li * cols + mi].add(part.lambda.value * static_cast<double>(mu_by_block[mi]));
    }
  }
  out.grid.resize(rows * cols);
  for (std::size_t i = 0; i < cells.size(); ++i) out.grid[i] = cells[i].value();
  return out;
}

}  // namespace kohnen::sieve
