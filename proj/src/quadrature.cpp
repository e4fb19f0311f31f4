#include "kohnen/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace kohnen::quadrature {

namespace {

GaussRule make_rule(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double apply(const GaussRule& rule, const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

void refine(const GaussRule& rule, const std::function<double(double)>& f, double a, double b, double whole,
            double tol, unsigned depth, Integral& out) {
  const double mid = 0.5 * (a + b);
  const double left = apply(rule, f, a, mid);
  const double right = apply(rule, f, mid, b);
  out.evaluations += 2 * rule.nodes.size();
  const double diff = std::fabs(left + right - whole);
  if (diff <= tol || depth == 0) {
    out.value += left + right;
    out.error_estimate += diff;
    return;
  }
  refine(rule, f, a, mid, left, 0.5 * tol, depth - 1, out);
  refine(rule, f, mid, b, right, 0.5 * tol, depth - 1, out);
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t points) {
  static std::mutex mutex;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(points);
  if (it == cache.end()) it = cache.emplace(points, make_rule(points)).first;
  return it->second;
}

Integral integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, unsigned max_depth) {
  const GaussRule& rule = gauss_legendre(20);
  Integral out;
  if (a == b) return out;
  const double whole = apply(rule, f, a, b);
  out.evaluations = rule.nodes.size();
  refine(rule, f, a, b, whole, abs_tol, max_depth, out);
  return out;
}

}  // namespace kohnen::quadrature
