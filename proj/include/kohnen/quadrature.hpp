#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace kohnen::quadrature {

/// n-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(std::size_t points);

struct Integral {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive Gauss-Legendre: a panel is accepted when its 20-point estimate
/// and the sum over its two halves agree within the panel's share of abs_tol.
Integral integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-12,
                   unsigned max_depth = 30);

}  // namespace kohnen::quadrature
