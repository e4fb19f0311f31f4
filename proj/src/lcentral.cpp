#include "kohnen/lcentral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "kohnen/arith.hpp"
#include "kohnen/error.hpp"
#include "kohnen/parallel.hpp"
#include "kohnen/quadrature.hpp"

namespace kohnen::lcentral {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGamma6 = 120.0;
constexpr double kQuadTol = 1e-12;
constexpr double kContour = 1.0;

cplx log_gamma(cplx z) {
  cplx shift = 0.0;
  while (std::abs(z) < 20.0 || z.real() < 20.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  const cplx series = inv * (1.0 / 12.0 + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 + inv2 * (-1.0 / 1680.0))));
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(kTwoPi) + series - shift;
}

void check_discriminant(std::int64_t D) {
  if (D != 1 && !arith::is_fundamental_discriminant(D)) {
    throw ValidationError("D = " + std::to_string(D) + " is not a fundamental discriminant");
  }
}

std::uint64_t abs_d(std::int64_t D) { return static_cast<std::uint64_t>(D < 0 ? -D : D); }

// Bound for sum_{n > T} V(n / Y) with G = 1, using that V decreases:
// Y int_{T/Y}^inf V = (Y / 2 pi) sum_{j < 6} Q(j + 1, 2 pi T / Y).
double tail_incomplete_gamma(double T, double Y) {
  const double x = kTwoPi * T / Y;
  double term = 1.0, partial = 0.0, total = 0.0;
  for (int j = 0; j < 6; ++j) {
    if (j > 0) term *= x / j;
    partial += term;
    total += partial;
  }
  return Y / kTwoPi * std::exp(-x) * total;
}

// |V(y)| <= e^{c^2/s^2} Gamma(6+c) s / (2 sqrt(pi) c Gamma(6)) (2 pi y)^{-c} on Re(u) = c,
// summed over n > T.
double tail_gaussian(double T, double Y, double s) {
  double best = std::numeric_limits<double>::infinity();
  for (double c = 2.0; c <= 60.0; c += 0.5) {
    const double log_b = c * c / (s * s) + std::lgamma(6.0 + c) + std::log(s / (2.0 * std::sqrt(std::numbers::pi) * c * kGamma6));
    const double log_sum = -c * std::log(kTwoPi / Y) + (1.0 - c) * std::log(T) - std::log(c - 1.0);
    best = std::min(best, std::exp(log_b + log_sum));
  }
  return best;
}

}  // namespace

int kronecker_chi(std::int64_t D, std::uint64_t n) {
  check_discriminant(D);
  return arith::kronecker(D, n);
}

int root_number(std::int64_t D) { return D < 0 ? -1 : 1; }

LiftTable LiftTable::delta(std::size_t precision) {
  return LiftTable(forms::ShimuraLiftOracle(precision).unitary_coefficients());
}

const char* to_string(Kernel k) { return k == Kernel::incomplete_gamma ? "incomplete_gamma" : "gaussian"; }

double incomplete_gamma_kernel(double y) {
  const double x = kTwoPi * y;
  if (x <= 0.0) return 1.0;
  if (x > 700.0) return 0.0;
  // t = x + u; the integrand is below 1e-17 of Gamma(6) beyond u = 60.
  const auto r = quadrature::integrate(
      [x](double u) {
        const double t = x + u;
        return std::exp(5.0 * std::log(t) - t);
      },
      0.0, 60.0, kQuadTol * kGamma6);
  return r.value / kGamma6;
}

double incomplete_gamma_closed_form(double y) {
  const double x = kTwoPi * y;
  double term = 1.0, sum = 1.0;
  for (int j = 1; j < 6; ++j) {
    term *= x / j;
    sum += term;
  }
  return std::exp(-x) * sum;
}

GaussianKernel::GaussianKernel(double scale) : scale_(scale) {
  if (!(scale > 0.0)) throw ValidationError("Gaussian kernel scale must be positive");
  const auto& rule = quadrature::gauss_legendre(16);
  const double t_max = std::max(18.0, 6.0 * scale);
  const double width = 0.5;
  for (double a = 0.0; a < t_max; a += width) {
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double t = a + 0.5 * width * (1.0 + rule.nodes[i]);
      const cplx u(kContour, t);
      const cplx g = std::exp(log_gamma(6.0 + u) + u * u / (scale * scale)) / (kGamma6 * u);
      t_.push_back(t);
      weight_.push_back(0.5 * width * rule.weights[i]);
      g_re_.push_back(g.real());
      g_im_.push_back(g.imag());
    }
  }
}

double GaussianKernel::operator()(double y) const {
  const double log_x = std::log(kTwoPi * y);
  double sum = 0.0;
  for (std::size_t k = 0; k < t_.size(); ++k) {
    // Re[e^{-i t log x} g]
    const double phase = t_[k] * log_x;
    sum += weight_[k] * (std::cos(phase) * g_re_[k] + std::sin(phase) * g_im_[k]);
  }
  return std::exp(-kContour * log_x) * sum / std::numbers::pi;
}

std::uint64_t required_truncation(std::int64_t D) { return 30 * abs_d(D); }

CentralValue central_value(const LiftTable& lift, std::int64_t D, std::uint64_t T, const CentralOptions& options) {
  check_discriminant(D);
  if (!(options.balance > 0.0)) throw ValidationError("balance A must be positive");
  if (T < required_truncation(D)) {
    throw ValidationError("truncation " + std::to_string(T) + " too short for D = " + std::to_string(D) +
                          "; need T >= " + std::to_string(required_truncation(D)));
  }
  if (T >= lift.precision()) {
    throw PrecisionError("lift table has " + std::to_string(lift.precision()) + " coefficients; T = " +
                             std::to_string(T) + " requires precision " + std::to_string(T + 1),
                         lift.precision() == 0 ? 0 : lift.precision() - 1);
  }
  CentralValue out;
  out.D = D;
  out.truncation = T;
  out.root_number = root_number(D);
  out.forced_zero = out.root_number < 0;

  const double q = static_cast<double>(abs_d(D));
  const double A = options.balance;
  std::optional<GaussianKernel> gaussian;
  if (options.kernel == Kernel::gaussian) gaussian.emplace(options.gaussian_scale);
  auto V = [&](double y) { return gaussian ? (*gaussian)(y) : incomplete_gamma_kernel(y); };

  CompensatedSum first, second;
  double abs_weight = 0.0;
  for (std::uint64_t n = 1; n <= T; ++n) {
    const int chi = arith::kronecker(D, n);
    if (chi == 0 || lift[n] == 0.0) continue;
    const double base = chi * lift[n] / std::sqrt(static_cast<double>(n));
    abs_weight += std::fabs(base);
    first.add(base * V(n / (A * q)));
    second.add(base * V(n * A / q));
  }
  out.value = first.value() + out.root_number * second.value();

  double tail = 0.0;
  for (double Y : {A * q, q / A}) {
    tail += 2.0 * (options.kernel == Kernel::gaussian ? tail_gaussian(static_cast<double>(T), Y, options.gaussian_scale)
                                                      : tail_incomplete_gamma(static_cast<double>(T), Y));
  }
  out.error_estimate = tail + 2.0 * abs_weight * kQuadTol;
  return out;
}

std::vector<std::int64_t> positive_fundamental_discriminants(std::int64_t Dmax) {
  std::vector<std::int64_t> out;
  for (std::int64_t D = 1; D <= Dmax; ++D) {
    if (D == 1 || arith::is_fundamental_discriminant(D)) out.push_back(D);
  }
  return out;
}

std::size_t WaldspurgerScan::included() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.included; }));
}

WaldspurgerScan waldspurger_ratio_scan(const forms::HalfIntegralForm& form, const LiftTable& lift, std::int64_t Dmax,
                                       const WaldspurgerOptions& options) {
  if (form.ell() % 2 != 0) throw ValidationError("the scan needs even ell (positive discriminants)");
  if (Dmax < 1) throw ValidationError("Dmax must be at least 1");
  if (options.truncation_factor < 30) throw ValidationError("truncation factor must be at least 30");
  if (static_cast<std::uint64_t>(Dmax) >= form.precision()) {
    throw PrecisionError("form precision " + std::to_string(form.precision()) + " does not reach D = " +
                             std::to_string(Dmax),
                         form.precision() - 1);
  }
  const std::uint64_t need = 2 * options.truncation_factor * static_cast<std::uint64_t>(Dmax);
  if (need >= lift.precision()) {
    throw PrecisionError("lift table needs precision " + std::to_string(need + 1), lift.precision() - 1);
  }
  WaldspurgerScan scan;
  scan.d_exponent = options.d_exponent;
  scan.l_floor = options.l_floor;
  const auto discs = positive_fundamental_discriminants(Dmax);
  scan.rows.resize(discs.size());
  parallel_for(discs.size(), [&](std::size_t i) {
    WaldspurgerRow& row = scan.rows[i];
    row.D = discs[i];
    const std::uint64_t T = options.truncation_factor * static_cast<std::uint64_t>(row.D);
    row.a_f = form.normalized_coeff(static_cast<std::uint64_t>(row.D));
    row.a_f_sq = row.a_f * row.a_f;
    row.L = central_value(lift, row.D, T, options.central);
    row.L_doubled = central_value(lift, row.D, 2 * T, options.central).value;
    row.included = row.a_f != 0.0 && row.L.value >= options.l_floor;
    if (row.included) {
      const double scale = std::pow(static_cast<double>(row.D), options.d_exponent);
      row.ratio = row.a_f_sq * scale / row.L.value;
      row.ratio_doubled = row.a_f_sq * scale / row.L_doubled;
    }
  });
  bool first = true;
  for (const auto& row : scan.rows) {
    if (!row.included) continue;
    scan.min_ratio = first ? row.ratio : std::min(scan.min_ratio, row.ratio);
    scan.max_ratio = first ? row.ratio : std::max(scan.max_ratio, row.ratio);
    first = false;
  }
  return scan;
}

SiegelProbe siegel_probe(const LiftTable& lift, std::uint64_t Pmax, std::uint64_t truncation_factor,
                         const CentralOptions& options) {
  if (truncation_factor < 30) throw ValidationError("truncation factor must be at least 30");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 5; p <= Pmax; p += 4) {
    if (arith::is_prime(p)) primes.push_back(p);
  }
  if (!primes.empty() && truncation_factor * primes.back() >= lift.precision()) {
    throw PrecisionError("lift table needs precision " + std::to_string(truncation_factor * primes.back() + 1),
                         lift.precision() - 1);
  }
  SiegelProbe probe;
  probe.rows.resize(primes.size());
  parallel_for(primes.size(), [&](std::size_t i) {
    SiegelRow& row = probe.rows[i];
    row.p = primes[i];
    row.L = central_value(lift, static_cast<std::int64_t>(row.p), truncation_factor * row.p, options);
    const double magnitude = std::fabs(row.L.value);
    row.nonzero = magnitude > std::max(1e-8, 10.0 * row.L.error_estimate);
    for (std::size_t k = 0; k < kSiegelEpsilons.size(); ++k) {
      row.reference[k] = std::pow(static_cast<double>(row.p), -kSiegelEpsilons[k]);
      row.above[k] = magnitude >= row.reference[k];
    }
  });
  probe.all_above = {true, true, true};
  bool first = true;
  for (const auto& row : probe.rows) {
    if (!row.nonzero) continue;
    const double magnitude = std::fabs(row.L.value);
    if (first || magnitude < probe.min_nonzero) {
      probe.min_nonzero = magnitude;
      probe.argmin = row.p;
    }
    first = false;
    for (std::size_t k = 0; k < 3; ++k) probe.all_above[k] = probe.all_above[k] && row.above[k];
  }
  return probe;
}

}  // namespace kohnen::lcentral
