#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "kohnen/sieve.hpp"
#include "kohnen/vaughan.hpp"

// Desk-scale probes of the sign-change argument. Every operation reads the
// normalized coefficients a(n) from a table indexed by n (entry 0 unused), so
// the same code runs on the certified form and on synthetic sequences.
namespace kohnen::experiments {

using sieve::CountMode;
using sieve::FactorSieve;

enum class Character { none, principal_mod4, nonprincipal_mod4 };
enum class Smoothing { none, linear };

const char* to_string(Character c);
const char* to_string(Smoothing s);

/// Weight psi(n) of the selected character (1 for Character::none).
int character_value(Character c, std::uint64_t n);

struct SumSample {
  double x = 0.0;
  double value = 0.0;    // S(x)
  std::uint64_t count = 0;  // qualifying n <= x
};

/// S(x) = sum_{n <= x, n in P_r} w(n) a(n) with w = psi(n), times (1 - n/x)
/// under linear smoothing. Ascending summation in fixed blocks with
/// compensated accumulation; throws PrecisionError when max(xs) is beyond
/// the coefficient table or the sieve.
std::vector<SumSample> partial_sum_series(std::span<const double> a, const FactorSieve& sieve, unsigned r,
                                          CountMode mode, std::span<const double> xs,
                                          Character character = Character::none,
                                          Smoothing smoothing = Smoothing::none);

/// n log-spaced sample points from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

struct ExponentFit {
  double theta_hat = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // sum of squared residuals
  std::vector<std::pair<double, double>> points;  // (log x, log |S|)
  std::size_t skipped = 0;                        // samples with S = 0
};

/// Ordinary least squares of log|S| against log x. Needs two usable samples
/// with distinct x (ValidationError otherwise).
ExponentFit exponent_fit(std::span<const SumSample> samples);

struct IntervalOptions {
  double ratio = 0.9;        // intervals (X^{ratio^t}, X^{ratio^{t-1}}]
  double lower_cutoff = 1.0; // only n > lower_cutoff are scanned
};

struct IntervalFlag {
  double lo = 0.0;  // exclusive
  double hi = 0.0;  // inclusive
  bool has_change = false;  // both members of some change pair lie inside
};

struct SignChange {
  std::uint64_t n1;
  std::uint64_t n2;
  int sign1;
  int sign2;
};

struct SignChangeReport {
  std::uint64_t total_changes = 0;
  std::uint64_t scanned = 0;  // qualifying n with a(n) != 0
  std::vector<SignChange> changes;
  std::vector<IntervalFlag> intervals;
  std::uint64_t intervals_with_change() const;
};

/// Counts adjacent opposite-sign pairs among qualifying n <= X with a(n) != 0.
SignChangeReport sign_change_count(std::span<const double> a, const FactorSieve& sieve, unsigned r, CountMode mode,
                                   std::uint64_t X, const IntervalOptions& options = {});

/// Same scan restricted to primes.
SignChangeReport prime_sign_changes(std::span<const double> a, const FactorSieve& sieve, std::uint64_t X,
                                    const IntervalOptions& options = {});

/// Geometric intervals (X^{ratio^t}, X^{ratio^{t-1}}] for t = 1, 2, ... while
/// the interval still contains an integer above max(1, cutoff).
std::vector<IntervalFlag> geometric_intervals(double X, const IntervalOptions& options);

struct SecondMoment {
  double Y = 0.0;
  double delta = 0.0;
  double sum = 0.0;    // sum_{Y^delta < n < Y, n in P_r} a(n)^2
  double ratio = 0.0;  // sum / (Y / log Y)
  std::uint64_t count = 0;
};

SecondMoment second_moment(std::span<const double> a, const FactorSieve& sieve, unsigned r, CountMode mode,
                           double Y, double delta);

struct GrowthPoint {
  double x;
  double running_max;
};

struct GrowthReport {
  std::vector<GrowthPoint> samples;
  double exponent = 0.0;
  double threshold = 1.0 / 156.0;
  bool below_threshold = false;
};

/// Running maxima of |a(n)| for n <= X, sampled at log-spaced points, and the
/// least-squares growth exponent of log max against log x.
GrowthReport ramanujan_growth(std::span<const double> a, std::uint64_t X, std::size_t sample_count = 40);

struct SmoothedP {
  double total = 0.0;            // P(X)
  double p_r = 0.0;              // P_R(X) over Q < n <= X
  double sum_p_lm = 0.0;         // sum_L sum_M P_LM(X) over Q < n <= X
  double small_n = 0.0;          // contribution of n <= Q
  double reassembled() const { return p_r - sum_p_lm + small_n; }
  double relative_error() const;
};

/// P(X) = sum_{n <= X} (1 - n/X) psi0(n) c(n) Lambda_r(n) with psi0 the
/// principal character mod 4, together with the split through the dyadic
/// decomposition. c is the raw coefficient table. Throws AssertionFailure if
/// the split does not reassemble within 1e-6 relative.
SmoothedP smoothed_P(std::span<const double> c, const FactorSieve& sieve, std::uint64_t X,
                     const sieve::VaughanParams& params);

}  // namespace kohnen::experiments
