#include "kohnen/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "kohnen/error.hpp"
#include "kohnen/lambda.hpp"
#include "kohnen/parallel.hpp"

namespace kohnen::experiments {

namespace {

constexpr std::uint64_t kBlock = 1 << 16;

std::uint64_t floor_index(double x) { return x < 1.0 ? 0 : static_cast<std::uint64_t>(std::floor(x)); }

void require_range(std::uint64_t max_n, std::span<const double> a, const FactorSieve& sieve) {
  if (a.empty() || max_n >= a.size()) {
    throw PrecisionError("argument " + std::to_string(max_n) + " beyond coefficient precision (max usable x = " +
                             std::to_string(a.empty() ? 0 : a.size() - 1) + ")",
                         a.empty() ? 0 : a.size() - 1);
  }
  if (max_n > sieve.limit()) {
    throw PrecisionError("argument " + std::to_string(max_n) + " beyond sieve limit", sieve.limit());
  }
}

// qualifies[n] for n <= max_n, filled block by block.
std::vector<std::uint8_t> qualifying_mask(std::uint64_t max_n, const FactorSieve& sieve, unsigned r, CountMode mode) {
  std::vector<std::uint8_t> mask(max_n + 1, 0);
  const std::size_t blocks = static_cast<std::size_t>(max_n / kBlock + 1);
  parallel_for(blocks, [&](std::size_t b) {
    const std::uint64_t lo = std::max<std::uint64_t>(2, b * kBlock);
    const std::uint64_t hi = std::min(max_n + 1, (b + 1) * kBlock);
    for (std::uint64_t n = lo; n < hi; ++n) mask[n] = sieve::is_almost_prime(n, r, mode, sieve) ? 1 : 0;
  });
  return mask;
}

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

SignChangeReport scan_signs(std::span<const double> a, std::uint64_t X, const std::vector<std::uint8_t>& mask,
                            const IntervalOptions& options) {
  SignChangeReport report;
  report.intervals = geometric_intervals(static_cast<double>(X), options);
  std::uint64_t prev_n = 0;
  int prev_sign = 0;
  for (std::uint64_t n = 2; n <= X; ++n) {
    if (!mask[n] || static_cast<double>(n) <= options.lower_cutoff) continue;
    const int s = sign_of(a[n]);
    if (s == 0) continue;
    ++report.scanned;
    if (prev_sign != 0 && s != prev_sign) {
      report.changes.push_back({prev_n, n, prev_sign, s});
      for (auto& iv : report.intervals) {
        if (static_cast<double>(prev_n) > iv.lo && static_cast<double>(n) <= iv.hi) iv.has_change = true;
      }
    }
    prev_n = n;
    prev_sign = s;
  }
  report.total_changes = report.changes.size();
  return report;
}

double fit_slope(const std::vector<std::pair<double, double>>& pts, double& intercept, double& residual) {
  const double count = static_cast<double>(pts.size());
  CompensatedSum sx, sy;
  for (const auto& [x, y] : pts) {
    sx.add(x);
    sy.add(y);
  }
  const double mx = sx.value() / count;
  const double my = sy.value() / count;
  CompensatedSum sxx, sxy;
  for (const auto& [x, y] : pts) {
    sxx.add((x - mx) * (x - mx));
    sxy.add((x - mx) * (y - my));
  }
  if (!(sxx.value() > 0.0)) throw ValidationError("exponent fit needs at least two distinct sample points");
  const double slope = sxy.value() / sxx.value();
  intercept = my - slope * mx;
  CompensatedSum res;
  for (const auto& [x, y] : pts) {
    const double e = y - (slope * x + intercept);
    res.add(e * e);
  }
  residual = res.value();
  return slope;
}

}  // namespace

const char* to_string(Character c) {
  switch (c) {
    case Character::none: return "none";
    case Character::principal_mod4: return "principal4";
    case Character::nonprincipal_mod4: return "chi4";
  }
  return "?";
}

const char* to_string(Smoothing s) { return s == Smoothing::none ? "none" : "linear"; }

int character_value(Character c, std::uint64_t n) {
  switch (c) {
    case Character::none: return 1;
    case Character::principal_mod4: return (n & 1) ? 1 : 0;
    case Character::nonprincipal_mod4: return (n % 4 == 1) ? 1 : ((n % 4 == 3) ? -1 : 0);
  }
  return 0;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {hi};
  std::vector<double> out(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<SumSample> partial_sum_series(std::span<const double> a, const FactorSieve& sieve, unsigned r,
                                          CountMode mode, std::span<const double> xs, Character character,
                                          Smoothing smoothing) {
  if (r == 0) throw ValidationError("r must be at least 1");
  std::vector<SumSample> out;
  if (xs.empty()) return out;
  const double x_max = *std::max_element(xs.begin(), xs.end());
  const std::uint64_t n_max = floor_index(x_max);
  require_range(n_max, a, sieve);
  const auto mask = qualifying_mask(n_max, sieve, r, mode);
  const std::size_t blocks = static_cast<std::size_t>(n_max / kBlock + 1);

  auto block_sum = [&](std::size_t b, std::uint64_t upto, double x, CompensatedSum& sum, std::uint64_t& count) {
    const std::uint64_t lo = b * kBlock;
    const std::uint64_t hi = std::min(upto + 1, (b + 1) * kBlock);
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n < hi; ++n) {
      if (!mask[n]) continue;
      ++count;
      const int w = character_value(character, n);
      if (w == 0 || a[n] == 0.0) continue;
      double term = w * a[n];
      if (smoothing == Smoothing::linear) term *= 1.0 - static_cast<double>(n) / x;
      sum.add(term);
    }
  };

  // Unsmoothed sums reuse complete per-block totals across sample points.
  std::vector<CompensatedSum> full(blocks);
  std::vector<std::uint64_t> full_count(blocks, 0);
  if (smoothing == Smoothing::none) {
    parallel_for(blocks, [&](std::size_t b) { block_sum(b, n_max, 0.0, full[b], full_count[b]); });
  }

  for (double x : xs) {
    SumSample sample;
    sample.x = x;
    const std::uint64_t upto = floor_index(x);
    if (upto >= 2) {
      const std::size_t last = static_cast<std::size_t>(upto / kBlock);
      CompensatedSum total;
      if (smoothing == Smoothing::none) {
        for (std::size_t b = 0; b < last; ++b) {
          total.add(full[b]);
          sample.count += full_count[b];
        }
        block_sum(last, upto, x, total, sample.count);
      } else {
        std::vector<CompensatedSum> parts(last + 1);
        std::vector<std::uint64_t> counts(last + 1, 0);
        parallel_for(last + 1, [&](std::size_t b) { block_sum(b, upto, x, parts[b], counts[b]); });
        for (std::size_t b = 0; b <= last; ++b) {
          total.add(parts[b]);
          sample.count += counts[b];
        }
      }
      sample.value = total.value();
    }
    out.push_back(sample);
  }
  return out;
}

ExponentFit exponent_fit(std::span<const SumSample> samples) {
  ExponentFit fit;
  for (const auto& s : samples) {
    if (s.value == 0.0 || !(s.x > 0.0)) {
      ++fit.skipped;
      continue;
    }
    fit.points.emplace_back(std::log(s.x), std::log(std::fabs(s.value)));
  }
  if (fit.points.empty()) throw ValidationError("exponent fit undefined: every sample is zero");
  if (fit.points.size() < 2) throw ValidationError("exponent fit needs at least two nonzero samples");
  fit.theta_hat = fit_slope(fit.points, fit.intercept, fit.residual);
  return fit;
}

std::uint64_t SignChangeReport::intervals_with_change() const {
  return static_cast<std::uint64_t>(
      std::count_if(intervals.begin(), intervals.end(), [](const IntervalFlag& f) { return f.has_change; }));
}

std::vector<IntervalFlag> geometric_intervals(double X, const IntervalOptions& options) {
  if (!(options.ratio > 0.0 && options.ratio < 1.0)) throw ValidationError("interval ratio must lie in (0, 1)");
  std::vector<IntervalFlag> out;
  if (!(X >= 2.0)) return out;
  const double log_x = std::log(X);
  const double floor_value = std::max(1.0, options.lower_cutoff);
  double exponent = 1.0;  // ratio^{t-1}
  for (;;) {
    const double hi = std::exp(log_x * exponent);
    const double lo = std::exp(log_x * exponent * options.ratio);
    if (hi < 2.0 || hi <= floor_value) break;
    out.push_back({lo, (exponent == 1.0) ? X : hi, false});
    exponent *= options.ratio;
  }
  return out;
}

SignChangeReport sign_change_count(std::span<const double> a, const FactorSieve& sieve, unsigned r, CountMode mode,
                                   std::uint64_t X, const IntervalOptions& options) {
  if (r == 0) throw ValidationError("r must be at least 1");
  if (X < 2) return {};
  require_range(X, a, sieve);
  return scan_signs(a, X, qualifying_mask(X, sieve, r, mode), options);
}

SignChangeReport prime_sign_changes(std::span<const double> a, const FactorSieve& sieve, std::uint64_t X,
                                    const IntervalOptions& options) {
  if (X < 2) return {};
  require_range(X, a, sieve);
  std::vector<std::uint8_t> mask(X + 1, 0);
  for (std::uint64_t n = 2; n <= X; ++n) mask[n] = sieve.is_prime(n) ? 1 : 0;
  return scan_signs(a, X, mask, options);
}

SecondMoment second_moment(std::span<const double> a, const FactorSieve& sieve, unsigned r, CountMode mode,
                           double Y, double delta) {
  if (r == 0) throw ValidationError("r must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0, 1)");
  if (!(Y > 1.0)) throw ValidationError("Y must exceed 1");
  SecondMoment out;
  out.Y = Y;
  out.delta = delta;
  const double lower = std::pow(Y, delta);
  // n < Y strictly
  const std::uint64_t hi = static_cast<std::uint64_t>(std::ceil(Y)) - 1;
  if (hi >= 2) {
    require_range(hi, a, sieve);
    const auto mask = qualifying_mask(hi, sieve, r, mode);
    CompensatedSum sum;
    for (std::uint64_t n = 2; n <= hi; ++n) {
      if (!mask[n] || static_cast<double>(n) <= lower) continue;
      ++out.count;
      sum.add(a[n] * a[n]);
    }
    out.sum = sum.value();
  }
  out.ratio = out.sum / (Y / std::log(Y));
  return out;
}

GrowthReport ramanujan_growth(std::span<const double> a, std::uint64_t X, std::size_t sample_count) {
  if (X < 2) throw ValidationError("growth probe needs X >= 2");
  if (X >= a.size()) throw PrecisionError("growth probe beyond coefficient precision", a.empty() ? 0 : a.size() - 1);
  GrowthReport report;
  std::vector<std::uint64_t> points;
  for (double x : log_spaced(2.0, static_cast<double>(X), std::max<std::size_t>(sample_count, 2))) {
    const std::uint64_t n = floor_index(x);
    if (points.empty() || n > points.back()) points.push_back(n);
  }
  double running = 0.0;
  std::size_t next = 0;
  std::vector<std::pair<double, double>> fit_points;
  for (std::uint64_t n = 1; n <= X && next < points.size(); ++n) {
    running = std::max(running, std::fabs(a[n]));
    if (n == points[next]) {
      report.samples.push_back({static_cast<double>(n), running});
      if (running > 0.0) fit_points.emplace_back(std::log(static_cast<double>(n)), std::log(running));
      ++next;
    }
  }
  if (fit_points.size() >= 2) {
    double intercept = 0.0, residual = 0.0;
    report.exponent = fit_slope(fit_points, intercept, residual);
  }
  report.below_threshold = report.exponent < report.threshold;
  return report;
}

double SmoothedP::relative_error() const {
  const double scale = std::max(std::fabs(total), 1e-300);
  return std::fabs(reassembled() - total) / scale;
}

SmoothedP smoothed_P(std::span<const double> c, const FactorSieve& sieve, std::uint64_t X,
                     const sieve::VaughanParams& params) {
  if (X < 1) throw ValidationError("X must be positive");
  require_range(X, c, sieve);
  if (static_cast<double>(X) > params.Q * params.R) {
    throw ValidationError("smoothed sum needs X <= QR for the two-term decomposition");
  }
  const auto lambda = sieve::lambda_r_table(params.r, X, sieve);
  const double x = static_cast<double>(X);
  auto weight = [&](std::uint64_t n) { return (1.0 - static_cast<double>(n) / x) * character_value(Character::principal_mod4, n); };

  SmoothedP out;
  CompensatedSum total, small;
  std::vector<std::uint64_t> large;
  for (std::uint64_t n = 1; n <= X; ++n) {
    const double w = weight(n);
    if (w == 0.0 || c[n] == 0.0) continue;
    const double term = w * c[n] * lambda[n];
    total.add(term);
    if (static_cast<double>(n) <= params.Q) {
      small.add(term);
    } else {
      large.push_back(n);
    }
  }
  std::vector<double> pr(large.size()), plm(large.size());
  parallel_for(large.size(), [&](std::size_t i) {
    const std::uint64_t n = large[i];
    const auto d = sieve::dyadic_decomposition(sieve.factorize(n), params);
    CompensatedSum cells;
    for (double v : d.grid) cells.add(v);
    const double wc = weight(n) * c[n];
    pr[i] = wc * d.lambda_star_r;
    plm[i] = wc * cells.value();
  });
  CompensatedSum p_r, p_lm;
  for (std::size_t i = 0; i < large.size(); ++i) {
    p_r.add(pr[i]);
    p_lm.add(plm[i]);
  }
  out.total = total.value();
  out.small_n = small.value();
  out.p_r = p_r.value();
  out.sum_p_lm = p_lm.value();
  if (out.relative_error() > 1e-6) {
    throw AssertionFailure("smoothed sum split does not reassemble (relative error " +
                           std::to_string(out.relative_error()) + ")");
  }
  return out;
}

}  // namespace kohnen::experiments
