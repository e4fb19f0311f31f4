#pragma once

#include <cstddef>
#include <functional>

namespace kohnen {

// Worker cap shared by every parallel loop in the library. A value of 0
// means "use std::thread::hardware_concurrency()".
void set_max_threads(unsigned threads);
unsigned max_threads();

/// Runs body(i) for every i in [0, count), possibly concurrently.
///
/// Callers must write results into per-index slots and combine them in index
/// order afterwards; this keeps every result independent of the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Kahan-Babuska (Neumaier) compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.compensation_);
  }
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace kohnen
