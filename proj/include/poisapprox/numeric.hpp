#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>

namespace poisapprox {

/// Neumaier's variant of Kahan compensated summation.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) : sum_(initial) {}

  CompensatedSum& operator+=(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }
  CompensatedSum& operator-=(double x) noexcept { return *this += -x; }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum s;
  for (double x : xs) s += x;
  return s.value();
}

/// log(n!) via lgamma; exact table for small n.
double log_factorial(std::int64_t n);

/// Standard normal CDF, accurate in both tails.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Adaptive Gauss-Kronrod (15-point) integral of f over [a, b].
/// `rel_tol` bounds the estimated relative error; `error_out` receives the
/// final error estimate when non-null.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double* error_out = nullptr,
                 unsigned max_depth = 30);

/// log(1 + u) - u, accurate for small |u|.
std::complex<double> log1p_minus(std::complex<double> u);

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

}  // namespace poisapprox
