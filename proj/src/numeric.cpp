#include "poisapprox/numeric.hpp"

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace poisapprox {

namespace {
constexpr int kFactorialTableSize = 171;

const std::array<double, kFactorialTableSize>& log_factorial_table() {
  static const auto table = [] {
    std::array<double, kFactorialTableSize> t{};
    long double acc = 0.0L;
    t[0] = 0.0;
    for (int i = 1; i < kFactorialTableSize; ++i) {
      acc += std::log(static_cast<long double>(i));
      t[i] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}
}  // namespace

double log_factorial(std::int64_t n) {
  if (n < 0) return INFINITY;
  if (n < kFactorialTableSize) return log_factorial_table()[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double* error_out, unsigned max_depth) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, rel_tol, &err);
  if (error_out != nullptr) *error_out = err;
  return v;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1U;
  return p;
}

std::complex<double> log1p_minus(std::complex<double> u) {
  if (std::abs(u) < 0.25) {
    std::complex<double> power = u * u;
    std::complex<double> sum = -0.5 * power;
    for (int k = 3; k < 80; ++k) {
      power *= u;
      const std::complex<double> term = (k % 2 == 1 ? 1.0 : -1.0) * power / static_cast<double>(k);
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::log(1.0 + u) - u;
}

}  // namespace poisapprox
