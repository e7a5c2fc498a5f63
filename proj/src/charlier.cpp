#include "poisapprox/charlier.hpp"

#include <cmath>
#include <sstream>

#include "poisapprox/core.hpp"
#include "poisapprox/errors.hpp"
#include "poisapprox/numeric.hpp"

namespace poisapprox {

namespace {
void require_positive_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("Charlier polynomials require lambda > 0");
  }
}
}  // namespace

double c1() { return std::expm1(0.5); }

double c2() {
  static const double value = lemma_constant(2);
  return value;
}

std::vector<double> charlier_row(int k_max, double lambda, std::int64_t n) {
  require_positive_lambda(lambda);
  if (k_max < 0) throw DomainError("Charlier degree must be nonnegative");
  const auto x = static_cast<double>(n);
  std::vector<double> row(static_cast<std::size_t>(k_max) + 1);
  row[0] = 1.0;
  if (k_max >= 1) row[1] = (x - lambda) / lambda;
  if (k_max >= 2) row[2] = (x * x - (2.0 * lambda + 1.0) * x + lambda * lambda) / (lambda * lambda);
  for (int k = 2; k < k_max; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    row[kk + 1] = ((x - lambda - k) * row[kk] - k * row[kk - 1]) / lambda;
  }
  return row;
}

double charlier_eval(int k, double lambda, std::int64_t n) {
  if (k < 0) throw DomainError("Charlier degree must be nonnegative");
  return charlier_row(k, lambda, n).back();
}

double charlier_explicit(int k, double lambda, std::int64_t n) {
  require_positive_lambda(lambda);
  const auto x = static_cast<double>(n);
  // sum_j binom(k,j) (-1)^{k-j} x^(j falling) / lambda^j
  double sum = 0.0;
  double binom = 1.0;
  double falling = 1.0;
  double lam_pow = 1.0;
  for (int j = 0; j <= k; ++j) {
    const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binom * falling / lam_pow;
    binom = binom * (k - j) / (j + 1);
    falling *= (x - j);
    lam_pow *= lambda;
  }
  return sum;
}

double lemma_constant(int m) {
  if (m < 1) throw DomainError("lemma constant index m must be >= 1");
  if (m == 1) return c1();
  const auto integrand = [m](double t) {
    return std::exp(0.5 * t * t) * std::pow(1.0 - t, m - 1) * (m - 1 + t);
  };
  return integrate(integrand, 0.0, 1.0, 1e-14) / std::exp(log_factorial(m));
}

double charlier2_half_abs_sum_closed(double lambda) {
  require_positive_lambda(lambda);
  const double root = std::sqrt(lambda + 0.25);
  const auto m_plus = static_cast<std::int64_t>(std::floor(lambda + 0.5 + root));
  const auto m_minus = static_cast<std::int64_t>(std::floor(lambda + 0.5 - root));
  const double log_lambda = std::log(lambda);
  const auto term = [&](std::int64_t m) {
    // e^{-lambda} lambda^{m-1} / m!
    return std::exp(-lambda + static_cast<double>(m - 1) * log_lambda - log_factorial(m));
  };
  const double plus = term(m_plus) * (static_cast<double>(m_plus) - lambda);
  const double minus = term(m_minus) * (lambda - static_cast<double>(m_minus));
  return plus + minus;
}

AbsMoment charlier_abs_moment(int k, double lambda) {
  require_positive_lambda(lambda);
  if (k < 1) throw DomainError("absolute Charlier moment requires k >= 1");
  const auto m_max = static_cast<std::int64_t>(std::ceil(lambda + 20.0 * std::sqrt(lambda) + 20.0));
  const Pmf pois = poisson_pmf(lambda, SupportRange{0, m_max});

  CompensatedSum sum;
  for (std::int64_t m = 0; m <= m_max; ++m) {
    const double w = pois.at(m);
    if (w == 0.0) continue;
    sum += w * std::fabs(charlier_eval(k, lambda, m));
  }
  CompensatedSum tail;
  for (std::int64_t m = m_max + 1; m <= pois.hi(); ++m) tail += pois.at(m);
  // Truncation of poisson_pmf beyond its support contributes < 1e-17 more.
  const double tail_mass = tail.value() + kPoissonTruncation;
  const double norm = std::sqrt(std::exp(log_factorial(k) - k * std::log(lambda)));

  AbsMoment out;
  out.k = k;
  out.lambda = lambda;
  out.value = 0.5 * sum.value();
  out.tail_bound = std::sqrt(tail_mass) * norm;
  if (k == 2) {
    const double closed = charlier2_half_abs_sum_closed(lambda);
    out.closed_form = closed;
    if (std::fabs(closed - out.value) > 1e-12) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "C_2 half absolute sum: closed form " << closed << " vs direct " << out.value
          << " at lambda = " << lambda;
      throw ConsistencyError(msg.str());
    }
  }
  return out;
}

double truncation_tail_bound(int N, double lambda, double K, double H, double eps,
                             TruncationForm form) {
  if (N < 0) throw DomainError("truncation order N must be nonnegative");
  if (!(K > 0.0) || !(H > 0.0) || !(eps > 0.0)) {
    throw DomainError("K, H and eps must be positive");
  }
  const double scale = (2.0 + eps) * H;
  if (lambda < scale) {
    std::ostringstream msg;
    msg << "truncation bound requires lambda >= (2+eps)H = " << scale << ", got " << lambda;
    throw PreconditionError(msg.str());
  }
  const double ratio = scale / lambda;
  const double factor = (2.0 + eps) / eps;
  switch (form) {
    case TruncationForm::l2:
      return K * K * factor * std::pow(ratio, N + 1);
    case TruncationForm::l1:
      return K * std::sqrt(factor) * std::pow(ratio, 0.5 * (N + 1));
    case TruncationForm::pointwise:
      return K * factor / std::sqrt(lambda) * std::pow(ratio, 0.5 * (N + 1));
  }
  throw UsageError("unknown truncation form");
}

}  // namespace poisapprox
