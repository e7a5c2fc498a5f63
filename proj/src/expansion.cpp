#include "poisapprox/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "poisapprox/charlier.hpp"
#include "poisapprox/errors.hpp"
#include "poisapprox/measures.hpp"
#include "poisapprox/numeric.hpp"

namespace poisapprox {

namespace {

using cplx = std::complex<double>;

/// Evaluates the variant function g(1 + w) for complex w.
class VariantFunction {
 public:
  VariantFunction(const BernoulliParams& params, ExpansionVariant variant)
      : variant_(variant), lambda2_(params.lambda2) {
    std::map<double, int> counts;
    for (double p : params.probs) {
      if (p > 0.0) ++counts[p];
    }
    groups_.assign(counts.begin(), counts.end());
  }

  cplx operator()(cplx w) const {
    cplx log_f = 0.0;
    bool zero = false;
    for (const auto& [p, c] : groups_) {
      const cplx u = p * w;
      if (u == cplx(-1.0, 0.0)) {
        zero = true;
        break;
      }
      log_f += static_cast<double>(c) * log1p_minus(u);
    }
    const cplx f = zero ? cplx(0.0) : std::exp(log_f);
    switch (variant_) {
      case ExpansionVariant::full_f:
        return f;
      case ExpansionVariant::F_minus_poisson:
        return f - 1.0;
      case ExpansionVariant::F_minus_P1:
        return f - 1.0 + 0.5 * lambda2_ * w * w;
      case ExpansionVariant::F_minus_P2:
        return f - std::exp(-0.5 * lambda2_ * w * w);
    }
    return f;
  }

 private:
  ExpansionVariant variant_;
  double lambda2_;
  std::vector<std::pair<double, int>> groups_;
};

double coefficient_radius(double lambda2, int j) {
  return std::sqrt(std::max(j, 1) / std::max(lambda2, 1e-6));
}

std::size_t coefficient_points(int j) {
  return next_pow2(std::max<std::size_t>(128, 8 * static_cast<std::size_t>(j + 1)));
}

/// a_j by the M-point trapezoidal rule on |w| = r.
double quadrature_coefficient(const VariantFunction& g, int j, double r, std::size_t M) {
  cplx acc = 0.0;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(M);
  for (std::size_t k = 0; k < M; ++k) {
    const double t = step * static_cast<double>(k);
    const cplx w = std::polar(r, t);
    acc += g(w) * std::polar(1.0, -static_cast<double>(j) * t);
  }
  const double mean = acc.real() / static_cast<double>(M);
  if (mean == 0.0) return 0.0;
  return mean * std::exp(-static_cast<double>(j) * std::log(r));
}

/// Coefficients of the subtracted series at order j.
double subtrahend(ExpansionVariant variant, double lambda2, int j) {
  switch (variant) {
    case ExpansionVariant::full_f:
      return 0.0;
    case ExpansionVariant::F_minus_poisson:
      return j == 0 ? 1.0 : 0.0;
    case ExpansionVariant::F_minus_P1:
      return j == 0 ? 1.0 : (j == 2 ? -0.5 * lambda2 : 0.0);
    case ExpansionVariant::F_minus_P2: {
      if (j % 2 != 0) return 0.0;
      const int k = j / 2;
      const double mag = std::exp(k * std::log(0.5 * lambda2) - log_factorial(k));
      return (k % 2 == 0 ? 1.0 : -1.0) * (lambda2 == 0.0 ? (k == 0 ? 1.0 : 0.0) : mag);
    }
  }
  return 0.0;
}

/// Elementary symmetric polynomials e_0..e_K of the probabilities.
std::vector<double> elementary_symmetric(const std::vector<double>& probs, int K) {
  std::vector<double> e(static_cast<std::size_t>(K) + 1, 0.0);
  e[0] = 1.0;
  int filled = 0;
  for (double p : probs) {
    filled = std::min(filled + 1, K);
    for (int k = filled; k >= 1; --k) {
      e[static_cast<std::size_t>(k)] += p * e[static_cast<std::size_t>(k - 1)];
    }
  }
  return e;
}

/// sum_{i > j} E_i^2 i! / lambda^i, which depends on theta only.
double envelope_series_tail(double theta, int j) {
  if (theta <= 0.0) return 0.0;
  CompensatedSum s;
  for (int i = j + 1; i < j + 100000; ++i) {
    const double li = static_cast<double>(i);
    const double term = std::exp(li + li * std::log(theta) - li * std::log(li) + log_factorial(i));
    s += term;
    if (li > 2.0 / std::max(1e-300, 1.0 - theta) && term < 1e-20 * s.value()) break;
  }
  return s.value();
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

void require_expandable(const BernoulliParams& params) {
  if (!(params.lambda > 0.0)) throw DomainError("Charlier expansion requires lambda > 0");
}

}  // namespace

double shorgin_envelope(double lambda2, int j) {
  if (j <= 0) return 1.0;
  if (lambda2 <= 0.0) return 0.0;
  return std::exp(0.5 * j * std::log(std::numbers::e * lambda2 / j));
}

ExpansionCoefficients charlier_coefficients(const BernoulliParams& params, ExpansionVariant variant, int N,
                                            CoefficientMethod method) {
  require_expandable(params);
  if (N < 0 || N > kMaxExpansionOrder) {
    throw DomainError("expansion order must lie in [0, " + std::to_string(kMaxExpansionOrder) + "]");
  }
  const double lambda = params.lambda;
  const double lambda2 = params.lambda2;
  const auto len = static_cast<std::size_t>(N) + 1;

  ExpansionCoefficients out;
  out.variant = variant;
  out.lambda = lambda;
  out.method = method;

  // Condition estimate of the convolution route.
  const auto e = elementary_symmetric(params.probs, N);
  const double log_lambda = std::log(lambda);
  std::vector<double> abs_sums(len, 0.0);
  double kappa = 1.0;
  for (int j = 0; j <= N; ++j) {
    CompensatedSum s;
    for (int k = 0; k <= j; ++k) {
      const double ek = e[static_cast<std::size_t>(k)];
      if (ek == 0.0) continue;
      s += ek * std::exp((j - k) * log_lambda - log_factorial(j - k));
    }
    abs_sums[static_cast<std::size_t>(j)] = s.value();
    if (j >= 2) {
      const double env = shorgin_envelope(lambda2, j);
      const double ratio = env > 0.0 ? s.value() / env : std::numeric_limits<double>::infinity();
      if (!(ratio <= kappa)) kappa = std::isnan(ratio) ? std::numeric_limits<double>::infinity() : ratio;
    }
  }
  out.condition_estimate = kappa;
  const bool trusted = kappa <= kMaxCondition;

  if (trusted) {
    out.convolution.resize(len);
    for (int j = 0; j <= N; ++j) {
      CompensatedSum s;
      for (int k = 0; k <= j; ++k) {
        const double ek = e[static_cast<std::size_t>(k)];
        if (ek == 0.0) continue;
        const int i = j - k;
        const double t = std::exp(i * log_lambda - log_factorial(i));
        s += (i % 2 == 0 ? ek : -ek) * t;
      }
      double a = s.value();
      if (j == 1) a = 0.0;  // e_1 == lambda
      out.convolution[static_cast<std::size_t>(j)] = a - subtrahend(variant, lambda2, j);
    }
  }

  const VariantFunction g(params, variant);
  out.quadrature.resize(len);
  out.radii.resize(len);
  for (int j = 0; j <= N; ++j) {
    const double r = coefficient_radius(lambda2, j);
    out.radii[static_cast<std::size_t>(j)] = r;
    out.quadrature[static_cast<std::size_t>(j)] = quadrature_coefficient(g, j, r, coefficient_points(j));
  }

  if (trusted) {
    out.disagreement.resize(len);
    out.tolerance.resize(len);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t j = 0; j < len; ++j) {
      const double scale = std::max(1.0, shorgin_envelope(lambda2, static_cast<int>(j)));
      out.tolerance[j] = 1e-9 * scale + 64.0 * eps * abs_sums[j];
      out.disagreement[j] = std::fabs(out.convolution[j] - out.quadrature[j]);
      if (out.disagreement[j] > out.tolerance[j]) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "coefficient a_" << j << ": convolution " << out.convolution[j] << " vs quadrature "
            << out.quadrature[j];
        throw ConsistencyError(msg.str());
      }
    }
  }

  if (method == CoefficientMethod::symmetric_convolution) {
    if (!trusted) {
      std::ostringstream msg;
      msg.precision(3);
      msg << "convolution condition estimate " << kappa << " exceeds 1e12; reduce N or lambda, or use circle_quadrature";
      throw PrecisionError(msg.str());
    }
    out.coeffs = out.convolution;
  } else {
    out.coeffs = out.quadrature;
  }
  return out;
}

double radial_energy(const BernoulliParams& params, ExpansionVariant variant, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("radius must be a finite nonnegative number");
  const VariantFunction g(params, variant);
  if (r == 0.0) return std::norm(g(0.0));
  std::size_t M = 32;
  CompensatedSum acc;
  const double base = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < M; ++k) acc += std::norm(g(std::polar(r, base * k / M)));
  double prev = acc.value() / static_cast<double>(M);
  for (; M < (std::size_t{1} << 22); M *= 2) {
    // New midpoints at odd indices of the doubled grid.
    for (std::size_t k = 0; k < M; ++k) {
      acc += std::norm(g(std::polar(r, base * (2 * k + 1) / (2 * M))));
    }
    const double cur = acc.value() / static_cast<double>(2 * M);
    if (std::fabs(cur - prev) <= 1e-10 * std::fabs(cur) || (cur == 0.0 && prev == 0.0)) return cur;
    prev = cur;
  }
  throw PrecisionError("radial energy quadrature did not converge");
}

ParsevalReport parseval_triple(const BernoulliParams& params, ExpansionVariant variant) {
  if (!(params.lambda > 0.0)) throw ValidityError("Charlier-Parseval identity requires lambda > 0");
  if (!(params.theta < 1.0)) throw ValidityError("Charlier-Parseval identity requires theta < 1");
  const double lambda = params.lambda;
  const double lambda2 = params.lambda2;
  const double theta = params.theta;
  const double log_lambda = std::log(lambda);
  ParsevalReport rep;

  // Direct chi^2-type sum.
  {
    const Pmf pb = poisson_binomial_pmf(params);
    auto m_hi = static_cast<std::int64_t>(std::ceil(lambda + 20.0 * std::sqrt(lambda))) + params.n;
    SignedPmf p2;
    if (variant == ExpansionVariant::F_minus_P2) {
      p2 = signed_measure_pmf(lambda, lambda2, SignedVariant::p2, SupportRange{0, m_hi});
      m_hi = std::max(m_hi, p2.hi());
    }
    CompensatedSum s;
    for (std::int64_t m = 0; m <= m_hi; ++m) {
      const double log_pois = m * log_lambda - lambda - log_factorial(m);
      const double a_ratio = m <= params.n ? std::exp(pb.log_at(m) - log_pois) : 0.0;
      double ref_ratio = 0.0;
      switch (variant) {
        case ExpansionVariant::full_f:
          break;
        case ExpansionVariant::F_minus_poisson:
          ref_ratio = 1.0;
          break;
        case ExpansionVariant::F_minus_P1:
          ref_ratio = 1.0 - 0.5 * lambda2 * charlier_eval(2, lambda, m);
          break;
        case ExpansionVariant::F_minus_P2: {
          const double v = p2.at(m);
          ref_ratio = v == 0.0 ? 0.0 : std::copysign(std::exp(std::log(std::fabs(v)) - log_pois), v);
          break;
        }
      }
      const double d = a_ratio - ref_ratio;
      if (d != 0.0) s += std::exp(log_pois + 2.0 * std::log(std::fabs(d)));
    }
    rep.chi2_sum = s.value();
  }

  // Coefficient series with an envelope-based stopping rule.
  {
    const VariantFunction g(params, variant);
    const double mult = variant == ExpansionVariant::F_minus_P2 ? 4.0 : 1.0;
    CompensatedSum s;
    int j = 0;
    for (; j <= kMaxExpansionOrder; ++j) {
      const double a = quadrature_coefficient(g, j, coefficient_radius(lambda2, j), coefficient_points(j));
      if (a != 0.0) s += std::exp(2.0 * std::log(std::fabs(a)) + log_factorial(j) - j * log_lambda);
      if (j >= 4 && mult * envelope_series_tail(theta, j) <= 1e-14 * std::max(s.value(), 1e-300)) break;
    }
    rep.coeff_series = s.value();
    rep.terms_used = std::min(j, kMaxExpansionOrder) + 1;
  }

  // Outer integral of the radial energy.
  {
    const double beta = 1.0 - theta;
    const double C = variant == ExpansionVariant::F_minus_poisson ? c1()
                     : variant == ExpansionVariant::full_f   ? 0.0
                                                             : c1() + 0.5;
    const auto tail = [&](double R) {
      if (variant == ExpansionVariant::full_f) return std::exp(-beta * R) / beta;
      return C * C * theta * theta * std::exp(-beta * R) *
             (R * R / beta + 2.0 * R / (beta * beta) + 2.0 / (beta * beta * beta));
    };
    const double target = 1e-14 * std::max(rep.coeff_series, 1e-300);
    double hi = 1.0;
    while (tail(hi) > target && hi < 1e9) hi *= 2.0;
    double lo = hi / 2.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (tail(mid) > target ? lo : hi) = mid;
    }
    const double R = hi;
    rep.outer_cutoff = R;
    const auto integrand = [&](double r) {
      return radial_energy(params, variant, std::sqrt(r / lambda)) * std::exp(-r);
    };
    constexpr int panels = 8;
    CompensatedSum s;
    for (int k = 0; k < panels; ++k) {
      s += integrate(integrand, R * k / panels, R * (k + 1) / panels, 1e-12);
    }
    rep.quadrature_integral = s.value();
  }

  rep.max_rel_disagreement = std::max({relative_gap(rep.chi2_sum, rep.coeff_series),
                                       relative_gap(rep.chi2_sum, rep.quadrature_integral),
                                       relative_gap(rep.coeff_series, rep.quadrature_integral)});
  return rep;
}

double charlier_truncation_l1_error(const BernoulliParams& params, int N) {
  require_expandable(params);
  const auto coeffs =
      charlier_coefficients(params, ExpansionVariant::full_f, N, CoefficientMethod::circle_quadrature).coeffs;
  const Pmf pb = poisson_binomial_pmf(params);
  const double lambda = params.lambda;
  const auto m_hi = std::max<std::int64_t>(params.n, static_cast<std::int64_t>(std::ceil(lambda + 20.0 * std::sqrt(lambda))));
  CompensatedSum err;
  for (std::int64_t m = 0; m <= m_hi; ++m) {
    const auto row = charlier_row(N, lambda, m);
    CompensatedSum series;
    for (int j = 0; j <= N; ++j) series += coeffs[static_cast<std::size_t>(j)] * row[static_cast<std::size_t>(j)];
    const double pois = std::exp(m * std::log(lambda) - lambda - log_factorial(m));
    err += std::fabs(pb.at(m) - pois * series.value());
  }
  return err.value();
}

}  // namespace poisapprox
