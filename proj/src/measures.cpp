#include "poisapprox/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "poisapprox/charlier.hpp"
#include "poisapprox/errors.hpp"
#include "poisapprox/numeric.hpp"

namespace poisapprox {

namespace {

constexpr double kSignedCut = 1e-18;
constexpr int kQuietRun = 5;
constexpr double kChi2Cut = 1e-24;
constexpr double kRescale = 1e200;

/// Values v_m * exp(log_scale_m); the recurrence runs on v with periodic
/// rescaling so neither q_0 underflow nor growth overflows.
struct ScaledSequence {
  std::vector<double> mantissa;
  std::vector<double> log_scale;

  double value(std::size_t m) const { return mantissa[m] == 0.0 ? 0.0 : mantissa[m] * std::exp(log_scale[m]); }
};

/// P2 recurrence over m = 0..m_max.
ScaledSequence p2_recurrence(double lambda, double lambda2, std::int64_t m_max) {
  ScaledSequence s;
  const auto len = static_cast<std::size_t>(m_max) + 1;
  s.mantissa.resize(len);
  s.log_scale.resize(len);
  const double a = lambda + lambda2;
  double prev2 = 0.0;
  double prev1 = 1.0;
  double scale = -lambda - 0.5 * lambda2;
  s.mantissa[0] = prev1;
  s.log_scale[0] = scale;
  for (std::size_t m = 1; m < len; ++m) {
    double cur = (a * prev1 - lambda2 * prev2) / static_cast<double>(m);
    if (std::fabs(cur) > kRescale) {
      cur /= kRescale;
      prev1 /= kRescale;
      scale += std::log(kRescale);
    }
    s.mantissa[m] = cur;
    s.log_scale[m] = scale;
    prev2 = prev1;
    prev1 = cur;
  }
  return s;
}

/// Hermite closed form e^{-lambda - lambda2/2} lambda2^{m/2} He_m(x) / m!,
/// x = (lambda + lambda2)/sqrt(lambda2), via a rescaled He recurrence.
ScaledSequence p2_hermite(double lambda, double lambda2, std::int64_t m_max) {
  ScaledSequence s;
  const auto len = static_cast<std::size_t>(m_max) + 1;
  s.mantissa.resize(len);
  s.log_scale.resize(len);
  const double root = std::sqrt(lambda2);
  const double x = (lambda + lambda2) / root;
  const double base = -lambda - 0.5 * lambda2;
  const double log_root = std::log(root);
  double he_prev = 0.0;  // He_{-1} placeholder
  double he = 1.0;       // He_0
  double he_scale = 0.0;
  for (std::size_t m = 0; m < len; ++m) {
    if (m > 0) {
      double next = x * he - static_cast<double>(m - 1) * he_prev;
      he_prev = he;
      he = next;
      if (std::fabs(he) > kRescale) {
        he /= kRescale;
        he_prev /= kRescale;
        he_scale += std::log(kRescale);
      }
    }
    s.mantissa[m] = he;
    s.log_scale[m] = base + static_cast<double>(m) * log_root - log_factorial(static_cast<std::int64_t>(m)) + he_scale;
  }
  return s;
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  if (scale < 1e-300) return 0.0;
  return std::fabs(a - b) / scale;
}

/// Trims leading entries of a support starting at 0 while |value| < cut,
/// keeping kQuietRun guard entries.
std::int64_t quiet_low_end(const std::vector<double>& v) {
  std::int64_t first = 0;
  while (first < static_cast<std::int64_t>(v.size()) && std::fabs(v[static_cast<std::size_t>(first)]) < kSignedCut) {
    ++first;
  }
  return std::max<std::int64_t>(0, first - kQuietRun);
}

SignedPmf trim_to(const std::vector<double>& full, std::int64_t lo, std::int64_t hi, SignedVariant variant) {
  SignedPmf out;
  out.variant = variant;
  out.offset = lo;
  out.values.assign(full.begin() + lo, full.begin() + hi + 1);
  return out;
}

}  // namespace

double hermite_poly(int m, double x) {
  if (m < 0) throw DomainError("Hermite degree must be nonnegative");
  double prev = 1.0;
  if (m == 0) return prev;
  double cur = x;
  for (int k = 1; k < m; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<HermiteEval> hermite_table(int m_max, double x) {
  if (m_max < 0) throw DomainError("Hermite degree must be nonnegative");
  std::vector<HermiteEval> out;
  out.reserve(static_cast<std::size_t>(m_max) + 1);
  out.push_back({0, x, 1.0});
  if (m_max >= 1) out.push_back({1, x, x});
  for (int k = 1; k < m_max; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    out.push_back({k + 1, x, x * out[kk].value - k * out[kk - 1].value});
  }
  return out;
}

double p2_hermite_disagreement(double lambda, double lambda2, std::int64_t m_max) {
  if (!(lambda > 0.0)) throw DomainError("P2 requires lambda > 0");
  if (lambda2 <= 0.0) return 0.0;
  const auto rec = p2_recurrence(lambda, lambda2, m_max);
  const auto her = p2_hermite(lambda, lambda2, m_max);
  double worst = 0.0;
  for (std::size_t m = 0; m < rec.mantissa.size(); ++m) {
    worst = std::max(worst, relative_gap(rec.value(m), her.value(m)));
  }
  return worst;
}

SignedPmf signed_measure_pmf(double lambda, double lambda2, SignedVariant variant,
                             std::optional<SupportRange> support_hint) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("signed measures require lambda > 0");
  if (!(lambda2 >= 0.0)) throw DomainError("signed measures require lambda2 >= 0");
  if (variant == SignedVariant::custom) throw UsageError("signed_measure_pmf supports variants p1 and p2");

  const auto mode = static_cast<std::int64_t>(std::floor(lambda));
  std::int64_t hint_hi = support_hint ? support_hint->hi : 0;

  if (variant == SignedVariant::p1) {
    // Walk outwards from the Poisson mode until kQuietRun consecutive
    // entries fall below the cut on each side.
    const auto value_at = [&](std::int64_t m) {
      const double w = std::exp(static_cast<double>(m) * std::log(lambda) - lambda - log_factorial(m));
      return w * (1.0 - 0.5 * lambda2 * charlier_eval(2, lambda, m));
    };
    std::int64_t lo = mode;
    for (int quiet = 0; lo > 0 && quiet < kQuietRun;) {
      --lo;
      quiet = std::fabs(value_at(lo)) < kSignedCut ? quiet + 1 : 0;
    }
    std::int64_t hi = mode;
    for (int quiet = 0; quiet < kQuietRun;) {
      ++hi;
      quiet = std::fabs(value_at(hi)) < kSignedCut ? quiet + 1 : 0;
    }
    if (support_hint) {
      lo = std::min(lo, std::max<std::int64_t>(0, support_hint->lo));
      hi = std::max(hi, hint_hi);
    }
    SignedPmf out;
    out.variant = variant;
    out.offset = lo;
    out.values.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t m = lo; m <= hi; ++m) out.values.push_back(value_at(m));
    return out;
  }

  // P2: run the recurrence from 0 past the mode until quiet. P2 decays more
  // slowly than the Poisson weight, so quiet also requires v^2 / pois small.
  const double log_lambda = std::log(lambda);
  const auto quiet_p2 = [&](double v, std::int64_t m) {
    if (v == 0.0) return true;
    const double log_pois = static_cast<double>(m) * log_lambda - lambda - log_factorial(m);
    return std::fabs(v) < kSignedCut && 2.0 * std::log(std::fabs(v)) - log_pois < std::log(kChi2Cut);
  };
  std::int64_t m_max = std::max<std::int64_t>(mode + 16, hint_hi);
  std::vector<double> full;
  std::int64_t hi = 0;
  for (;;) {
    const auto rec = p2_recurrence(lambda, lambda2, m_max);
    full.resize(rec.mantissa.size());
    for (std::size_t m = 0; m < full.size(); ++m) full[m] = rec.value(m);
    // Find the quiet run above the mode.
    int quiet = 0;
    hi = -1;
    for (auto m = static_cast<std::size_t>(mode); m < full.size(); ++m) {
      quiet = quiet_p2(full[m], static_cast<std::int64_t>(m)) ? quiet + 1 : 0;
      if (quiet == kQuietRun) {
        hi = static_cast<std::int64_t>(m);
        break;
      }
    }
    if (hi >= 0) break;
    m_max *= 2;
  }
  hi = std::max(hi, hint_hi);

  if (lambda2 > 0.0) {
    const std::int64_t check_hi =
        std::min(hi, static_cast<std::int64_t>(std::floor(lambda + 10.0 * std::sqrt(lambda))));
    const auto her = p2_hermite(lambda, lambda2, check_hi);
    for (std::int64_t m = 0; m <= check_hi; ++m) {
      const auto mm = static_cast<std::size_t>(m);
      if (relative_gap(full[mm], her.value(mm)) > 1e-8) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "P2 recurrence " << full[mm] << " vs Hermite form " << her.value(mm) << " at m = " << m;
        throw ConsistencyError(msg.str());
      }
    }
  }

  std::int64_t lo = quiet_low_end(full);
  if (support_hint) lo = std::min(lo, std::max<std::int64_t>(0, support_hint->lo));
  return trim_to(full, lo, hi, variant);
}

SignedPmf signed_measure_pmf(const BernoulliParams& params, SignedVariant variant,
                             std::optional<SupportRange> support_hint) {
  return signed_measure_pmf(params.lambda, params.lambda2, variant, support_hint);
}

}  // namespace poisapprox
