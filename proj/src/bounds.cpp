#include "poisapprox/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "poisapprox/charlier.hpp"
#include "poisapprox/errors.hpp"
#include "poisapprox/metrics.hpp"
#include "poisapprox/numeric.hpp"

namespace poisapprox {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::numbers::sqrt3;
const double kSqrt6 = std::sqrt(6.0);
const double kSqrt15 = std::sqrt(15.0);
constexpr double kE = std::numbers::e;
constexpr double kPi = std::numbers::pi;

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view name, const std::pair<Enum, std::string_view> (&table)[N], std::string_view what) {
  std::string options;
  for (const auto& [value, label] : table) {
    if (label == name) return value;
    options += options.empty() ? "" : ", ";
    options += label;
  }
  throw UsageError("unknown " + std::string(what) + " '" + std::string(name) + "'; expected one of " + options);
}

template <typename Enum, std::size_t N>
std::string_view enum_label(Enum value, const std::pair<Enum, std::string_view> (&table)[N]) {
  for (const auto& [v, label] : table) {
    if (v == value) return label;
  }
  return "?";
}

const std::pair<BoundFamily, std::string_view> kFamilyNames[] = {{BoundFamily::first, "first"},
                                                                 {BoundFamily::second, "second"},
                                                                 {BoundFamily::signed_measure, "signed"},
                                                                 {BoundFamily::literature, "literature"},
                                                                 {BoundFamily::reference, "reference"}};
const std::pair<BoundKind, std::string_view> kKindNames[] = {
    {BoundKind::tv, "tv"},
    {BoundKind::chi2, "chi2"},
    {BoundKind::kl, "kl"},
    {BoundKind::wasserstein, "wasserstein"},
    {BoundKind::kolmogorov, "kolmogorov"},
    {BoundKind::point, "point"},
    {BoundKind::nonuniform_k, "nonuniform_k"},
    {BoundKind::nonuniform_p, "nonuniform_p"},
    {BoundKind::l1, "l1"},
    {BoundKind::chi2_root_gap, "chi2_root_gap"}};
const std::pair<BoundTarget, std::string_view> kTargetNames[] = {
    {BoundTarget::poisson, "poisson"}, {BoundTarget::p1, "p1"}, {BoundTarget::p2, "p2"}};
const std::pair<ReferenceName, std::string_view> kReferenceNames[] = {
    {ReferenceName::tv_small_theta, "tv_small_theta"}, {ReferenceName::chi2_leading, "chi2_leading"},
    {ReferenceName::p2_chi2_identity, "p2_chi2_identity"}, {ReferenceName::j_theta, "j_theta"},
    {ReferenceName::w_asymptotic, "w_asymptotic"},     {ReferenceName::p_asymptotic, "p_asymptotic"},
    {ReferenceName::k_small_theta, "k_small_theta"}};

bool is_nonuniform(BoundKind kind) { return kind == BoundKind::nonuniform_k || kind == BoundKind::nonuniform_p; }

double z_of(double lambda, std::int64_t m) { return tail_split(lambda, m).z_value; }

BoundTarget default_target(BoundFamily family, BoundKind kind) {
  switch (family) {
    case BoundFamily::second:
      return kind == BoundKind::tv ? BoundTarget::poisson : BoundTarget::p1;
    case BoundFamily::signed_measure:
      return kind == BoundKind::tv || kind == BoundKind::chi2_root_gap ? BoundTarget::poisson : BoundTarget::p2;
    default:
      return BoundTarget::poisson;
  }
}

std::string pair_listing(BoundFamily family) {
  std::string out;
  for (const auto& p : supported_pairs(family)) {
    out += out.empty() ? "" : ", ";
    out += std::string(to_string(p.kind)) + "/" + std::string(to_string(p.target));
  }
  return out;
}

double fourier_integral(const BernoulliParams& params, bool kolmogorov) {
  if (!(params.lambda > 0.0)) return 0.0;
  std::map<double, int> counts;
  for (double p : params.probs) {
    if (p > 0.0) ++counts[p];
  }
  const double lambda = params.lambda;
  const auto integrand = [&](double t) {
    if (t == 0.0) return 0.0;
    const std::complex<double> u = std::polar(1.0, t) - 1.0;
    std::complex<double> log_sum = 0.0;
    for (const auto& [p, c] : counts) log_sum += static_cast<double>(c) * log1p_minus(p * u);
    const double x = log_sum.real();
    const double y = log_sum.imag();
    const double sy = std::sin(0.5 * y);
    const double gap = std::abs(std::complex<double>(std::expm1(x) * std::cos(y) - 2.0 * sy * sy, std::exp(x) * std::sin(y)));
    const double weight = std::exp(lambda * (std::cos(t) - 1.0));
    return weight * gap / (kolmogorov ? std::abs(u) : 1.0);
  };
  // Panels shrink geometrically towards t = 0 where the weight peaks.
  CompensatedSum s;
  double hi = kPi;
  for (int k = 0; k < 30; ++k) {
    const double lo = hi / 2.0;
    s += integrate(integrand, lo, hi, 1e-9, nullptr, 10);
    hi = lo;
  }
  s += integrate(integrand, 0.0, hi, 1e-9, nullptr, 10);
  return s.value() / kPi;
}

LiteratureEntry entry(std::string id, std::string formula, std::string predicate, BoundKind kind,
                      BoundTarget target, bool needs_m,
                      std::function<double(const BernoulliParams&, std::optional<std::int64_t>, std::string&)> f) {
  return LiteratureEntry{std::move(id), std::move(formula), std::move(predicate), kind, target, needs_m, std::move(f)};
}

std::vector<LiteratureEntry> build_catalog() {
  using P = const BernoulliParams&;
  using M = std::optional<std::int64_t>;
  const auto tv = BoundKind::tv;
  const auto poisson = BoundTarget::poisson;
  const auto theta_lt_1 = [](P p, std::string& why) {
    if (!(p.theta < 1.0)) why = "θ<1 required";
    return why.empty();
  };
  const auto theta_lt_half = [](P p, std::string& why) {
    if (!(p.theta < 0.5)) why = "θ<1/2 required";
    return why.empty();
  };
  const auto pstar_quarter = [](P p, std::string& why) {
    if (!(p.p_star <= 0.25)) why = "p*<=1/4 required";
    return why.empty();
  };

  std::vector<LiteratureEntry> c;
  c.push_back(entry("lecam", "lambda2", "always", tv, poisson, false, [](P p, M, std::string&) { return p.lambda2; }));
  c.push_back(entry("lecam_8theta", "8 theta", "p*<=1/4", tv, poisson, false, [=](P p, M, std::string& why) {
    return pstar_quarter(p, why) ? 8.0 * p.theta : kNaN;
  }));
  c.push_back(entry("kerstan", "1.05 theta", "p*<=1/4", tv, poisson, false, [=](P p, M, std::string& why) {
    return pstar_quarter(p, why) ? 1.05 * p.theta : kNaN;
  }));
  c.push_back(entry("chen", "5 theta", "always", tv, poisson, false, [](P p, M, std::string&) { return 5.0 * p.theta; }));
  c.push_back(entry("barbour_hall", "theta", "always", tv, poisson, false, [](P p, M, std::string&) { return p.theta; }));
  c.push_back(entry("presman", "2.08 theta", "always", tv, poisson, false,
                    [](P p, M, std::string&) { return 2.08 * p.theta; }));
  c.push_back(entry("dvj", "0.71 theta", "p*<=1/4", tv, poisson, false, [=](P p, M, std::string& why) {
    return pstar_quarter(p, why) ? 0.71 * p.theta : kNaN;
  }));
  c.push_back(entry("kerstan2", "1.3 lambda3/lambda + 3.9 theta^2", "always", BoundKind::l1, BoundTarget::p1, false,
                    [](P p, M, std::string&) { return 1.3 * p.lambda3 / p.lambda + 3.9 * p.theta * p.theta; }));
  c.push_back(entry("dp88_tv", "theta/(1 - sqrt(2 theta))", "theta<1/2", tv, poisson, false,
                    [=](P p, M, std::string& why) {
                      return theta_lt_half(p, why) ? p.theta / (1.0 - std::sqrt(2.0 * p.theta)) : kNaN;
                    }));
  c.push_back(entry("dp88_second", "(2 theta)^{3/2}/(1 - sqrt(2 theta))", "theta<1/2", BoundKind::l1,
                    BoundTarget::p1, false, [=](P p, M, std::string& why) {
                      return theta_lt_half(p, why)
                                 ? std::pow(2.0 * p.theta, 1.5) / (1.0 - std::sqrt(2.0 * p.theta))
                                 : kNaN;
                    }));
  c.push_back(entry("witte_tv", "e^{2p*} theta/(sqrt(2 pi)(1 - 2 e^{2p*} theta))", "theta<exp(-2p*)/2", tv, poisson,
                    false, [](P p, M, std::string& why) {
                      const double g = std::exp(2.0 * p.p_star);
                      if (!(p.theta < 0.5 / g)) {
                        why = "θ<exp(-2p*)/2 required";
                        return kNaN;
                      }
                      return g * p.theta / (std::sqrt(2.0 * kPi) * (1.0 - 2.0 * g * p.theta));
                    }));
  c.push_back(entry("roos_tv", "(3/(4e) + 7(3 - 2 sqrt(theta)) sqrt(theta)/(6(1 - sqrt(theta))^2)) theta",
                    "theta<1", tv, poisson, false, [=](P p, M, std::string& why) {
                      if (!theta_lt_1(p, why)) return kNaN;
                      const double s = std::sqrt(p.theta);
                      return (3.0 / (4.0 * kE) + 7.0 * (3.0 - 2.0 * s) * s / (6.0 * (1.0 - s) * (1.0 - s))) * p.theta;
                    }));
  c.push_back(entry("kontoyiannis_kl", "(1/lambda) sum p_j^3/(1 - p_j)", "p_j<1 for all j", BoundKind::kl, poisson,
                    false, [](P p, M, std::string& why) {
                      if (!(p.p_star < 1.0)) {
                        why = "p_j<1 required";
                        return kNaN;
                      }
                      CompensatedSum s;
                      for (double x : p.probs) s += x * x * x / (1.0 - x);
                      return s.value() / p.lambda;
                    }));
  c.push_back(entry("pinsker", "sqrt(kl/2) with the exact divergence", "always", tv, poisson, false,
                    [](P p, M, std::string&) {
                      const Pmf pb = poisson_binomial_pmf(p);
                      const Pmf pois = poisson_pmf(p.lambda, SupportRange{pb.lo(), pb.hi()});
                      return std::sqrt(0.5 * distance(DistanceKind::kl, pb, pois).value);
                    }));
  c.push_back(entry("herrmann_signed", "O(lambda3/lambda)", "constant not stated", BoundKind::l1, BoundTarget::p2,
                    false, [](P, M, std::string& why) {
                      why = "order bound without an explicit constant";
                      return kNaN;
                    }));
  c.push_back(entry("kruopis_signed",
                    "10 varpi lambda3 min{1.2 sigma^-3 + 4.2 lambda2 sigma^-6, 2 + sigma^2 + 3.4 lambda2}", "always",
                    BoundKind::l1, BoundTarget::p2, false, [](P p, M, std::string&) {
                      const double s = p.sigma;
                      const double first = s > 0.0 ? 1.2 / (s * s * s) + 4.2 * p.lambda2 / std::pow(s, 6.0)
                                                    : std::numeric_limits<double>::infinity();
                      const double second = 2.0 + s * s + 3.4 * p.lambda2;
                      return 10.0 * p.varpi * p.lambda3 * std::min(first, second);
                    }));
  c.push_back(entry("barbour_xia_signed",
                    "4 lambda3/(lambda^{3/2}(1 - 2 theta) sqrt(1 - theta - max p_j(1-p_j)/lambda))", "theta<1/2",
                    BoundKind::l1, BoundTarget::p2, false, [=](P p, M, std::string& why) {
                      if (!theta_lt_half(p, why)) return kNaN;
                      double v = 0.0;
                      for (double x : p.probs) v = std::max(v, x * (1.0 - x));
                      const double radicand = 1.0 - p.theta - v / p.lambda;
                      if (!(radicand > 0.0)) {
                        why = "1 - θ - max p_j(1-p_j)/λ > 0 required";
                        return kNaN;
                      }
                      return 4.0 * p.lambda3 / (std::pow(p.lambda, 1.5) * (1.0 - 2.0 * p.theta) * std::sqrt(radicand));
                    }));
  const auto W = BoundKind::wasserstein;
  c.push_back(entry("dp88_w", "lambda2 pois(ceil(lambda)) + 2^{5/2} sqrt(lambda) theta^{3/2}/(1 - sqrt(2 theta))",
                    "theta<1/2", W, poisson, false, [=](P p, M, std::string& why) {
                      if (!theta_lt_half(p, why)) return kNaN;
                      const auto k = static_cast<std::int64_t>(std::ceil(p.lambda));
                      const double pois = std::exp(k * std::log(p.lambda) - p.lambda - log_factorial(k));
                      return p.lambda2 * pois +
                             std::pow(2.0, 2.5) * std::sqrt(p.lambda) * std::pow(p.theta, 1.5) /
                                 (1.0 - std::sqrt(2.0 * p.theta));
                    }));
  c.push_back(entry("witte_w", "-sqrt(e lambda)/(2 sqrt(2 pi)) log(1 - 2 e^{2p*} theta)", "theta<exp(-2p*)/2", W,
                    poisson, false, [](P p, M, std::string& why) {
                      const double g = std::exp(2.0 * p.p_star);
                      if (!(p.theta < 0.5 / g)) {
                        why = "θ<exp(-2p*)/2 required";
                        return kNaN;
                      }
                      return -std::sqrt(kE * p.lambda) / (2.0 * std::sqrt(2.0 * kPi)) * std::log1p(-2.0 * g * p.theta);
                    }));
  c.push_back(entry("xia_w", "lambda2/sqrt(lambda(1 - theta))", "theta<1", W, poisson, false,
                    [=](P p, M, std::string& why) {
                      return theta_lt_1(p, why) ? p.lambda2 / std::sqrt(p.lambda * (1.0 - p.theta)) : kNaN;
                    }));
  c.push_back(entry("bx_w", "8 lambda2/(3 sqrt(2 e lambda))", "always", W, poisson, false, [](P p, M, std::string&) {
    return 8.0 * p.lambda2 / (3.0 * std::sqrt(2.0 * kE * p.lambda));
  }));
  c.push_back(entry("roos_w", "(1/sqrt(2e) + 8(2 - theta) sqrt(theta)/(5(1 - sqrt(theta))^2)) lambda2/sqrt(lambda)",
                    "theta<1", W, poisson, false, [=](P p, M, std::string& why) {
                      if (!theta_lt_1(p, why)) return kNaN;
                      const double s = std::sqrt(p.theta);
                      return (1.0 / std::sqrt(2.0 * kE) + 8.0 * (2.0 - p.theta) * s / (5.0 * (1.0 - s) * (1.0 - s))) *
                             p.lambda2 / std::sqrt(p.lambda);
                    }));
  const auto K = BoundKind::kolmogorov;
  c.push_back(entry("dk_integral", "Fourier integral majorant of d_K", "always", K, poisson, false,
                    [](P p, M, std::string&) { return kolmogorov_fourier_integral(p); }));
  c.push_back(entry("dk_c1pi4", "c1 pi theta/(4(1 - theta))", "theta<1", K, poisson, false,
                    [=](P p, M, std::string& why) {
                      return theta_lt_1(p, why) ? c1() * kPi * p.theta / (4.0 * (1.0 - p.theta)) : kNaN;
                    }));
  c.push_back(entry("franken_lecam", "2 lambda2/pi", "always", K, poisson, false,
                    [](P p, M, std::string&) { return 2.0 * p.lambda2 / kPi; }));
  c.push_back(entry("serfling_k", "lambda2/2", "always", K, poisson, false,
                    [](P p, M, std::string&) { return 0.5 * p.lambda2; }));
  c.push_back(entry("makabe", "5 theta/(4(1 - 2p* - 5 theta/2))", "p*<1/5", K, poisson, false,
                    [](P p, M, std::string& why) {
                      const double den = 1.0 - 2.0 * p.p_star - 2.5 * p.theta;
                      if (!(p.p_star < 0.2)) {
                        why = "p*<1/5 required";
                        return kNaN;
                      }
                      if (!(den > 0.0)) {
                        why = "1 - 2p* - 5 θ/2 > 0 required";
                        return kNaN;
                      }
                      return 5.0 * p.theta / (4.0 * den);
                    }));
  c.push_back(entry("shorgin_k", "(1/2 + sqrt(pi/8)) theta/(1 - sqrt(theta))", "theta<1", K, poisson, false,
                    [=](P p, M, std::string& why) {
                      return theta_lt_1(p, why) ? (0.5 + std::sqrt(kPi / 8.0)) * p.theta / (1.0 - std::sqrt(p.theta))
                                                : kNaN;
                    }));
  c.push_back(entry("hipp_k", "pi/(4 lambda(1 - theta)) sum p_j^2/(1 - p_j)", "theta<1, p_j<1", K, poisson, false,
                    [=](P p, M, std::string& why) {
                      if (!theta_lt_1(p, why)) return kNaN;
                      if (!(p.p_star < 1.0)) {
                        why = "p_j<1 required";
                        return kNaN;
                      }
                      CompensatedSum s;
                      for (double x : p.probs) s += x * x / (1.0 - x);
                      return kPi / (4.0 * p.lambda * (1.0 - p.theta)) * s.value();
                    }));
  c.push_back(entry("kruopis_k", "(2/pi) min{sqrt(e) theta/(2(1 - theta)), lambda2}", "theta<1", K, poisson, false,
                    [=](P p, M, std::string& why) {
                      if (!theta_lt_1(p, why)) return kNaN;
                      return 2.0 / kPi * std::min(std::sqrt(kE) * p.theta / (2.0 * (1.0 - p.theta)), p.lambda2);
                    }));
  c.push_back(entry("kruopis_k_signed", "(2/3) varpi lambda3 min{1/(sqrt(pi) lambda^{3/2}(1 - theta)^{3/2}), 1}",
                    "theta<1", K, BoundTarget::p2, false, [=](P p, M, std::string& why) {
                      if (!theta_lt_1(p, why)) return kNaN;
                      return 2.0 / 3.0 * p.varpi * p.lambda3 *
                             std::min(1.0 / (std::sqrt(kPi) * std::pow(p.lambda * (1.0 - p.theta), 1.5)), 1.0);
                    }));
  c.push_back(entry("dp_k_second", "(5/3)(theta^2/(1 - sqrt(theta)) + lambda3/lambda^{3/2})", "theta<1", K,
                    BoundTarget::p1, false, [=](P p, M, std::string& why) {
                      if (!theta_lt_1(p, why)) return kNaN;
                      return 5.0 / 3.0 *
                             (p.theta * p.theta / (1.0 - std::sqrt(p.theta)) + p.lambda3 / std::pow(p.lambda, 1.5));
                    }));
  c.push_back(entry("witte_k", "sqrt(e)(1 + sqrt(pi/2)) e^{2p*} theta/(2 sqrt(2 pi)(1 - e^{2p*} theta))",
                    "theta<exp(-p*)", K, poisson, false, [](P p, M, std::string& why) {
                      const double g = std::exp(2.0 * p.p_star);
                      if (!(p.theta < std::exp(-p.p_star))) {
                        why = "θ<exp(-p*) required";
                        return kNaN;
                      }
                      if (!(1.0 - g * p.theta > 0.0)) {
                        why = "1 - e^{2p*} θ > 0 required";
                        return kNaN;
                      }
                      return std::sqrt(kE) * (1.0 + std::sqrt(kPi / 2.0)) * g * p.theta /
                             (2.0 * std::sqrt(2.0 * kPi) * (1.0 - g * p.theta));
                    }));
  c.push_back(entry("roos_k", "(1/(2e) + 6 sqrt(theta)/(5(1 - sqrt(theta)))) theta", "theta<1", K, poisson, false,
                    [=](P p, M, std::string& why) {
                      if (!theta_lt_1(p, why)) return kNaN;
                      const double s = std::sqrt(p.theta);
                      return (1.0 / (2.0 * kE) + 6.0 * s / (5.0 * (1.0 - s))) * p.theta;
                    }));
  c.push_back(entry("tn_nonuniform", "(1 - e^{-lambda}) theta min{1, e^lambda/(m+1)}", "always",
                    BoundKind::nonuniform_k, poisson, true, [](P p, M m, std::string&) {
                      const double md = static_cast<double>(*m);
                      return -std::expm1(-p.lambda) * p.theta * std::min(1.0, std::exp(p.lambda) / (md + 1.0));
                    }));
  const auto Pt = BoundKind::point;
  c.push_back(entry("dp_ir_p", "c1 pi^{5/2} theta/(8 sqrt(2 lambda)(1 - theta)^{3/2})", "theta<1", Pt, poisson, false,
                    [=](P p, M, std::string& why) {
                      if (!theta_lt_1(p, why)) return kNaN;
                      return c1() * std::pow(kPi, 2.5) * p.theta /
                             (8.0 * std::sqrt(2.0 * p.lambda) * std::pow(1.0 - p.theta, 1.5));
                    }));
  c.push_back(entry("dp_integral", "Fourier integral majorant of d_P", "always", Pt, poisson, false,
                    [](P p, M, std::string&) { return point_fourier_integral(p); }));
  c.push_back(entry("kruopis_p", "min{sqrt(e) theta/(sqrt(pi lambda)(1 - theta)^{3/2}), lambda2}", "theta<1", Pt,
                    poisson, false, [=](P p, M, std::string& why) {
                      if (!theta_lt_1(p, why)) return kNaN;
                      return std::min(std::sqrt(kE) * p.theta / (std::sqrt(kPi * p.lambda) * std::pow(1.0 - p.theta, 1.5)),
                                      p.lambda2);
                    }));
  c.push_back(entry("kruopis_p_signed", "(8 varpi/(3 pi)) lambda3 min{1/(lambda^2(1 - theta)^2), 4/3}", "theta<1", Pt,
                    BoundTarget::p2, false, [=](P p, M, std::string& why) {
                      if (!theta_lt_1(p, why)) return kNaN;
                      const double q = p.lambda * (1.0 - p.theta);
                      return 8.0 * p.varpi / (3.0 * kPi) * p.lambda3 * std::min(1.0 / (q * q), 4.0 / 3.0);
                    }));
  c.push_back(entry("roos_p",
                    "((1/2)(3/(2e))^{3/2} + (6 - 4 sqrt(theta)) sqrt(theta)/(3(1 - sqrt(theta))^2)) theta/sqrt(lambda)",
                    "theta<1", Pt, poisson, false, [=](P p, M, std::string& why) {
                      if (!theta_lt_1(p, why)) return kNaN;
                      const double s = std::sqrt(p.theta);
                      return (0.5 * std::pow(3.0 / (2.0 * kE), 1.5) + (6.0 - 4.0 * s) * s / (3.0 * (1.0 - s) * (1.0 - s))) *
                             p.theta / std::sqrt(p.lambda);
                    }));
  c.push_back(entry("neammanee_p", "min{1/m, 1/lambda} lambda2", "lambda<=1", BoundKind::nonuniform_p, poisson, true,
                    [](P p, M m, std::string& why) {
                      if (!(p.lambda <= 1.0)) {
                        why = "λ<=1 required";
                        return kNaN;
                      }
                      const double inv_m = *m > 0 ? 1.0 / static_cast<double>(*m) : std::numeric_limits<double>::infinity();
                      return std::min(inv_m, 1.0 / p.lambda) * p.lambda2;
                    }));
  return c;
}

BoundResult make_result(BoundFamily family, BoundKind kind, BoundTarget target, std::string id,
                        std::optional<std::int64_t> m) {
  BoundResult r;
  r.family = family;
  r.kind = kind;
  r.target = target;
  r.citation_id = std::move(id);
  r.m = m;
  return r;
}

void set_invalid(BoundResult& r, std::string reason) {
  r.valid = false;
  r.value = kNaN;
  r.validity_reason = std::move(reason);
}

}  // namespace

std::string_view to_string(BoundFamily family) { return enum_label(family, kFamilyNames); }
std::string_view to_string(BoundKind kind) { return enum_label(kind, kKindNames); }
std::string_view to_string(BoundTarget target) { return enum_label(target, kTargetNames); }
std::string_view to_string(ReferenceName name) { return enum_label(name, kReferenceNames); }
BoundFamily bound_family_from_string(std::string_view name) { return parse_enum(name, kFamilyNames, "bound family"); }
BoundKind bound_kind_from_string(std::string_view name) { return parse_enum(name, kKindNames, "bound kind"); }
BoundTarget bound_target_from_string(std::string_view name) { return parse_enum(name, kTargetNames, "target"); }
ReferenceName reference_name_from_string(std::string_view name) {
  return parse_enum(name, kReferenceNames, "reference value");
}

std::vector<BoundPair> supported_pairs(BoundFamily family) {
  using K = BoundKind;
  using T = BoundTarget;
  switch (family) {
    case BoundFamily::first:
      return {{K::chi2, T::poisson},        {K::kl, T::poisson},          {K::tv, T::poisson},
              {K::wasserstein, T::poisson}, {K::kolmogorov, T::poisson},  {K::point, T::poisson},
              {K::nonuniform_k, T::poisson}, {K::nonuniform_p, T::poisson}};
    case BoundFamily::second:
      return {{K::chi2, T::p1},         {K::tv, T::p1},           {K::tv, T::poisson},
              {K::wasserstein, T::p1}, {K::nonuniform_k, T::p1}, {K::nonuniform_p, T::p1}};
    case BoundFamily::signed_measure:
      return {{K::chi2, T::p2},         {K::l1, T::p2},           {K::wasserstein, T::p2},
              {K::nonuniform_k, T::p2}, {K::nonuniform_p, T::p2}, {K::tv, T::poisson},
              {K::chi2_root_gap, T::poisson}};
    default:
      return {};
  }
}

BoundResult paper_bound(BoundFamily family, BoundKind kind, const BernoulliParams& params,
                        const PaperBoundOptions& options) {
  if (family != BoundFamily::first && family != BoundFamily::second && family != BoundFamily::signed_measure) {
    throw UsageError("paper_bound supports the families first, second and signed");
  }
  const BoundTarget target = options.versus.value_or(default_target(family, kind));
  const auto pairs = supported_pairs(family);
  if (std::none_of(pairs.begin(), pairs.end(), [&](const BoundPair& p) { return p.kind == kind && p.target == target; })) {
    throw UsageError("unsupported pairing " + std::string(to_string(family)) + "/" + std::string(to_string(kind)) +
                     "/" + std::string(to_string(target)) + "; supported: " + pair_listing(family));
  }
  if (is_nonuniform(kind) && !options.m) throw UsageError("nonuniform bounds require m");
  if (options.m && *options.m < 0) throw DomainError("m must be nonnegative");

  BoundResult r = make_result(family, kind, target,
                              std::string(to_string(family)) + "/" + std::string(to_string(kind)) + "/" +
                                  std::string(to_string(target)),
                              is_nonuniform(kind) ? options.m : std::nullopt);
  if (!(params.lambda > 0.0)) {
    set_invalid(r, "λ>0 required");
    return r;
  }
  if (!(params.theta < 1.0)) {
    set_invalid(r, "θ<1 required");
    return r;
  }

  const double th = params.theta;
  const double b = 1.0 - th;
  const double lam = params.lambda;
  const double k1 = c1();
  const double k2 = c2();
  const double r3 = params.lambda3 / std::pow(lam, 1.5);
  const double z = is_nonuniform(kind) ? z_of(lam, *options.m) : 0.0;
  double v = kNaN;

  if (family == BoundFamily::first) {
    switch (kind) {
      case BoundKind::chi2:
      case BoundKind::kl: v = 2.0 * k1 * k1 * th * th / (b * b * b); break;
      case BoundKind::tv: v = k1 * th / (kSqrt2 * std::pow(b, 1.5)); break;
      case BoundKind::wasserstein: v = k1 * params.lambda2 / (std::sqrt(lam) * b); break;
      case BoundKind::kolmogorov: v = k1 * th / std::pow(b, 1.5); break;
      case BoundKind::point: v = kSqrt3 * k1 * th / (std::sqrt(lam) * b * b); break;
      case BoundKind::nonuniform_k: v = kSqrt2 * k1 * th / std::pow(b, 1.5) * std::sqrt(z); break;
      case BoundKind::nonuniform_p: v = kSqrt6 * k1 * th / (b * b * std::sqrt(lam)) * std::sqrt(z); break;
      default: break;
    }
  } else if (family == BoundFamily::second) {
    const double a = kSqrt3 * k1 * th * th / (kSqrt2 * std::pow(b, 2.5)) + kSqrt6 * k2 * r3 / (b * b);
    switch (kind) {
      case BoundKind::chi2: v = a * a; break;
      case BoundKind::tv: {
        const double lead = options.roos_constant ? 3.0 / (4.0 * kE) : std::pow(2.0, -1.5);
        v = target == BoundTarget::poisson ? lead * th + 0.5 * a : 0.5 * a;
        break;
      }
      case BoundKind::wasserstein:
        v = std::sqrt(lam) * (kSqrt3 * k1 * th * th / (2.0 * kSqrt2 * b * b) + kSqrt2 * k2 * r3 / std::pow(b, 1.5));
        break;
      case BoundKind::nonuniform_k: v = std::sqrt(z) * a; break;
      case BoundKind::nonuniform_p:
        v = std::sqrt(z / lam) *
            (kSqrt15 * k1 * th * th / (kSqrt2 * b * b * b) + 2.0 * kSqrt6 * k2 * r3 / std::pow(b, 2.5));
        break;
      default: break;
    }
  } else {
    const double bracket = kSqrt6 * k2 / (b * b) + std::sqrt(3.0 * th) / (2.0 * kSqrt2 * std::pow(b, 2.5));
    switch (kind) {
      case BoundKind::chi2: v = r3 * r3 * bracket * bracket; break;
      case BoundKind::l1: v = r3 * bracket; break;
      case BoundKind::wasserstein:
        v = params.lambda3 / lam *
            (kSqrt2 * k2 / std::pow(b, 1.5) + std::sqrt(3.0 * th) / (4.0 * kSqrt2 * b * b));
        break;
      case BoundKind::nonuniform_k: v = r3 * std::sqrt(z) * bracket; break;
      case BoundKind::nonuniform_p:
        v = params.lambda3 / (lam * lam) * std::sqrt(z) *
            (2.0 * kSqrt6 * k2 / std::pow(b, 2.5) + std::sqrt(15.0 * th) / (2.0 * kSqrt2 * b * b * b));
        break;
      case BoundKind::tv:
        v = 0.5 * std::sqrt(1.0 / std::sqrt(1.0 - th * th) - 1.0) +
            r3 * (k2 * kSqrt6 / (2.0 * b * b) + std::sqrt(24.0 * th) / (16.0 * std::pow(b, 2.5)));
        break;
      case BoundKind::chi2_root_gap:
        v = r3 * (k2 * kSqrt6 / (b * b) + std::sqrt(24.0 * th) / (8.0 * std::pow(b, 2.5)));
        break;
      default: break;
    }
  }
  r.value = v;
  r.valid = std::isfinite(v);
  if (!r.valid) r.validity_reason = "non-finite value";
  return r;
}

BoundResult reference_value(ReferenceName name, const BernoulliParams& params) {
  BoundKind kind = BoundKind::tv;
  BoundTarget target = BoundTarget::poisson;
  switch (name) {
    case ReferenceName::chi2_leading: kind = BoundKind::chi2; break;
    case ReferenceName::p2_chi2_identity:
      kind = BoundKind::chi2;
      target = BoundTarget::p2;
      break;
    case ReferenceName::w_asymptotic: kind = BoundKind::wasserstein; break;
    case ReferenceName::p_asymptotic: kind = BoundKind::point; break;
    case ReferenceName::k_small_theta: kind = BoundKind::kolmogorov; break;
    default: break;
  }
  BoundResult r = make_result(BoundFamily::reference, kind, target, std::string(to_string(name)), std::nullopt);
  const double th = params.theta;
  const double lam = params.lambda;
  const double root_2pie = std::sqrt(2.0 * kPi * kE);
  r.valid = true;
  switch (name) {
    case ReferenceName::tv_small_theta: r.value = th / root_2pie; break;
    case ReferenceName::chi2_leading: r.value = 0.5 * th * th; break;
    case ReferenceName::k_small_theta: r.value = th / (2.0 * root_2pie); break;
    case ReferenceName::p2_chi2_identity:
      if (!(th < 1.0)) {
        set_invalid(r, "θ<1 required");
        break;
      }
      r.value = 1.0 / std::sqrt(1.0 - th * th) - 1.0;
      break;
    case ReferenceName::j_theta: {
      if (!(th > 0.0 && th < 1.0)) {
        set_invalid(r, "0<θ<1 required");
        break;
      }
      const double ell = -std::log1p(-th);
      const double a = std::sqrt(ell / th);
      const double bb = std::sqrt((1.0 - th) * ell / th);
      r.value = std::erf(a / kSqrt2) - std::erf(bb / kSqrt2);
      break;
    }
    case ReferenceName::w_asymptotic:
    case ReferenceName::p_asymptotic:
      if (!(lam > 0.0)) {
        set_invalid(r, "λ>0 required");
        break;
      }
      r.value = name == ReferenceName::w_asymptotic ? params.lambda2 / std::sqrt(2.0 * kPi * lam)
                                                    : th / (2.0 * std::sqrt(2.0 * kPi * lam));
      break;
  }
  return r;
}

const std::vector<LiteratureEntry>& literature_catalog() {
  static const std::vector<LiteratureEntry> catalog = build_catalog();
  return catalog;
}

BoundResult literature_bound(std::string_view citation_id, const BernoulliParams& params,
                             std::optional<std::int64_t> m) {
  const auto& catalog = literature_catalog();
  const auto it = std::find_if(catalog.begin(), catalog.end(),
                               [&](const LiteratureEntry& e) { return e.citation_id == citation_id; });
  if (it == catalog.end()) {
    std::string listing;
    for (const auto& e : catalog) {
      listing += listing.empty() ? "" : ", ";
      listing += e.citation_id;
    }
    throw UsageError("unknown citation id '" + std::string(citation_id) + "'; catalog: " + listing);
  }
  if (it->needs_m && !m) throw UsageError("'" + it->citation_id + "' requires m");
  if (m && *m < 0) throw DomainError("m must be nonnegative");
  BoundResult r = make_result(BoundFamily::literature, it->kind, it->target, it->citation_id,
                              it->needs_m ? m : std::nullopt);
  if (!(params.lambda > 0.0)) {
    set_invalid(r, "λ>0 required");
    return r;
  }
  std::string why;
  const double v = it->evaluate(params, m, why);
  if (!why.empty()) {
    set_invalid(r, why);
    return r;
  }
  r.value = v;
  r.valid = std::isfinite(v);
  if (!r.valid) r.validity_reason = "non-finite value";
  return r;
}

double kolmogorov_fourier_integral(const BernoulliParams& params) { return fourier_integral(params, true); }
double point_fourier_integral(const BernoulliParams& params) { return fourier_integral(params, false); }

}  // namespace poisapprox
