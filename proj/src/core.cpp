#include "poisapprox/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <json.hpp>
#include <sstream>

#include "poisapprox/errors.hpp"
#include "poisapprox/numeric.hpp"

namespace poisapprox {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_poisson(double lambda, std::int64_t m) {
  if (lambda == 0.0) return m == 0 ? 0.0 : kNegInf;
  const auto md = static_cast<double>(m);
  return md * std::log(lambda) - lambda - log_factorial(m);
}
}  // namespace

double Pmf::at(std::int64_t m) const noexcept {
  if (m < lo() || m > hi()) return 0.0;
  return masses[static_cast<std::size_t>(m - offset)];
}

double Pmf::log_at(std::int64_t m) const noexcept {
  if (m < lo() || m > hi()) return kNegInf;
  const auto i = static_cast<std::size_t>(m - offset);
  if (!log_masses.empty()) return log_masses[i];
  return masses[i] > 0.0 ? std::log(masses[i]) : kNegInf;
}

double Pmf::total() const noexcept { return compensated_sum(masses); }

double SignedPmf::at(std::int64_t m) const noexcept {
  if (m < lo() || m > hi()) return 0.0;
  return values[static_cast<std::size_t>(m - offset)];
}

double SignedPmf::total() const noexcept { return compensated_sum(values); }

double MassView::at(std::int64_t m) const noexcept {
  if (m < lo() || m > hi()) return 0.0;
  return values[static_cast<std::size_t>(m - offset)];
}

double MassView::log_at(std::int64_t m) const noexcept {
  if (m < lo() || m > hi()) return kNegInf;
  const auto i = static_cast<std::size_t>(m - offset);
  if (!log_values.empty()) return log_values[i];
  const double v = values[i];
  return v > 0.0 ? std::log(v) : kNegInf;
}

BernoulliParams params_from_probs(std::span<const double> probs) {
  BernoulliParams out;
  out.probs.assign(probs.begin(), probs.end());
  out.n = static_cast<std::int64_t>(probs.size());

  CompensatedSum s1, s2, s3, s4;
  double pmax = 0.0;
  double varpi = 1.0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    const double p = probs[j];
    if (!(p >= 0.0 && p <= 1.0)) {
      std::ostringstream msg;
      msg << "probability at index " << j << " is " << p << ", outside [0,1]";
      throw DomainError(msg.str());
    }
    const double p2 = p * p;
    s1 += p;
    s2 += p2;
    s3 += p2 * p;
    s4 += p2 * p2;
    pmax = std::max(pmax, p);
    // 2u(1-u) over u = p t in [0, p] peaks at u = min(p, 1/2).
    const double u = std::min(p, 0.5);
    varpi = std::max(varpi, std::exp(2.0 * u * (1.0 - u)));
  }
  out.lambda = s1.value();
  out.lambda2 = s2.value();
  out.lambda3 = s3.value();
  out.lambda4 = s4.value();
  out.theta = out.lambda > 0.0 ? out.lambda2 / out.lambda : 0.0;
  out.sigma = std::sqrt(std::max(0.0, out.lambda - out.lambda2));
  out.p_star = pmax;
  out.varpi = varpi;
  return out;
}

BernoulliParams params_from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("expected a JSON object with \"probs\" or \"uniform\"");

  std::vector<double> probs;
  if (doc.contains("probs")) {
    const auto& arr = doc.at("probs");
    if (!arr.is_array()) throw InputError("\"probs\" must be an array");
    probs.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_number()) {
        throw InputError("probability at index " + std::to_string(i) + " is not a number");
      }
      probs.push_back(arr[i].get<double>());
    }
  } else if (doc.contains("uniform")) {
    const auto& u = doc.at("uniform");
    if (!u.is_object() || !u.contains("n") || !u.contains("p") || !u.at("n").is_number_integer() ||
        !u.at("p").is_number()) {
      throw InputError("\"uniform\" must be {\"n\": integer, \"p\": number}");
    }
    const auto n = u.at("n").get<std::int64_t>();
    if (n < 0) throw InputError("\"uniform.n\" must be nonnegative");
    if (n > kMaxTrials) {
      throw DomainError("n = " + std::to_string(n) + " exceeds the supported maximum " +
                        std::to_string(kMaxTrials));
    }
    probs.assign(static_cast<std::size_t>(n), u.at("p").get<double>());
  } else {
    throw InputError("expected key \"probs\" or \"uniform\"");
  }
  return params_from_probs(probs);
}

Pmf poisson_pmf(double lambda, std::optional<SupportRange> support_hint) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("Poisson mean must be finite and nonnegative");
  }
  Pmf out;
  if (lambda == 0.0) {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    if (support_hint) {
      lo = std::max<std::int64_t>(0, std::min(lo, support_hint->lo));
      hi = std::max(hi, support_hint->hi);
    }
    out.offset = lo;
    out.masses.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    out.log_masses.assign(out.masses.size(), kNegInf);
    out.masses[static_cast<std::size_t>(-lo)] = 1.0;
    out.log_masses[static_cast<std::size_t>(-lo)] = 0.0;
    return out;
  }

  const double log_cut = std::log(kPoissonTruncation);
  const auto mode = static_cast<std::int64_t>(std::floor(lambda));
  std::int64_t lo = mode;
  while (lo > 0 && log_poisson(lambda, lo - 1) >= log_cut) --lo;
  std::int64_t hi = mode;
  while (log_poisson(lambda, hi + 1) >= log_cut) ++hi;
  if (support_hint) {
    lo = std::min(lo, std::max<std::int64_t>(0, support_hint->lo));
    hi = std::max(hi, support_hint->hi);
  }

  out.offset = lo;
  const auto len = static_cast<std::size_t>(hi - lo + 1);
  out.masses.resize(len);
  out.log_masses.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    const double lp = log_poisson(lambda, lo + static_cast<std::int64_t>(i));
    out.log_masses[i] = lp;
    out.masses[i] = std::exp(lp);
  }
  return out;
}

Pmf poisson_binomial_pmf(const BernoulliParams& params) {
  if (params.n > kMaxTrials) {
    throw DomainError("n = " + std::to_string(params.n) + " exceeds the supported maximum " +
                      std::to_string(kMaxTrials));
  }
  Pmf out;
  out.offset = 0;
  out.masses.assign(static_cast<std::size_t>(params.n) + 1, 0.0);
  out.masses[0] = 1.0;
  std::size_t len = 1;
  for (const double p : params.probs) {
    const double q = 1.0 - p;
    // In-place multiply by (q + p z), top coefficient first.
    out.masses[len] = p * out.masses[len - 1];
    for (std::size_t k = len - 1; k > 0; --k) {
      out.masses[k] = q * out.masses[k] + p * out.masses[k - 1];
    }
    out.masses[0] *= q;
    ++len;
  }
  return out;
}

double z_tail_bound(double lambda, std::int64_t m) {
  const double md = static_cast<double>(m);
  if (md + lambda == 0.0) return 1.0;
  const double d = md - lambda;
  return std::exp(-d * d / (2.0 * (md + lambda)));
}

std::vector<TailSplit> tail_splits(double lambda, SupportRange range) {
  if (range.lo < 0) throw DomainError("tail split index must be nonnegative");
  if (range.hi < range.lo) return {};
  const auto far = static_cast<std::int64_t>(std::ceil(lambda + 40.0 * std::sqrt(lambda) + 40.0));
  const Pmf pois = poisson_pmf(lambda, SupportRange{0, std::max(range.hi, far) + 64});

  // Prefix sums from the left for lower tails, suffix sums from the right
  // for upper tails, so both small tails keep full relative accuracy.
  const std::size_t len = pois.masses.size();
  std::vector<double> prefix(len);
  std::vector<double> suffix(len);
  CompensatedSum acc;
  for (std::size_t i = 0; i < len; ++i) {
    acc += pois.masses[i];
    prefix[i] = acc.value();
  }
  CompensatedSum racc;
  for (std::size_t i = len; i-- > 0;) {
    suffix[i] = racc.value();  // mass strictly above index i
    racc += pois.masses[i];
  }

  std::vector<TailSplit> out;
  out.reserve(static_cast<std::size_t>(range.hi - range.lo + 1));
  for (std::int64_t m = range.lo; m <= range.hi; ++m) {
    const auto i = static_cast<std::size_t>(m - pois.offset);
    TailSplit t;
    t.m = m;
    t.lower_mass = prefix[i];
    t.upper_mass = suffix[i];
    t.z_value = std::min(t.lower_mass, t.upper_mass);
    t.z_bound = z_tail_bound(lambda, m);
    out.push_back(t);
  }
  return out;
}

TailSplit tail_split(double lambda, std::int64_t m) {
  if (m < 0) throw DomainError("tail split index m must be nonnegative");
  if (!(lambda >= 0.0)) throw DomainError("Poisson mean must be nonnegative");
  return tail_splits(lambda, SupportRange{m, m}).front();
}

double psi(double x) {
  if (x < 0.0) throw DomainError("psi(x) requires x >= 0");
  if (x == 0.0) return 1.0;
  return 1.0 - x + x * std::log(x);
}

}  // namespace poisapprox
