#include "poisapprox/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "poisapprox/errors.hpp"
#include "poisapprox/numeric.hpp"

namespace poisapprox {

namespace {

double total_of(const MassView& v) { return compensated_sum(v.values); }

double log_of(const MassView& v, std::int64_t m) {
  if (!v.log_values.empty()) return v.log_at(m);
  const double x = v.at(m);
  return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
}

SupportRange union_support(const MassView& p, const MassView& q) {
  return {std::min(p.lo(), q.lo()), std::max(p.hi(), q.hi())};
}

}  // namespace

std::string_view to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::tv: return "tv";
    case DistanceKind::chi2: return "chi2";
    case DistanceKind::kl: return "kl";
    case DistanceKind::wasserstein: return "wasserstein";
    case DistanceKind::kolmogorov: return "kolmogorov";
    case DistanceKind::point: return "point";
  }
  return "?";
}

DistanceKind distance_kind_from_string(std::string_view name) {
  for (auto k : kAllDistanceKinds) {
    if (to_string(k) == name) return k;
  }
  throw UsageError("unknown distance kind '" + std::string(name) +
                   "'; expected one of tv, chi2, kl, wasserstein, kolmogorov, point");
}

DistanceReport distance(DistanceKind kind, MassView p, MassView q, std::optional<MassView> weight) {
  DistanceReport rep;
  rep.kind = kind;
  rep.support_used = union_support(p, q);
  const double total_p = total_of(p);
  const double total_q = total_of(q);
  rep.truncation_residual = std::fabs(1.0 - total_p) + std::fabs(1.0 - total_q);
  const auto [lo, hi] = rep.support_used;

  switch (kind) {
    case DistanceKind::tv: {
      CompensatedSum s;
      for (std::int64_t m = lo; m <= hi; ++m) s += std::fabs(p.at(m) - q.at(m));
      rep.value = 0.5 * s.value();
      break;
    }
    case DistanceKind::point: {
      double best = 0.0;
      for (std::int64_t m = lo; m <= hi; ++m) best = std::max(best, std::fabs(p.at(m) - q.at(m)));
      rep.value = best;
      break;
    }
    case DistanceKind::wasserstein:
    case DistanceKind::kolmogorov: {
      CompensatedSum cdf_gap;
      CompensatedSum area;
      double best = 0.0;
      for (std::int64_t m = lo; m <= hi; ++m) {
        cdf_gap += p.at(m) - q.at(m);
        const double g = std::fabs(cdf_gap.value());
        area += g;
        best = std::max(best, g);
      }
      rep.value = kind == DistanceKind::wasserstein ? area.value() : best;
      break;
    }
    case DistanceKind::chi2: {
      const bool default_weight = !weight.has_value();
      if (default_weight && !q.nonnegative) {
        throw DomainError("chi2 needs an explicit positive weight when q is signed");
      }
      const MassView w = weight.value_or(q);
      CompensatedSum s;
      for (std::int64_t m = lo; m <= hi; ++m) {
        const double d = p.at(m) - q.at(m);
        if (d == 0.0) continue;
        const double log_w = log_of(w, m);
        if (!std::isfinite(log_w)) {
          throw DomainError("chi2 weight vanishes at m = " + std::to_string(m) + " inside the support");
        }
        s += std::exp(2.0 * std::log(std::fabs(d)) - log_w);
      }
      if (default_weight) s += std::max(0.0, 1.0 - total_q);
      rep.value = s.value();
      break;
    }
    case DistanceKind::kl: {
      if (!p.nonnegative || !q.nonnegative) throw DomainError("kl requires nonnegative arguments");
      CompensatedSum s;
      for (std::int64_t m = lo; m <= hi; ++m) {
        const double pm = p.at(m);
        if (pm <= 0.0 && !std::isfinite(log_of(p, m))) continue;
        const double log_q = log_of(q, m);
        if (!std::isfinite(log_q)) {
          throw DomainError("kl: q vanishes at m = " + std::to_string(m) + " where p is positive");
        }
        s += pm * (log_of(p, m) - log_q);
      }
      rep.value = std::max(0.0, s.value());
      break;
    }
  }
  return rep;
}

std::vector<DistanceReport> poisson_distances(const BernoulliParams& params) {
  const Pmf pb = poisson_binomial_pmf(params);
  const Pmf pois = poisson_pmf(params.lambda, SupportRange{pb.lo(), pb.hi()});
  std::vector<DistanceReport> out;
  for (auto k : kAllDistanceKinds) out.push_back(distance(k, pb, pois));
  return out;
}

std::vector<GapPoint> nonuniform_gap(MassView p, MassView q, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("nonuniform gaps require lambda > 0");
  const SupportRange support{0, std::max(p.hi(), q.hi())};
  const auto splits = tail_splits(lambda, support);
  std::vector<GapPoint> out;
  out.reserve(splits.size());
  CompensatedSum cdf_gap;
  for (std::int64_t m = support.lo; m <= support.hi; ++m) {
    const double d = p.at(m) - q.at(m);
    cdf_gap += d;
    out.push_back({m, std::fabs(cdf_gap.value()), std::fabs(d), splits[static_cast<std::size_t>(m)].z_value});
  }
  return out;
}

std::vector<GapPoint> nonuniform_gap(MassView p, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("nonuniform gaps require lambda > 0");
  const Pmf pois = poisson_pmf(lambda, SupportRange{0, std::max<std::int64_t>(p.hi(), 0)});
  return nonuniform_gap(p, MassView(pois), lambda);
}

}  // namespace poisapprox
