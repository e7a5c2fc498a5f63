#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "poisapprox/core.hpp"

namespace poisapprox {

enum class DistanceKind { tv, chi2, kl, wasserstein, kolmogorov, point };

inline constexpr DistanceKind kAllDistanceKinds[] = {DistanceKind::tv,          DistanceKind::chi2,
                                                     DistanceKind::kl,          DistanceKind::wasserstein,
                                                     DistanceKind::kolmogorov, DistanceKind::point};

std::string_view to_string(DistanceKind kind);
/// Throws UsageError for an unknown name.
DistanceKind distance_kind_from_string(std::string_view name);

struct DistanceReport {
  DistanceKind kind = DistanceKind::tv;
  double value = 0.0;
  SupportRange support_used;
  /// |1 - sum p| + |1 - sum q| over the stored supports.
  double truncation_residual = 0.0;
};

/// tv = (1/2) sum |p - q|; chi2 = sum (p - q)^2 / weight, with weight = q
/// by default; kl = sum p log(p/q); wasserstein = sum_m |CDF_p - CDF_q|;
/// kolmogorov = max_m |CDF_p - CDF_q|; point = max_m |p - q|.
/// When chi2 uses q as its weight, the mass of q beyond its stored support
/// is added as the contribution of the region where p vanishes.
DistanceReport distance(DistanceKind kind, MassView p, MassView q,
                        std::optional<MassView> weight = std::nullopt);

/// Law of S_n against Poisson(lambda) for every kind, with the Poisson pmf
/// built over the support of the law.
std::vector<DistanceReport> poisson_distances(const BernoulliParams& params);

struct GapPoint {
  std::int64_t m = 0;
  double cdf_gap = 0.0;
  double pmf_gap = 0.0;
  double z_value = 0.0;
};

/// Per-m |CDF| and |pmf| gaps of p against Poisson(lambda).
std::vector<GapPoint> nonuniform_gap(MassView p, double lambda);

/// Per-m gaps between two arbitrary (signed) mass sequences, with Z(m)
/// taken from Poisson(lambda).
std::vector<GapPoint> nonuniform_gap(MassView p, MassView q, double lambda);

}  // namespace poisapprox
