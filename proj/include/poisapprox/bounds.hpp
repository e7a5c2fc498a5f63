#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "poisapprox/core.hpp"

namespace poisapprox {

enum class BoundFamily { first, second, signed_measure, literature, reference };

/// l1 is the full sum sum_m |p_m - q_m|; chi2_root_gap bounds
/// |sqrt(chi2(S_n, Poisson)) - sqrt(1/sqrt(1 - theta^2) - 1)|.
enum class BoundKind { tv, chi2, kl, wasserstein, kolmogorov, point, nonuniform_k, nonuniform_p, l1, chi2_root_gap };

/// The measure the law of S_n is compared with.
enum class BoundTarget { poisson, p1, p2 };

std::string_view to_string(BoundFamily family);
std::string_view to_string(BoundKind kind);
std::string_view to_string(BoundTarget target);
BoundFamily bound_family_from_string(std::string_view name);
BoundKind bound_kind_from_string(std::string_view name);
BoundTarget bound_target_from_string(std::string_view name);

struct BoundResult {
  BoundFamily family = BoundFamily::first;
  BoundKind kind = BoundKind::tv;
  BoundTarget target = BoundTarget::poisson;
  double value = 0.0;  ///< NaN when !valid
  bool valid = false;
  std::string validity_reason;
  std::string citation_id;
  std::optional<std::int64_t> m;
};

struct PaperBoundOptions {
  std::optional<std::int64_t> m;      ///< required by nonuniform kinds
  bool roos_constant = false;         ///< second/tv/poisson: 3/(4e) instead of 2^{-3/2}
  std::optional<BoundTarget> versus;  ///< defaults per family and kind
};

struct BoundPair {
  BoundKind kind;
  BoundTarget target;
};

/// (kind, target) pairs available for a Charlier-Parseval family.
std::vector<BoundPair> supported_pairs(BoundFamily family);

/// Throws UsageError for an unsupported (family, kind, target) combination
/// or a missing m.
BoundResult paper_bound(BoundFamily family, BoundKind kind, const BernoulliParams& params,
                        const PaperBoundOptions& options = {});

enum class ReferenceName {
  tv_small_theta,
  chi2_leading,
  p2_chi2_identity,
  j_theta,
  w_asymptotic,
  p_asymptotic,
  k_small_theta
};

std::string_view to_string(ReferenceName name);
ReferenceName reference_name_from_string(std::string_view name);

/// Asymptotic reference values and exact identities. j_theta returns
/// 2 (Phi(a) - Phi(b)) with a^2 = log(1/(1-theta))/theta and
/// b^2 = (1-theta) a^2, whose small-theta slope is 1/sqrt(2 pi e).
BoundResult reference_value(ReferenceName name, const BernoulliParams& params);

struct LiteratureEntry {
  std::string citation_id;
  std::string formula;
  std::string predicate;
  BoundKind kind = BoundKind::tv;
  BoundTarget target = BoundTarget::poisson;
  bool needs_m = false;
  /// Returns the value; sets reason to a non-empty string when the
  /// hypothesis fails.
  std::function<double(const BernoulliParams&, std::optional<std::int64_t>, std::string&)> evaluate;
};

const std::vector<LiteratureEntry>& literature_catalog();

/// Throws UsageError (with the full catalog listing) for an unknown id, or
/// when m is needed but missing.
BoundResult literature_bound(std::string_view citation_id, const BernoulliParams& params,
                             std::optional<std::int64_t> m = std::nullopt);

/// The Fourier integral majorants of d_K and d_P.
double kolmogorov_fourier_integral(const BernoulliParams& params);
double point_fourier_integral(const BernoulliParams& params);

}  // namespace poisapprox
