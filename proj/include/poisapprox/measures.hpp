#pragma once

#include <optional>

#include "poisapprox/core.hpp"

namespace poisapprox {

struct HermiteEval {
  int m = 0;
  double x = 0.0;
  double value = 0.0;
};

/// Probabilists' Hermite polynomial He_m(x): He_0 = 1, He_1 = x,
/// He_{m+1} = x He_m - m He_{m-1}.
double hermite_poly(int m, double x);

/// He_0(x) .. He_{m_max}(x) as HermiteEval triples.
std::vector<HermiteEval> hermite_table(int m_max, double x);

/// Signed approximants with generating functions
///   P1(z) = e^{lambda(z-1)} (1 - lambda2 (z-1)^2 / 2),
///   P2(z) = e^{lambda(z-1) - lambda2 (z-1)^2 / 2}.
/// P2 is produced by the forward recurrence
///   m q_m = (lambda + lambda2) q_{m-1} - lambda2 q_{m-2},  q_0 = e^{-lambda - lambda2/2},
/// and checked against the Hermite closed form for m <= lambda + 10 sqrt(lambda);
/// a relative disagreement above 1e-8 there throws ConsistencyError.
/// The support runs until 5 consecutive entries have |v| < 1e-18; for P2 the
/// entries must also satisfy v^2 / pois(lambda, m) < 1e-24.
SignedPmf signed_measure_pmf(const BernoulliParams& params, SignedVariant variant,
                             std::optional<SupportRange> support_hint = std::nullopt);

/// Same, from the two scalars directly (lambda2 may be 0).
SignedPmf signed_measure_pmf(double lambda, double lambda2, SignedVariant variant,
                             std::optional<SupportRange> support_hint = std::nullopt);

/// Largest relative disagreement between the P2 recurrence and the Hermite
/// closed form over m in [0, m_max]; entries whose magnitude is below
/// 1e-300 in both routes are skipped.
double p2_hermite_disagreement(double lambda, double lambda2, std::int64_t m_max);

}  // namespace poisapprox
