#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace poisapprox {

/// c_1 = sqrt(e) - 1.
double c1();
/// c_2 = (1/2) int_0^1 e^{t^2/2} (1 - t^2) dt.
double c2();

/// Charlier polynomial C_k(lambda, n), orthogonal for the Poisson(lambda)
/// weight with squared norm k!/lambda^k. Throws DomainError for lambda <= 0.
double charlier_eval(int k, double lambda, std::int64_t n);

/// C_0 .. C_{k_max} at a single n via the three-term recurrence in k:
///   lambda C_{k+1} = (n - lambda - k) C_k - k C_{k-1}.
std::vector<double> charlier_row(int k_max, double lambda, std::int64_t n);

/// Alternating falling-factorial expansion; cross-check only.
double charlier_explicit(int k, double lambda, std::int64_t n);

struct LemmaConstant {
  int m = 1;
  double c_m = 0.0;
};

/// c_m = (1/m!) int_0^1 e^{t^2/2} (1-t)^{m-1} (m-1+t) dt, m >= 1.
double lemma_constant(int m);

struct AbsMoment {
  int k = 0;
  double lambda = 0.0;
  /// (1/2) sum_m pois(lambda, m) |C_k(lambda, m)|.
  double value = 0.0;
  /// Cauchy-Schwarz bound on the omitted tail of the sum (before halving).
  double tail_bound = 0.0;
  /// m_{+/-} closed form, k == 2 only.
  std::optional<double> closed_form;
};

/// Throws ConsistencyError if, for k == 2, the closed form and the direct
/// sum differ by more than 1e-12.
AbsMoment charlier_abs_moment(int k, double lambda);

/// e^{-lambda} (lambda^{m+ - 1}/m+! (m+ - lambda) + lambda^{m- - 1}/m-! (lambda - m-)),
/// with m_{+/-} = floor(lambda + 1/2 +/- sqrt(lambda + 1/4)).
double charlier2_half_abs_sum_closed(double lambda);

enum class TruncationForm { l2, l1, pointwise };

/// Right-hand sides of the N-term Charlier-Parseval truncation bounds for an
/// entire f with |f(z)| <= K exp(H |z-1|^2). Requires lambda >= (2+eps) H.
double truncation_tail_bound(int N, double lambda, double K, double H, double eps,
                             TruncationForm form);

}  // namespace poisapprox
