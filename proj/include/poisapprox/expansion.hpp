#pragma once

#include <vector>

#include "poisapprox/core.hpp"

namespace poisapprox {

/// Which function's Charlier-Jordan coefficients are produced. With
/// f(z) = prod_j (1 + p_j (z-1)) e^{-lambda (z-1)}, the variants subtract
/// nothing, 1, 1 - lambda2 (z-1)^2/2 or e^{-lambda2 (z-1)^2/2} from f.
enum class ExpansionVariant { full_f, F_minus_poisson, F_minus_P1, F_minus_P2 };

enum class CoefficientMethod { symmetric_convolution, circle_quadrature };

struct ExpansionCoefficients {
  ExpansionVariant variant = ExpansionVariant::full_f;
  double lambda = 0.0;
  std::vector<double> coeffs;  ///< a_0 .. a_N from `method`
  CoefficientMethod method = CoefficientMethod::symmetric_convolution;
  /// max over j >= 2 of sum_k |e_k lambda^{j-k}/(j-k)!| / (e lambda2/j)^{j/2}.
  double condition_estimate = 1.0;
  std::vector<double> convolution;  ///< empty when untrusted
  std::vector<double> quadrature;
  std::vector<double> radii;        ///< circle radius used for each j
  std::vector<double> disagreement; ///< |convolution - quadrature| per j
  std::vector<double> tolerance;    ///< allowed disagreement per j
};

inline constexpr int kMaxExpansionOrder = 200;
inline constexpr double kMaxCondition = 1e12;

/// (e lambda2 / j)^{j/2} for j >= 1, and 1 for j == 0.
double shorgin_envelope(double lambda2, int j);

/// Both coefficient routes are always evaluated. With the default method a
/// condition estimate above 1e12 throws PrecisionError; requesting
/// circle_quadrature returns the quadrature values regardless.
/// Throws ConsistencyError when trusted convolution values and quadrature
/// values disagree beyond `tolerance`.
ExpansionCoefficients charlier_coefficients(const BernoulliParams& params, ExpansionVariant variant, int N,
                                            CoefficientMethod method = CoefficientMethod::symmetric_convolution);

/// I(r) = (1/2pi) int |g(1 + r e^{it})|^2 dt, g the variant function.
double radial_energy(const BernoulliParams& params, ExpansionVariant variant, double r);

struct ParsevalReport {
  double chi2_sum = 0.0;
  double coeff_series = 0.0;
  double quadrature_integral = 0.0;
  double max_rel_disagreement = 0.0;
  int terms_used = 0;        ///< coefficients summed in coeff_series
  double outer_cutoff = 0.0; ///< R of the outer integral
};

/// Three evaluations of sum_m A_m^2 / pois_m. Throws ValidityError unless
/// lambda > 0 and theta < 1.
ParsevalReport parseval_triple(const BernoulliParams& params, ExpansionVariant variant);

/// sum_m |P(S=m) - pois_m sum_{j<=N} a_j C_j(lambda, m)| using the full_f
/// coefficients.
double charlier_truncation_l1_error(const BernoulliParams& params, int N);

}  // namespace poisapprox
