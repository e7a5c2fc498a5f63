#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "poisapprox/errors.hpp"
#include "poisapprox/expansion.hpp"

using namespace poisapprox;

namespace {
const ExpansionVariant kVariants[] = {ExpansionVariant::full_f, ExpansionVariant::F_minus_poisson,
                                      ExpansionVariant::F_minus_P1, ExpansionVariant::F_minus_P2};
}

TEST_CASE("coefficients against the Taylor oracle") {
  const std::vector<double> probs{0.1, 0.25, 0.05, 0.4, 0.3, 0.15};
  const auto params = params_from_probs(probs);
  for (int v = 0; v < 4; ++v) {
    const auto ref = oracle::expansion_coefficients(probs, v, 14);
    for (const auto method : {CoefficientMethod::symmetric_convolution, CoefficientMethod::circle_quadrature}) {
      const auto ec = charlier_coefficients(params, kVariants[v], 14, method);
      REQUIRE(ec.coeffs.size() == 15);
      CHECK(ec.method == method);
      for (int j = 0; j <= 14; ++j) {
        CHECK(std::fabs(ec.coeffs[static_cast<std::size_t>(j)] - ref[static_cast<std::size_t>(j)]) <=
              1e-12 + 1e-9 * std::fabs(ref[static_cast<std::size_t>(j)]));
      }
    }
  }
}

TEST_CASE("first coefficients vanish") {
  const auto params = params_from_probs(std::vector<double>(20, 0.05));
  const auto ec = charlier_coefficients(params, ExpansionVariant::F_minus_poisson, 6);
  CHECK(ec.coeffs[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(ec.coeffs[1] == 0.0);
  CHECK(ec.coeffs[2] == doctest::Approx(-0.5 * params.lambda2).epsilon(1e-12));
  const auto p1 = charlier_coefficients(params, ExpansionVariant::F_minus_P1, 6);
  CHECK(std::fabs(p1.coeffs[2]) <= 1e-15);
}

TEST_CASE("shorgin envelope") {
  CHECK(shorgin_envelope(2.0, 0) == 1.0);
  CHECK(shorgin_envelope(2.0, 4) == doctest::Approx(std::pow(std::exp(1.0) * 2.0 / 4.0, 2.0)));
  const auto params = params_from_probs(std::vector<double>{0.3, 0.2, 0.5, 0.1, 0.45});
  const auto ec = charlier_coefficients(params, ExpansionVariant::F_minus_poisson, 30);
  for (int j = 2; j <= 30; ++j) {
    CHECK(std::fabs(ec.coeffs[static_cast<std::size_t>(j)]) <= shorgin_envelope(params.lambda2, j));
  }
}

TEST_CASE("ill-conditioned convolution is refused, quadrature is not") {
  const auto params = params_from_probs(std::vector<double>(100, 0.3));
  CHECK_THROWS_AS(charlier_coefficients(params, ExpansionVariant::F_minus_poisson, 20), PrecisionError);
  const auto ec =
      charlier_coefficients(params, ExpansionVariant::F_minus_poisson, 20, CoefficientMethod::circle_quadrature);
  CHECK(ec.condition_estimate > kMaxCondition);
  CHECK(ec.coeffs[2] == doctest::Approx(-0.5 * params.lambda2).epsilon(1e-9));
  CHECK_THROWS_AS(charlier_coefficients(params, ExpansionVariant::full_f, kMaxExpansionOrder + 1), DomainError);
}

TEST_CASE("radial energy is the coefficient power series") {
  const std::vector<double> probs{0.2, 0.35, 0.1};
  const auto params = params_from_probs(probs);
  const auto ref = oracle::expansion_coefficients(probs, 1, 60);
  for (const double r : {0.3, 1.0, 2.0}) {
    double s = 0.0;
    for (int j = 0; j <= 60; ++j) s += ref[static_cast<std::size_t>(j)] * ref[static_cast<std::size_t>(j)] * std::pow(r, 2 * j);
    CHECK(radial_energy(params, ExpansionVariant::F_minus_poisson, r) == doctest::Approx(s).epsilon(1e-10));
  }
}

TEST_CASE("parseval three ways") {
  for (const auto& probs : {std::vector<double>(20, 0.05), std::vector<double>{0.5, 0.5}}) {
    const auto params = params_from_probs(probs);
    for (const auto v : kVariants) {
      const auto rep = parseval_triple(params, v);
      CHECK(rep.max_rel_disagreement <= 1e-6);
      CHECK(rep.coeff_series == doctest::Approx(rep.chi2_sum).epsilon(1e-6));
      CHECK(rep.quadrature_integral == doctest::Approx(rep.chi2_sum).epsilon(1e-6));
    }
  }
  CHECK_THROWS_AS(parseval_triple(params_from_probs(std::vector<double>{1.0}), ExpansionVariant::full_f),
                  ValidityError);
}

TEST_CASE("truncated expansion error against direct summation") {
  const std::vector<double> probs{0.1, 0.2, 0.15, 0.05, 0.1, 0.12};
  const auto params = params_from_probs(probs);
  const auto law = oracle::enumerate_law(probs);
  const auto pois = oracle::poisson(params.lambda, 60);
  const auto a = oracle::expansion_coefficients(probs, 0, 6);
  for (int N = 0; N <= 6; ++N) {
    double err = 0.0;
    for (int m = 0; m <= 60; ++m) {
      double approx = 0.0;
      for (int j = 0; j <= N; ++j) approx += a[static_cast<std::size_t>(j)] * oracle::charlier(j, params.lambda, m);
      approx *= pois[static_cast<std::size_t>(m)];
      const double exact = m < static_cast<int>(law.size()) ? law[static_cast<std::size_t>(m)] : 0.0;
      err += std::fabs(exact - approx);
    }
    CHECK(charlier_truncation_l1_error(params, N) == doctest::Approx(err).epsilon(1e-8));
  }
}

TEST_CASE("worked values") {
  const auto half = params_from_probs(std::vector<double>{0.5});
  const auto ec = charlier_coefficients(half, ExpansionVariant::full_f, 4);
  CHECK(ec.coeffs[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ec.coeffs[2] == doctest::Approx(-0.125).epsilon(1e-12));

  const auto params = params_from_probs(std::vector<double>{0.3, 0.2, 0.1, 0.25});
  CHECK(radial_energy(params, ExpansionVariant::F_minus_poisson, 0.0) == doctest::Approx(0.0));
  const double c1 = std::sqrt(std::exp(1.0)) - 1.0;
  for (double r = 0.1; r <= 3.0; r += 0.1) {
    const double env = c1 * c1 * params.lambda2 * params.lambda2 * std::pow(r, 4) * std::exp(params.lambda2 * r * r);
    CHECK(radial_energy(params, ExpansionVariant::F_minus_poisson, r) <= env * (1 + 1e-12));
  }

  const auto twenty = params_from_probs(std::vector<double>(20, 0.05));
  const auto rep = parseval_triple(twenty, ExpansionVariant::F_minus_poisson);
  const double th = twenty.theta;
  CHECK(rep.chi2_sum <= 2 * c1 * c1 * th * th / std::pow(1 - th, 3));
  CHECK_THROWS_AS(parseval_triple(params_from_probs(std::vector<double>{}), ExpansionVariant::full_f), ValidityError);
}
