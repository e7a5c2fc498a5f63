#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "poisapprox/charlier.hpp"
#include "poisapprox/errors.hpp"
#include "poisapprox/measures.hpp"

using namespace poisapprox;

TEST_CASE("hermite polynomials") {
  const double x = 1.7;
  CHECK(hermite_poly(0, x) == 1.0);
  CHECK(hermite_poly(1, x) == x);
  CHECK(hermite_poly(3, x) == doctest::Approx(x * x * x - 3 * x));
  CHECK(hermite_poly(4, x) == doctest::Approx(std::pow(x, 4) - 6 * x * x + 3));
  const auto table = hermite_table(5, x);
  REQUIRE(table.size() == 6);
  CHECK(table[5].m == 5);
  CHECK(table[5].value == doctest::Approx(std::pow(x, 5) - 10 * std::pow(x, 3) + 15 * x));
  CHECK_THROWS_AS(hermite_poly(-1, x), DomainError);
}

TEST_CASE("P1 and P2 against power-series oracles") {
  for (const auto& [lambda, lambda2] : {std::pair{2.0, 0.4}, std::pair{5.0, 1.0}, std::pair{12.0, 6.0}}) {
    const auto p1 = signed_measure_pmf(lambda, lambda2, SignedVariant::p1);
    const auto p2 = signed_measure_pmf(lambda, lambda2, SignedVariant::p2);
    const auto r1 = oracle::p1_series(lambda, lambda2, 60);
    const auto r2 = oracle::p2_series(lambda, lambda2, 60);
    for (int m = 0; m <= 60; ++m) {
      CHECK(std::fabs(p1.at(m) - r1[static_cast<std::size_t>(m)]) <= 1e-15);
      CHECK(std::fabs(p2.at(m) - r2[static_cast<std::size_t>(m)]) <= 1e-14);
    }
    CHECK(p1.total() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p2.total() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("P1 distribution function identity") {
  const double lambda = 6.0;
  const double lambda2 = 1.5;
  const auto p1 = signed_measure_pmf(lambda, lambda2, SignedVariant::p1);
  const auto pois = oracle::poisson(lambda, 40);
  double cum_p1 = 0.0;
  double cum_pois = 0.0;
  for (int m = 0; m <= 40; ++m) {
    cum_p1 += p1.at(m);
    cum_pois += pois[static_cast<std::size_t>(m)];
    const double formula = cum_pois + 0.5 * lambda2 * charlier_eval(1, lambda, m) * pois[static_cast<std::size_t>(m)];
    CHECK(cum_p1 == doctest::Approx(formula).epsilon(1e-12));
  }
}

TEST_CASE("swapped Charlier arguments do not reproduce P1") {
  const double lambda = 6.0;
  const double lambda2 = 1.5;
  const auto ref = oracle::p1_series(lambda, lambda2, 20);
  const auto pois = oracle::poisson(lambda, 20);
  double worst = 0.0;
  for (int m = 1; m <= 20; ++m) {
    const double swapped = pois[static_cast<std::size_t>(m)] * (1.0 - 0.5 * lambda2 * oracle::charlier(2, m, static_cast<std::int64_t>(lambda)));
    worst = std::max(worst, std::fabs(swapped - ref[static_cast<std::size_t>(m)]));
  }
  CHECK(worst > 1e-3);
}

TEST_CASE("P2 chi-square identity") {
  for (const double theta : {0.05, 0.2, 0.6}) {
    const double lambda = 5.0;
    const double lambda2 = theta * lambda;
    const auto p2 = signed_measure_pmf(lambda, lambda2, SignedVariant::p2);
    const auto pois = poisson_pmf(lambda, SupportRange{0, p2.hi()});
    double s = 0.0;
    for (std::int64_t m = 0; m <= p2.hi(); ++m) {
      const double d = pois.at(m) - p2.at(m);
      s += d * d / pois.at(m);
    }
    CHECK(s == doctest::Approx(1.0 / std::sqrt(1.0 - theta * theta) - 1.0).epsilon(1e-9));
  }
}

TEST_CASE("hermite route agrees with the recurrence") {
  for (const double lambda : {1.0, 10.0, 50.0}) {
    const auto m_max = static_cast<std::int64_t>(lambda + 10 * std::sqrt(lambda));
    CHECK(p2_hermite_disagreement(lambda, 0.3 * lambda, m_max) <= 1e-8);
  }
  CHECK(p2_hermite_disagreement(3.0, 0.0, 20) == 0.0);
}

TEST_CASE("support and errors") {
  const auto p2 = signed_measure_pmf(4.0, 1.0, SignedVariant::p2, SupportRange{0, 200});
  CHECK(p2.hi() >= 200);
  CHECK(p2.variant == SignedVariant::p2);
  const auto zero = signed_measure_pmf(4.0, 0.0, SignedVariant::p2);
  CHECK(zero.at(4) == doctest::Approx(oracle::poisson(4.0, 4)[4]).epsilon(1e-14));
  CHECK_THROWS_AS(signed_measure_pmf(0.0, 0.0, SignedVariant::p1), DomainError);
  CHECK_THROWS_AS(signed_measure_pmf(1.0, 0.1, SignedVariant::custom), UsageError);
  const auto params = params_from_probs(std::vector<double>{0.2, 0.3});
  CHECK(signed_measure_pmf(params, SignedVariant::p1).at(0) ==
        doctest::Approx(signed_measure_pmf(0.5, 0.13, SignedVariant::p1).at(0)));
}
