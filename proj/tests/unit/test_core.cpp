#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "poisapprox/core.hpp"
#include "poisapprox/errors.hpp"

using namespace poisapprox;

TEST_CASE("derived scalars") {
  const auto p = params_from_probs(std::vector<double>{0.1, 0.2, 0.3});
  CHECK(p.n == 3);
  CHECK(p.lambda == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(p.lambda2 == doctest::Approx(0.14).epsilon(1e-15));
  CHECK(p.lambda3 == doctest::Approx(0.036).epsilon(1e-15));
  CHECK(p.lambda4 == doctest::Approx(0.0098).epsilon(1e-15));
  CHECK(p.theta == doctest::Approx(0.14 / 0.6).epsilon(1e-15));
  CHECK(p.sigma == doctest::Approx(std::sqrt(0.46)).epsilon(1e-15));
  CHECK(p.p_star == 0.3);
  CHECK(p.varpi == doctest::Approx(std::exp(2 * 0.3 * 0.7)).epsilon(1e-15));

  const auto half = params_from_probs(std::vector<double>{0.9});
  CHECK(half.varpi == doctest::Approx(std::exp(0.5)).epsilon(1e-15));

  const auto empty = params_from_probs(std::vector<double>{});
  CHECK(empty.lambda == 0.0);
  CHECK(empty.theta == 0.0);
}

TEST_CASE("probabilities outside [0,1] name the index") {
  try {
    params_from_probs(std::vector<double>{0.1, 1.2});
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
    CHECK(e.code() == "domain");
  }
  CHECK_THROWS_AS(params_from_probs(std::vector<double>{-0.1}), DomainError);
  CHECK_THROWS_AS(params_from_probs(std::vector<double>{NAN}), DomainError);
}

TEST_CASE("json input") {
  CHECK(params_from_json(R"({"probs":[0.5,0.25]})").lambda == 0.75);
  const auto u = params_from_json(R"({"uniform":{"n":4,"p":0.25}})");
  CHECK(u.n == 4);
  CHECK(u.lambda == 1.0);
  CHECK_THROWS_AS(params_from_json("{"), InputError);
  CHECK_THROWS_AS(params_from_json("[1]"), InputError);
  CHECK_THROWS_AS(params_from_json(R"({"probs":[0.1,"x"]})"), InputError);
  CHECK_THROWS_AS(params_from_json(R"({"uniform":{"n":20000,"p":0.1}})"), DomainError);
  CHECK_THROWS_AS(params_from_json(R"({"other":1})"), InputError);
}

TEST_CASE("poisson pmf against the product recursion") {
  for (const double lambda : {0.3, 4.0, 37.5}) {
    const auto pmf = poisson_pmf(lambda, SupportRange{0, 120});
    const auto ref = oracle::poisson(lambda, 120);
    for (int m = 0; m <= 120; ++m) {
      if (ref[static_cast<std::size_t>(m)] < 1e-290) continue;
      CHECK(pmf.at(m) == doctest::Approx(ref[static_cast<std::size_t>(m)]).epsilon(1e-12));
    }
    CHECK(pmf.total() == doctest::Approx(1.0).epsilon(1e-14));
  }
  const auto degenerate = poisson_pmf(0.0);
  CHECK(degenerate.at(0) == 1.0);
  CHECK(degenerate.total() == 1.0);
  CHECK_THROWS_AS(poisson_pmf(-1.0), DomainError);
  CHECK_THROWS_AS(poisson_pmf(INFINITY), DomainError);
}

TEST_CASE("poisson-binomial pmf against enumeration") {
  const std::vector<double> probs{0.05, 0.5, 0.9, 0.31, 0.0, 1.0, 0.12, 0.77, 0.4, 0.66, 0.2, 0.013};
  const auto pmf = poisson_binomial_pmf(params_from_probs(probs));
  const auto ref = oracle::enumerate_law(probs);
  REQUIRE(pmf.masses.size() == ref.size());
  for (std::size_t m = 0; m < ref.size(); ++m) {
    CHECK(std::fabs(pmf.masses[m] - ref[m]) <= 1e-15);
  }
  CHECK(pmf.total() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pmf.log_at(1) == doctest::Approx(std::log(ref[1])).epsilon(1e-13));
  CHECK(pmf.log_at(-1) == -INFINITY);
}

TEST_CASE("tail splits and Z bound") {
  const double lambda = 7.5;
  const auto ref = oracle::poisson(lambda, 200);
  const auto splits = tail_splits(lambda, SupportRange{0, 40});
  for (const auto& t : splits) {
    double lower = 0.0;
    for (int k = 0; k <= t.m; ++k) lower += ref[static_cast<std::size_t>(k)];
    double upper = 0.0;
    for (int k = 200; k > t.m; --k) upper += ref[static_cast<std::size_t>(k)];
    CHECK(t.lower_mass == doctest::Approx(lower).epsilon(1e-12));
    CHECK(t.upper_mass == doctest::Approx(upper).epsilon(1e-10));
    CHECK(t.z_value == std::min(t.lower_mass, t.upper_mass));
    CHECK(t.z_value <= t.z_bound * (1 + 1e-12));
  }
  CHECK(z_tail_bound(4.0, 4) == 1.0);
  CHECK(z_tail_bound(4.0, 12) == doctest::Approx(std::exp(-64.0 / 32.0)));
  CHECK_THROWS_AS(tail_split(1.0, -1), DomainError);
}

TEST_CASE("psi") {
  CHECK(psi(1.0) == 0.0);
  CHECK(psi(0.0) == 1.0);
  CHECK(psi(2.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0));
  CHECK_THROWS_AS(psi(-0.5), DomainError);
}
