#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "poisapprox/errors.hpp"
#include "poisapprox/metrics.hpp"

using namespace poisapprox;

namespace {
Pmf make_pmf(std::int64_t offset, std::vector<double> masses) {
  Pmf p;
  p.offset = offset;
  p.masses = std::move(masses);
  return p;
}
}  // namespace

TEST_CASE("hand-computed distances") {
  const Pmf p = make_pmf(0, {0.5, 0.5});
  const Pmf q = make_pmf(0, {0.25, 0.75});
  CHECK(distance(DistanceKind::tv, p, q).value == doctest::Approx(0.25));
  CHECK(distance(DistanceKind::point, p, q).value == doctest::Approx(0.25));
  CHECK(distance(DistanceKind::kolmogorov, p, q).value == doctest::Approx(0.25));
  CHECK(distance(DistanceKind::wasserstein, p, q).value == doctest::Approx(0.25));
  CHECK(distance(DistanceKind::chi2, p, q).value == doctest::Approx(0.0625 / 0.25 + 0.0625 / 0.75));
  CHECK(distance(DistanceKind::kl, p, q).value ==
        doctest::Approx(0.5 * std::log(2.0) + 0.5 * std::log(0.5 / 0.75)));
}

TEST_CASE("offsets and disjoint supports") {
  const Pmf p = make_pmf(3, {1.0});
  const Pmf q = make_pmf(5, {1.0});
  CHECK(distance(DistanceKind::tv, p, q).value == 1.0);
  CHECK(distance(DistanceKind::wasserstein, p, q).value == doctest::Approx(2.0));
  CHECK_THROWS_AS(distance(DistanceKind::kl, p, q), DomainError);
  CHECK_THROWS_AS(distance(DistanceKind::chi2, p, q), DomainError);
}

TEST_CASE("signed arguments") {
  SignedPmf s;
  s.offset = 0;
  s.values = {0.6, -0.1, 0.5};
  const Pmf p = make_pmf(0, {0.5, 0.0, 0.5});
  CHECK(distance(DistanceKind::tv, p, s).value == doctest::Approx(0.1));
  CHECK_THROWS_AS(distance(DistanceKind::kl, p, s), DomainError);
  const Pmf w = make_pmf(0, {0.25, 0.5, 0.25});
  CHECK(distance(DistanceKind::chi2, p, s, MassView(w)).value ==
        doctest::Approx(0.01 / 0.25 + 0.01 / 0.5 + 0.0));
}

TEST_CASE("string names") {
  for (const auto kind : kAllDistanceKinds) CHECK(distance_kind_from_string(to_string(kind)) == kind);
  CHECK_THROWS_AS(distance_kind_from_string("hellinger"), UsageError);
}

TEST_CASE("law against Poisson") {
  const std::vector<double> probs{0.1, 0.3, 0.2, 0.05};
  const auto params = params_from_probs(probs);
  const auto law = oracle::enumerate_law(probs);
  const auto pois = oracle::poisson(params.lambda, 60);
  const auto reports = poisson_distances(params);
  REQUIRE(reports.size() == 6);
  CHECK(reports[0].kind == DistanceKind::tv);
  CHECK(reports[0].value == doctest::Approx(oracle::tv(law, pois)).epsilon(1e-12));
  double chi2 = 0.0;
  for (std::size_t m = 0; m < pois.size(); ++m) {
    const double a = m < law.size() ? law[m] : 0.0;
    chi2 += (a - pois[m]) * (a - pois[m]) / pois[m];
  }
  CHECK(reports[1].value == doctest::Approx(chi2).epsilon(1e-10));
  for (const auto& r : reports) CHECK(r.truncation_residual < 1e-15);
}

TEST_CASE("nonuniform gaps") {
  const auto params = params_from_probs(std::vector<double>{0.2, 0.2});
  const auto law = poisson_binomial_pmf(params);
  const auto gaps = nonuniform_gap(law, params.lambda);
  const auto pois = oracle::poisson(0.4, 10);
  REQUIRE(!gaps.empty());
  CHECK(gaps.front().m == 0);
  CHECK(gaps[0].pmf_gap == doctest::Approx(std::fabs(0.64 - pois[0])));
  CHECK(gaps[1].cdf_gap == doctest::Approx(std::fabs(0.96 - pois[0] - pois[1])));
  CHECK(gaps[1].z_value == doctest::Approx(std::min(pois[0] + pois[1], 1.0 - pois[0] - pois[1])));
}

TEST_CASE("single trial closed form") {
  const auto params = params_from_probs(std::vector<double>{0.1});
  CHECK(poisson_distances(params)[0].value == doctest::Approx(0.1 * (1.0 - std::exp(-0.1))).epsilon(1e-13));
}

TEST_CASE("symmetric kinds and Pinsker") {
  const auto params = params_from_probs(std::vector<double>{0.3, 0.1, 0.45, 0.2, 0.05, 0.6});
  const auto law = poisson_binomial_pmf(params);
  const auto pois = poisson_pmf(params.lambda, SupportRange{0, law.hi()});
  for (const auto kind : {DistanceKind::tv, DistanceKind::point, DistanceKind::kolmogorov, DistanceKind::wasserstein}) {
    CHECK(std::fabs(distance(kind, law, pois).value - distance(kind, pois, law).value) <= 1e-12);
  }
  CHECK(distance(DistanceKind::tv, law, law).value == 0.0);
  const double tv = distance(DistanceKind::tv, law, pois).value;
  CHECK(tv <= std::sqrt(0.5 * distance(DistanceKind::kl, law, pois).value));
}
