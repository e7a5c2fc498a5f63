#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "poisapprox/bounds.hpp"
#include "poisapprox/charlier.hpp"
#include "poisapprox/errors.hpp"

using namespace poisapprox;

namespace {
const double kC1 = std::sqrt(std::exp(1.0)) - 1.0;

double paper(BoundFamily f, BoundKind k, const BernoulliParams& p, std::optional<std::int64_t> m = std::nullopt) {
  PaperBoundOptions o;
  o.m = m;
  const auto r = paper_bound(f, k, p, o);
  REQUIRE(r.valid);
  return r.value;
}
}  // namespace

TEST_CASE("first-order family") {
  const auto p = params_from_probs(std::vector<double>{0.1, 0.2, 0.3, 0.05, 0.15});
  const double th = p.theta;
  const double b = 1.0 - th;
  CHECK(paper(BoundFamily::first, BoundKind::chi2, p) == doctest::Approx(2 * kC1 * kC1 * th * th / std::pow(b, 3)));
  CHECK(paper(BoundFamily::first, BoundKind::kl, p) == doctest::Approx(2 * kC1 * kC1 * th * th / std::pow(b, 3)));
  CHECK(paper(BoundFamily::first, BoundKind::tv, p) == doctest::Approx(kC1 * th / (std::sqrt(2.0) * std::pow(b, 1.5))));
  CHECK(paper(BoundFamily::first, BoundKind::wasserstein, p) ==
        doctest::Approx(kC1 * p.lambda2 / (std::sqrt(p.lambda) * b)));
  CHECK(paper(BoundFamily::first, BoundKind::kolmogorov, p) == doctest::Approx(kC1 * th / std::pow(b, 1.5)));
  CHECK(paper(BoundFamily::first, BoundKind::point, p) ==
        doctest::Approx(std::sqrt(3.0) * kC1 * th / (std::sqrt(p.lambda) * b * b)));
  const auto nu = paper_bound(BoundFamily::first, BoundKind::nonuniform_k, p, PaperBoundOptions{3, false, {}});
  REQUIRE(nu.valid);
  CHECK(nu.m == 3);
  CHECK(nu.value < paper(BoundFamily::first, BoundKind::kolmogorov, p) * std::sqrt(2.0));
}

TEST_CASE("second-order and signed families") {
  const auto p = params_from_probs(std::vector<double>(10, 0.1));
  const double th = p.theta;
  const double b = 1.0 - th;
  const double r3 = p.lambda3 / std::pow(p.lambda, 1.5);
  const double a = std::sqrt(3.0) * kC1 * th * th / (std::sqrt(2.0) * std::pow(b, 2.5)) +
                   std::sqrt(6.0) * c2() * r3 / (b * b);
  CHECK(paper(BoundFamily::second, BoundKind::chi2, p) == doctest::Approx(a * a));
  CHECK(paper(BoundFamily::second, BoundKind::tv, p) == doctest::Approx(th / std::pow(2.0, 1.5) + a / 2));
  PaperBoundOptions roos;
  roos.roos_constant = true;
  CHECK(paper_bound(BoundFamily::second, BoundKind::tv, p, roos).value ==
        doctest::Approx(3.0 / (4.0 * std::exp(1.0)) * th + a / 2));
  PaperBoundOptions vs_p1;
  vs_p1.versus = BoundTarget::p1;
  CHECK(paper_bound(BoundFamily::second, BoundKind::tv, p, vs_p1).value == doctest::Approx(a / 2));

  const double bb = std::sqrt(6.0) * c2() / (b * b) + std::sqrt(3.0 * th) / (2 * std::sqrt(2.0) * std::pow(b, 2.5));
  CHECK(paper(BoundFamily::signed_measure, BoundKind::chi2, p) == doctest::Approx(r3 * r3 * bb * bb));
  CHECK(paper(BoundFamily::signed_measure, BoundKind::l1, p) == doctest::Approx(r3 * bb));
  CHECK(paper(BoundFamily::signed_measure, BoundKind::tv, p) ==
        doctest::Approx(0.5 * std::sqrt(1.0 / std::sqrt(1.0 - th * th) - 1.0) +
                        r3 * (c2() * std::sqrt(6.0) / (2 * b * b) + std::sqrt(24.0 * th) / (16 * std::pow(b, 2.5)))));
}

TEST_CASE("validity and usage") {
  const auto deg = params_from_probs(std::vector<double>{1.0, 1.0});
  const auto r = paper_bound(BoundFamily::first, BoundKind::tv, deg);
  CHECK_FALSE(r.valid);
  CHECK(std::isnan(r.value));
  CHECK(r.validity_reason == "θ<1 required");
  const auto empty = params_from_probs(std::vector<double>{});
  CHECK(paper_bound(BoundFamily::first, BoundKind::tv, empty).validity_reason == "λ>0 required");

  const auto p = params_from_probs(std::vector<double>{0.1, 0.2});
  CHECK_THROWS_AS(paper_bound(BoundFamily::first, BoundKind::nonuniform_k, p), UsageError);
  CHECK_THROWS_AS(paper_bound(BoundFamily::first, BoundKind::l1, p), UsageError);
  CHECK_THROWS_AS(paper_bound(BoundFamily::literature, BoundKind::tv, p), UsageError);
  CHECK(paper_bound(BoundFamily::first, BoundKind::tv, p).citation_id == "first/tv/poisson");
  CHECK(bound_kind_from_string("chi2_root_gap") == BoundKind::chi2_root_gap);
  CHECK(bound_family_from_string("signed") == BoundFamily::signed_measure);
  CHECK_THROWS_AS(bound_target_from_string("p3"), UsageError);
}

TEST_CASE("literature catalog") {
  const auto& cat = literature_catalog();
  std::set<std::string> ids;
  for (const auto& e : cat) {
    CHECK(ids.insert(e.citation_id).second);
    CHECK_FALSE(e.formula.empty());
  }
  CHECK(cat.size() >= 30);
  const auto p = params_from_probs(std::vector<double>(10, 0.1));
  CHECK(literature_bound("lecam", p).value == doctest::Approx(p.lambda2));
  CHECK_FALSE(literature_bound("herrmann_signed", p).valid);
  CHECK_THROWS_AS(literature_bound("nonexistent", p), UsageError);
  CHECK_THROWS_AS(literature_bound("tn_nonuniform", p), UsageError);
  CHECK(literature_bound("tn_nonuniform", p, 2).valid);
  CHECK_FALSE(literature_bound("lecam", params_from_probs(std::vector<double>{})).valid);
}

TEST_CASE("reference values") {
  const auto p = params_from_probs(std::vector<double>(1000, 0.001));
  const double slope = 1.0 / std::sqrt(2.0 * std::numbers::pi * std::exp(1.0));
  CHECK(reference_value(ReferenceName::tv_small_theta, p).value == doctest::Approx(p.theta * slope));
  CHECK(reference_value(ReferenceName::j_theta, p).value / p.theta == doctest::Approx(slope).epsilon(1e-3));
  CHECK(reference_value(ReferenceName::p2_chi2_identity, p).value ==
        doctest::Approx(1.0 / std::sqrt(1.0 - p.theta * p.theta) - 1.0));
  CHECK(reference_name_from_string("j_theta") == ReferenceName::j_theta);
}

TEST_CASE("fourier majorants dominate the uniform distances they bound") {
  const auto p = params_from_probs(std::vector<double>{0.1, 0.2, 0.3, 0.05, 0.15});
  CHECK(kolmogorov_fourier_integral(p) > 0.0);
  CHECK(point_fourier_integral(p) > 0.0);
  CHECK(kolmogorov_fourier_integral(p) == doctest::Approx(literature_bound("dk_integral", p).value));
}

TEST_CASE("worked bound values") {
  const auto p = params_from_probs(std::vector<double>(10, 0.1));
  CHECK(paper(BoundFamily::first, BoundKind::tv, p) == doctest::Approx(0.05372).epsilon(1e-4));
  CHECK(paper(BoundFamily::first, BoundKind::chi2, p) == doctest::Approx(0.011546).epsilon(1e-4));
  CHECK(kC1 / std::sqrt(2.0) == doctest::Approx(0.46).epsilon(0.01));
  CHECK(literature_bound("barbour_hall", p).value == doctest::Approx(p.theta));
  const auto small = params_from_probs(std::vector<double>{0.1, 0.2, 0.3});
  CHECK(literature_bound("kontoyiannis_kl", small).value == doctest::Approx(0.08280).epsilon(1e-4));
  CHECK_FALSE(literature_bound("dvj", params_from_probs(std::vector<double>{0.3, 0.1})).valid);
  CHECK_FALSE(literature_bound("neammanee_p", params_from_probs(std::vector<double>(3, 0.5)), 1).valid);
}

TEST_CASE("first-order tv bound shape") {
  double prev = 0.0;
  for (double th = 0.05; th < 1.0; th += 0.05) {
    const auto p = params_from_probs(std::vector<double>(100, th));
    const double v = paper(BoundFamily::first, BoundKind::tv, p);
    CHECK(v > prev);
    prev = v;
  }
  for (const double th : {1e-4, 1e-3, 1e-2}) {
    const auto p = params_from_probs(std::vector<double>(1000, th));
    const double ratio = paper(BoundFamily::first, BoundKind::tv, p) / (0.242 * p.theta);
    CHECK(ratio >= 1.0);
    CHECK(ratio <= 3.0);
  }
  const auto tiny = params_from_probs(std::vector<double>(10, 1e-4));
  const double slope = 1.0 / std::sqrt(2.0 * std::numbers::pi * std::exp(1.0));
  CHECK(reference_value(ReferenceName::j_theta, tiny).value / tiny.theta == doctest::Approx(slope).epsilon(0.01));
}

TEST_CASE("second-order bound improves on first-order") {
  for (const auto& [n, pj] : {std::pair{40, 0.1}, std::pair{200, 0.1}, std::pair{1000, 0.02}}) {
    const auto p = params_from_probs(std::vector<double>(static_cast<std::size_t>(n), pj));
    PaperBoundOptions vs_p1;
    vs_p1.versus = BoundTarget::p1;
    CHECK(paper_bound(BoundFamily::second, BoundKind::tv, p, vs_p1).value < paper(BoundFamily::first, BoundKind::tv, p));
  }
}
