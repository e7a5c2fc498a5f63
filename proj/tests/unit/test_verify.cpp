#include <doctest.h>

#include <cmath>

#include "poisapprox/errors.hpp"
#include "poisapprox/verify.hpp"

using namespace poisapprox;

TEST_CASE("sample statistics") {
  const auto s = sample_stats({{3.0, 4.0}, {1.0, 0.0}});
  CHECK(s.V1 == doctest::Approx(6.0));
  CHECK(s.V2 == doctest::Approx(26.0));
  CHECK(s.V3 == doctest::Approx(126.0));
  CHECK(s.V4 == doctest::Approx(626.0));
  CHECK(s.V2 * s.V2 >= s.V4);
}

TEST_CASE("battery is reproducible and clean") {
  const auto a = inequality_battery(7, 2000);
  const auto b = inequality_battery(7, 2000);
  CHECK(a.violations.empty());
  CHECK(a.seed == 7);
  CHECK(a.samples == 2000 * static_cast<std::int64_t>(battery_lemmas().size()));
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i] == b.checks[i]);
  CHECK_THROWS_AS(inequality_battery(1, 0), DomainError);
  const auto& names = battery_lemmas();
  for (const char* id : {"ez-ineq", "ez-ineq2-m1", "ez-ineq2-m2", "ch-ineq1", "ineq-p1", "ineq-p2", "xlogx"}) {
    CHECK(std::find(names.begin(), names.end(), id) != names.end());
  }
}

TEST_CASE("z = 1 in the first exponential inequality") {
  const double lhs = std::abs(2.0 * std::exp(-1.0));
  CHECK(lhs == doctest::Approx(0.73576).epsilon(1e-5));
  CHECK(lhs <= std::exp(0.5));
}

TEST_CASE("grids") {
  const auto grid = default_grid();
  CHECK_FALSE(grid.empty());
  for (const auto& g : grid) CHECK(g.params.theta <= 0.5);
  const auto sweep = lambda_sweep_grid();
  REQUIRE(sweep.size() == 3);
  CHECK(sweep[0].params.lambda == doctest::Approx(10.0));
  CHECK(sweep[2].params.lambda == doctest::Approx(200.0));
}

TEST_CASE("dominance sweep") {
  const auto empty = dominance_sweep({}, {BoundFamily::first}, all_bound_kinds());
  CHECK(empty.samples == 0);
  CHECK(empty.violations.empty());

  std::vector<GridInstance> grid;
  grid.push_back({"a", params_from_probs(std::vector<double>{0.1, 0.3, 0.2, 0.05, 0.4})});
  grid.push_back({"b", params_from_probs(std::vector<double>(30, 0.1))});
  const std::set<BoundFamily> fam{BoundFamily::first, BoundFamily::second, BoundFamily::signed_measure};
  const auto one = dominance_sweep(grid, fam, all_bound_kinds(), 1);
  const auto two = dominance_sweep(grid, fam, all_bound_kinds(), 2);
  CHECK(one.violations.empty());
  CHECK(one.samples > 0);
  REQUIRE(one.records.size() == two.records.size());
  for (std::size_t i = 0; i < one.records.size(); ++i) {
    CHECK(one.records[i].instance == two.records[i].instance);
    CHECK(one.records[i].bound_id == two.records[i].bound_id);
    CHECK(one.records[i].exact == two.records[i].exact);
  }
}

TEST_CASE("exact evaluator") {
  const ExactEvaluator eval(params_from_probs(std::vector<double>{0.2, 0.2, 0.1}));
  CHECK(eval.uniform(BoundKind::l1, BoundTarget::poisson) ==
        doctest::Approx(2.0 * eval.uniform(BoundKind::tv, BoundTarget::poisson)));
  CHECK(eval.at(BoundKind::nonuniform_k, BoundTarget::poisson, 500) == 0.0);
  CHECK_THROWS_AS(eval.uniform(BoundKind::nonuniform_p, BoundTarget::p1), UsageError);
}

TEST_CASE("truncation sweep") {
  std::vector<GridInstance> grid{{"c", params_from_probs(std::vector<double>(20, 0.05))}};
  const auto rep = truncation_sweep(grid, 6);
  CHECK(rep.violations.empty());
  CHECK(rep.samples == 7);
}
