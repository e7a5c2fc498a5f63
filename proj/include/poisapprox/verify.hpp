#pragma once

#include <complex>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "poisapprox/bounds.hpp"
#include "poisapprox/core.hpp"
#include "poisapprox/metrics.hpp"

namespace poisapprox {

struct SampleStats {
  std::vector<std::complex<double>> v;
  double V1 = 0.0;
  double V2 = 0.0;
  double V3 = 0.0;
  double V4 = 0.0;
};

SampleStats sample_stats(std::vector<std::complex<double>> v);

struct ViolationRecord {
  std::string id;      ///< lemma or bound identifier
  std::string inputs;  ///< serialized sample or instance
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  ///< rhs - lhs
};

/// One checked bound on one instance; for nonuniform kinds the m with the
/// largest exact/bound ratio.
struct DominanceRecord {
  std::size_t instance = 0;
  std::string bound_id;
  BoundKind kind = BoundKind::tv;
  BoundTarget target = BoundTarget::poisson;
  std::int64_t m = -1;
  double exact = 0.0;
  double bound = 0.0;
};

struct BatteryReport {
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<ViolationRecord> violations;
  std::vector<std::pair<std::string, std::int64_t>> checks;  ///< per lemma or bound
  std::vector<DominanceRecord> records;
};

/// Names of the sampled lemmas, in battery order.
const std::vector<std::string>& battery_lemmas();

/// Uniform doubles in [0,1) from mt19937_64 as (x >> 11) * 2^-53; the same
/// seed gives the same report on every platform.
BatteryReport inequality_battery(std::uint64_t seed, std::int64_t samples);

/// Exact distances between the law of S_n and Poisson, P1 or P2, matching
/// the left-hand side of each bound kind: chi2 against P1/P2 is weighted by
/// the Poisson pmf, l1 is twice tv.
class ExactEvaluator {
 public:
  explicit ExactEvaluator(const BernoulliParams& params);

  double uniform(BoundKind kind, BoundTarget target) const;
  std::vector<GapPoint> gaps(BoundTarget target) const;
  /// cdf gap for nonuniform_k, pmf gap for nonuniform_p.
  double at(BoundKind kind, BoundTarget target, std::int64_t m) const;

  MassView target(BoundTarget t) const;
  const Pmf& law() const { return pb_; }
  const BernoulliParams& params() const { return params_; }

 private:
  BernoulliParams params_;
  Pmf pb_;
  Pmf pois_;
  SignedPmf p1_;
  SignedPmf p2_;
};

struct GridInstance {
  std::string label;
  BernoulliParams params;
};

/// n in {5, 20, 100} for uniform p in {0.01, 0.1, 0.3, 0.5}, geometric
/// p_j = c 2^-j (c in {0.5, 1}) and mixed p_j = 0.05 + 0.5 frac(j phi),
/// keeping theta <= 0.5.
std::vector<GridInstance> default_grid();

/// Uniform p = 0.2 with n in {50, 250, 1000} (lambda = 10, 50, 200).
std::vector<GridInstance> lambda_sweep_grid();

/// Every valid bound of the selected families and kinds is compared with
/// the exact distance; exceeding it by more than 1e-10 is a violation.
/// `threads` = 0 uses CHARLIER_THREADS or the hardware count.
BatteryReport dominance_sweep(const std::vector<GridInstance>& grid, const std::set<BoundFamily>& families,
                              const std::set<BoundKind>& kinds, unsigned threads = 0);

std::set<BoundKind> all_bound_kinds();

/// Measured L1 error of the N-term Charlier expansion against the l1
/// truncation bound with K = 1, H = lambda2/2, eps = 1, for N <= n_max on
/// instances with theta <= 0.4.
BatteryReport truncation_sweep(const std::vector<GridInstance>& grid, int n_max);

/// Thread count from CHARLIER_THREADS, else the hardware count (>= 1).
unsigned sweep_threads();

}  // namespace poisapprox
