#include "poisapprox/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "poisapprox/charlier.hpp"
#include "poisapprox/errors.hpp"
#include "poisapprox/expansion.hpp"
#include "poisapprox/measures.hpp"
#include "poisapprox/metrics.hpp"
#include "poisapprox/numeric.hpp"

namespace poisapprox {

namespace {

using cplx = std::complex<double>;

constexpr double kBatterySlack = 1e-12;
constexpr double kSweepSlack = 1e-10;

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : gen_(seed) {}
  double next() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }
  cplx disk(double radius) {
    const double r = radius * std::sqrt(next());
    return std::polar(r, 2.0 * std::numbers::pi * next());
  }

 private:
  std::mt19937_64 gen_;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(cplx z) { return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")"; }

std::string fmt(const std::vector<cplx>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s + "]";
}

cplx centred(const std::vector<cplx>& v) {
  cplx prod = 1.0;
  for (const cplx& x : v) prod *= (1.0 + x) * std::exp(-x);
  return prod;
}

struct Check {
  std::string id;
  std::function<void(Uniform&, double& lhs, double& rhs, std::string& inputs)> run;
};

std::vector<Check> lemma_checks() {
  const double k1 = c1();
  const double k2 = c2();
  std::vector<Check> checks;
  checks.push_back({"ez-ineq", [](Uniform& u, double& lhs, double& rhs, std::string& in) {
                      const cplx z = u.disk(3.0);
                      lhs = std::abs((1.0 + z) * std::exp(-z));
                      rhs = std::exp(0.5 * std::norm(z));
                      in = fmt(z);
                    }});
  checks.push_back({"ez-ineq2-m1", [k1](Uniform& u, double& lhs, double& rhs, std::string& in) {
                      const cplx z = u.disk(3.0);
                      lhs = std::abs((1.0 + z) * std::exp(-z) - 1.0);
                      rhs = k1 * std::norm(z) * std::exp(0.5 * std::norm(z));
                      in = fmt(z);
                    }});
  checks.push_back({"ez-ineq2-m2", [k2](Uniform& u, double& lhs, double& rhs, std::string& in) {
                      const cplx z = u.disk(3.0);
                      lhs = std::abs((1.0 + z) * std::exp(-z) - 1.0 + 0.5 * z * z);
                      rhs = k2 * std::pow(std::abs(z), 3.0) * std::exp(0.5 * std::norm(z));
                      in = fmt(z);
                    }});
  const auto tuple = [](Uniform& u) {
    std::vector<cplx> v(1 + u.below(8));
    for (auto& x : v) x = u.disk(1.5);
    return sample_stats(std::move(v));
  };
  checks.push_back({"ch-ineq1", [=](Uniform& u, double& lhs, double& rhs, std::string& in) {
                      const auto s = tuple(u);
                      lhs = std::abs(centred(s.v) - 1.0);
                      rhs = k1 * s.V2 * std::exp(0.5 * s.V2);
                      in = fmt(s.v);
                    }});
  checks.push_back({"ineq-p1", [=](Uniform& u, double& lhs, double& rhs, std::string& in) {
                      const auto s = tuple(u);
                      cplx sq = 0.0;
                      for (const cplx& x : s.v) sq += x * x;
                      lhs = std::abs(centred(s.v) - 1.0 + 0.5 * sq);
                      rhs = (0.25 * k1 * s.V2 * s.V2 + k2 * s.V3) * std::exp(0.5 * s.V2);
                      in = fmt(s.v);
                    }});
  checks.push_back({"ineq-p2", [=](Uniform& u, double& lhs, double& rhs, std::string& in) {
                      const auto s = tuple(u);
                      cplx sq = 0.0;
                      for (const cplx& x : s.v) sq += x * x;
                      lhs = std::abs(centred(s.v) - std::exp(-0.5 * sq));
                      rhs = (k2 * s.V3 + 0.125 * s.V4) * std::exp(0.5 * s.V2);
                      in = fmt(s.v);
                    }});
  checks.push_back({"xlogx", [](Uniform& u, double& lhs, double& rhs, std::string& in) {
                      const double x = 50.0 * (1.0 - u.next());  // (0, 50]
                      lhs = (1.0 - x) * (1.0 - x) / (2.0 * (1.0 + x));
                      rhs = psi(x);
                      in = fmt(x);
                    }});
  checks.push_back({"z-lemma", [](Uniform& u, double& lhs, double& rhs, std::string& in) {
                      const double lambda = 100.0 * (1.0 - u.next());
                      const auto hi = static_cast<std::uint64_t>(lambda + 10.0 * std::sqrt(lambda) + 10.0);
                      const auto m = static_cast<std::int64_t>(u.below(hi + 1));
                      const TailSplit t = tail_split(lambda, m);
                      lhs = t.z_value;
                      rhs = std::min(0.5, t.z_bound);
                      in = "lambda=" + fmt(lambda) + ",m=" + std::to_string(m);
                    }});
  checks.push_back({"power-mean", [=](Uniform& u, double& lhs, double& rhs, std::string& in) {
                      const auto s = tuple(u);
                      lhs = s.V4;
                      rhs = s.V2 * s.V2;
                      in = fmt(s.v);
                    }});
  return checks;
}

struct Outcome {
  std::vector<ViolationRecord> violations;
  std::vector<DominanceRecord> records;
  std::vector<std::pair<std::string, std::int64_t>> checks;
};

void count(Outcome& out, const std::string& id) {
  for (auto& [name, n] : out.checks) {
    if (name == id) {
      ++n;
      return;
    }
  }
  out.checks.emplace_back(id, 1);
}

void judge(Outcome& out, std::size_t index, const GridInstance& inst, const std::string& id, BoundKind kind,
           BoundTarget target, std::int64_t m, double exact, double bound) {
  count(out, id);
  if (exact > bound + kSweepSlack) {
    out.violations.push_back({id, inst.label + (m >= 0 ? ",m=" + std::to_string(m) : ""), exact, bound,
                              bound - exact});
  }
  (void)index;
  (void)kind;
  (void)target;
}

/// Evaluates a nonuniform bound at every m of the gap profile.
void sweep_nonuniform(Outcome& out, std::size_t index, const GridInstance& inst, const ExactEvaluator& d,
                      const std::string& id, BoundKind kind, BoundTarget target,
                      const std::function<BoundResult(std::int64_t)>& bound_at) {
  const auto gaps = d.gaps(target);
  DominanceRecord worst{index, id, kind, target, -1, 0.0, 0.0};
  double worst_ratio = -1.0;
  for (const auto& g : gaps) {
    const BoundResult b = bound_at(g.m);
    if (!b.valid) continue;
    const double exact = kind == BoundKind::nonuniform_k ? g.cdf_gap : g.pmf_gap;
    judge(out, index, inst, id, kind, target, g.m, exact, b.value);
    const double ratio = b.value > 0.0 ? exact / b.value : (exact > 0.0 ? INFINITY : 0.0);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst.m = g.m;
      worst.exact = exact;
      worst.bound = b.value;
    }
  }
  if (worst_ratio >= 0.0) out.records.push_back(worst);
}

Outcome sweep_instance(std::size_t index, const GridInstance& inst, const std::set<BoundFamily>& families,
                       const std::set<BoundKind>& kinds) {
  Outcome out;
  const BernoulliParams& params = inst.params;
  if (!(params.lambda > 0.0)) return out;
  const ExactEvaluator d(params);

  for (const BoundFamily family : {BoundFamily::first, BoundFamily::second, BoundFamily::signed_measure}) {
    if (!families.contains(family)) continue;
    for (const BoundPair pair : supported_pairs(family)) {
      if (!kinds.contains(pair.kind)) continue;
      PaperBoundOptions opt;
      opt.versus = pair.target;
      if (pair.kind == BoundKind::nonuniform_k || pair.kind == BoundKind::nonuniform_p) {
        const std::string id = std::string(to_string(family)) + "/" + std::string(to_string(pair.kind)) + "/" +
                               std::string(to_string(pair.target));
        sweep_nonuniform(out, index, inst, d, id, pair.kind, pair.target, [&](std::int64_t m) {
          PaperBoundOptions o = opt;
          o.m = m;
          return paper_bound(family, pair.kind, params, o);
        });
        continue;
      }
      const double exact = d.uniform(pair.kind, pair.target);
      for (const bool roos : {false, true}) {
        if (roos && !(family == BoundFamily::second && pair.kind == BoundKind::tv && pair.target == BoundTarget::poisson)) {
          continue;
        }
        opt.roos_constant = roos;
        const BoundResult b = paper_bound(family, pair.kind, params, opt);
        if (!b.valid) continue;
        const std::string id = b.citation_id + (roos ? "/roos" : "");
        judge(out, index, inst, id, pair.kind, pair.target, -1, exact, b.value);
        out.records.push_back({index, id, pair.kind, pair.target, -1, exact, b.value});
      }
    }
  }

  if (families.contains(BoundFamily::literature)) {
    for (const auto& e : literature_catalog()) {
      if (!kinds.contains(e.kind)) continue;
      if (e.needs_m) {
        sweep_nonuniform(out, index, inst, d, e.citation_id, e.kind, e.target,
                         [&](std::int64_t m) { return literature_bound(e.citation_id, params, m); });
        continue;
      }
      const BoundResult b = literature_bound(e.citation_id, params);
      if (!b.valid) continue;
      const double exact = d.uniform(e.kind, e.target);
      judge(out, index, inst, e.citation_id, e.kind, e.target, -1, exact, b.value);
      out.records.push_back({index, e.citation_id, e.kind, e.target, -1, exact, b.value});
    }
  }
  return out;
}

template <typename Fn>
std::vector<Outcome> run_parallel(std::size_t count, unsigned threads, Fn fn) {
  std::vector<Outcome> results(count);
  if (threads == 0) threads = sweep_threads();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

void merge(BatteryReport& rep, std::vector<Outcome>&& outcomes) {
  for (auto& o : outcomes) {
    for (auto& v : o.violations) rep.violations.push_back(std::move(v));
    for (auto& r : o.records) rep.records.push_back(std::move(r));
    for (auto& [id, n] : o.checks) {
      auto it = std::find_if(rep.checks.begin(), rep.checks.end(), [&](const auto& c) { return c.first == id; });
      if (it == rep.checks.end()) {
        rep.checks.emplace_back(id, n);
      } else {
        it->second += n;
      }
    }
  }
  for (const auto& [id, n] : rep.checks) rep.samples += n;
}

GridInstance make_instance(std::string label, std::vector<double> probs) {
  return {std::move(label), params_from_probs(probs)};
}

}  // namespace

ExactEvaluator::ExactEvaluator(const BernoulliParams& params) : params_(params) {
  pb_ = poisson_binomial_pmf(params_);
  std::int64_t hi = pb_.hi();
  if (params_.lambda > 0.0) {
    const SupportRange hint{0, pb_.hi()};
    p1_ = signed_measure_pmf(params_, SignedVariant::p1, hint);
    p2_ = signed_measure_pmf(params_, SignedVariant::p2, hint);
    hi = std::max({hi, p1_.hi(), p2_.hi()});
  }
  pois_ = poisson_pmf(params_.lambda, SupportRange{0, hi});
}

MassView ExactEvaluator::target(BoundTarget t) const {
  if (t != BoundTarget::poisson && !(params_.lambda > 0.0)) {
    throw DomainError("signed approximants need lambda > 0");
  }
  switch (t) {
    case BoundTarget::p1: return p1_;
    case BoundTarget::p2: return p2_;
    default: return pois_;
  }
}

double ExactEvaluator::uniform(BoundKind kind, BoundTarget t) const {
  const MassView q = target(t);
  switch (kind) {
    case BoundKind::tv: return distance(DistanceKind::tv, pb_, q).value;
    case BoundKind::l1: return 2.0 * distance(DistanceKind::tv, pb_, q).value;
    case BoundKind::chi2:
      return t == BoundTarget::poisson ? distance(DistanceKind::chi2, pb_, q).value
                                       : distance(DistanceKind::chi2, pb_, q, MassView(pois_)).value;
    case BoundKind::kl: return distance(DistanceKind::kl, pb_, q).value;
    case BoundKind::wasserstein: return distance(DistanceKind::wasserstein, pb_, q).value;
    case BoundKind::kolmogorov: return distance(DistanceKind::kolmogorov, pb_, q).value;
    case BoundKind::point: return distance(DistanceKind::point, pb_, q).value;
    case BoundKind::chi2_root_gap: {
      const double chi2 = distance(DistanceKind::chi2, pb_, pois_).value;
      const double th = params_.theta;
      return std::fabs(std::sqrt(chi2) - std::sqrt(1.0 / std::sqrt(1.0 - th * th) - 1.0));
    }
    case BoundKind::nonuniform_k:
    case BoundKind::nonuniform_p: break;
  }
  throw UsageError("nonuniform kinds need an index m");
}

std::vector<GapPoint> ExactEvaluator::gaps(BoundTarget t) const {
  return nonuniform_gap(pb_, target(t), params_.lambda);
}

double ExactEvaluator::at(BoundKind kind, BoundTarget t, std::int64_t m) const {
  for (const GapPoint& g : gaps(t)) {
    if (g.m == m) return kind == BoundKind::nonuniform_k ? g.cdf_gap : g.pmf_gap;
  }
  return 0.0;
}

SampleStats sample_stats(std::vector<cplx> v) {
  SampleStats s;
  s.v = std::move(v);
  CompensatedSum v1, v2, v3, v4;
  for (const cplx& x : s.v) {
    const double a = std::abs(x);
    v1 += a;
    v2 += a * a;
    v3 += a * a * a;
    v4 += a * a * a * a;
  }
  s.V1 = v1.value();
  s.V2 = v2.value();
  s.V3 = v3.value();
  s.V4 = v4.value();
  return s;
}

const std::vector<std::string>& battery_lemmas() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : lemma_checks()) out.push_back(c.id);
    return out;
  }();
  return names;
}

BatteryReport inequality_battery(std::uint64_t seed, std::int64_t samples) {
  if (samples < 1) throw DomainError("samples must be at least 1");
  BatteryReport rep;
  rep.seed = seed;
  const auto checks = lemma_checks();
  for (std::size_t c = 0; c < checks.size(); ++c) {
    // Each lemma draws from its own stream so adding a lemma never shifts
    // the samples of another.
    Uniform u(seed + 0x9E3779B97F4A7C15ULL * (c + 1));
    for (std::int64_t i = 0; i < samples; ++i) {
      double lhs = 0.0;
      double rhs = 0.0;
      std::string inputs;
      checks[c].run(u, lhs, rhs, inputs);
      if (!(lhs <= rhs * (1.0 + kBatterySlack) + kBatterySlack)) {
        rep.violations.push_back({checks[c].id, inputs, lhs, rhs, rhs - lhs});
      }
    }
    rep.checks.emplace_back(checks[c].id, samples);
    rep.samples += samples;
  }
  return rep;
}

std::vector<GridInstance> default_grid() {
  std::vector<GridInstance> grid;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  for (const int n : {5, 20, 100}) {
    for (const double p : {0.01, 0.1, 0.3, 0.5}) {
      grid.push_back(make_instance("uniform(n=" + std::to_string(n) + ",p=" + fmt(p) + ")",
                                   std::vector<double>(static_cast<std::size_t>(n), p)));
    }
    for (const double c : {0.5, 1.0}) {
      std::vector<double> probs;
      for (int j = 1; j <= n; ++j) probs.push_back(c * std::ldexp(1.0, -j));
      grid.push_back(make_instance("geometric(n=" + std::to_string(n) + ",c=" + fmt(c) + ")", probs));
    }
    std::vector<double> probs;
    for (int j = 1; j <= n; ++j) {
      const double x = j * phi;
      probs.push_back(0.05 + 0.5 * (x - std::floor(x)));
    }
    grid.push_back(make_instance("mixed(n=" + std::to_string(n) + ")", probs));
  }
  std::erase_if(grid, [](const GridInstance& g) { return g.params.theta > 0.5; });
  return grid;
}

std::vector<GridInstance> lambda_sweep_grid() {
  std::vector<GridInstance> grid;
  for (const int n : {50, 250, 1000}) {
    grid.push_back(make_instance("uniform(n=" + std::to_string(n) + ",p=0.2)",
                                 std::vector<double>(static_cast<std::size_t>(n), 0.2)));
  }
  return grid;
}

std::set<BoundKind> all_bound_kinds() {
  return {BoundKind::tv,          BoundKind::chi2,         BoundKind::kl,           BoundKind::wasserstein,
          BoundKind::kolmogorov,  BoundKind::point,        BoundKind::nonuniform_k, BoundKind::nonuniform_p,
          BoundKind::l1,          BoundKind::chi2_root_gap};
}

BatteryReport dominance_sweep(const std::vector<GridInstance>& grid, const std::set<BoundFamily>& families,
                              const std::set<BoundKind>& kinds, unsigned threads) {
  BatteryReport rep;
  merge(rep, run_parallel(grid.size(), threads,
                          [&](std::size_t i) { return sweep_instance(i, grid[i], families, kinds); }));
  return rep;
}

BatteryReport truncation_sweep(const std::vector<GridInstance>& grid, int n_max) {
  BatteryReport rep;
  std::vector<Outcome> outcomes(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const BernoulliParams& p = grid[i].params;
    if (!(p.lambda > 0.0) || p.theta > 0.4) continue;
    for (int N = 0; N <= n_max; ++N) {
      const double measured = charlier_truncation_l1_error(p, N);
      const double bound = truncation_tail_bound(N, p.lambda, 1.0, 0.5 * p.lambda2, 1.0, TruncationForm::l1);
      const std::string id = "truncation-l1/N=" + std::to_string(N);
      judge(outcomes[i], i, grid[i], id, BoundKind::l1, BoundTarget::poisson, -1, measured, bound);
      outcomes[i].records.push_back({i, id, BoundKind::l1, BoundTarget::poisson, -1, measured, bound});
    }
  }
  merge(rep, std::move(outcomes));
  return rep;
}

unsigned sweep_threads() {
  if (const char* env = std::getenv("CHARLIER_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace poisapprox
