#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace poisapprox {

/// Success probabilities of independent Bernoulli trials and the scalars
/// derived from them. Construct with `params_from_probs`.
struct BernoulliParams {
  std::vector<double> probs;
  std::int64_t n = 0;
  double lambda = 0.0;   ///< sum p_j
  double lambda2 = 0.0;  ///< sum p_j^2
  double lambda3 = 0.0;
  double lambda4 = 0.0;
  double theta = 0.0;    ///< lambda2 / lambda, 0 when lambda == 0
  double sigma = 0.0;    ///< sqrt(lambda - lambda2)
  double p_star = 0.0;   ///< max p_j
  double varpi = 1.0;    ///< max_j sup_{0<=t<=1} exp(2 p_j t (1 - p_j t))
};

/// Inclusive integer range [lo, hi].
struct SupportRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

/// Finitely supported probability mass sequence; masses[i] is the mass at
/// offset + i. `log_masses` is either empty or parallel to `masses`.
struct Pmf {
  std::int64_t offset = 0;
  std::vector<double> masses;
  std::vector<double> log_masses;

  std::int64_t lo() const noexcept { return offset; }
  std::int64_t hi() const noexcept { return offset + static_cast<std::int64_t>(masses.size()) - 1; }
  double at(std::int64_t m) const noexcept;
  /// Natural log of the mass at m (-inf outside the support or on underflow).
  double log_at(std::int64_t m) const noexcept;
  double total() const noexcept;
};

enum class SignedVariant { p1, p2, custom };

/// Finitely supported signed mass sequence (entries may be negative).
struct SignedPmf {
  std::int64_t offset = 0;
  std::vector<double> values;
  SignedVariant variant = SignedVariant::custom;

  std::int64_t lo() const noexcept { return offset; }
  std::int64_t hi() const noexcept { return offset + static_cast<std::int64_t>(values.size()) - 1; }
  double at(std::int64_t m) const noexcept;
  double total() const noexcept;
};

/// Read-only view of either a Pmf or a SignedPmf, used by the metrics.
struct MassView {
  std::int64_t offset = 0;
  std::span<const double> values;
  std::span<const double> log_values;  ///< may be empty
  bool nonnegative = true;

  MassView() = default;
  MassView(const Pmf& p)  // NOLINT(google-explicit-constructor)
      : offset(p.offset), values(p.masses), log_values(p.log_masses), nonnegative(true) {}
  MassView(const SignedPmf& p)  // NOLINT(google-explicit-constructor)
      : offset(p.offset), values(p.values), nonnegative(false) {}

  std::int64_t lo() const noexcept { return offset; }
  std::int64_t hi() const noexcept { return offset + static_cast<std::int64_t>(values.size()) - 1; }
  double at(std::int64_t m) const noexcept;
  double log_at(std::int64_t m) const noexcept;
};

/// Poisson(lambda) tail split at m.
struct TailSplit {
  std::int64_t m = 0;
  double lower_mass = 0.0;  ///< P(zeta <= m)
  double upper_mass = 0.0;  ///< P(zeta > m)
  double z_value = 0.0;     ///< min(lower, upper)
  double z_bound = 1.0;     ///< exp(-(m - lambda)^2 / (2 (m + lambda)))
};

inline constexpr std::int64_t kMaxTrials = 10000;
inline constexpr double kPoissonTruncation = 1e-18;

BernoulliParams params_from_probs(std::span<const double> probs);

/// Parses {"probs": [...]} or {"uniform": {"n": N, "p": P}}.
BernoulliParams params_from_json(std::string_view json_text);

Pmf poisson_pmf(double lambda, std::optional<SupportRange> support_hint = std::nullopt);

/// Exact law of S_n by iterative convolution; length n + 1.
Pmf poisson_binomial_pmf(const BernoulliParams& params);

TailSplit tail_split(double lambda, std::int64_t m);

/// tail_split for every m in [lo, hi], sharing one cumulative pass.
std::vector<TailSplit> tail_splits(double lambda, SupportRange range);

double z_tail_bound(double lambda, std::int64_t m);

/// psi(x) = 1 - x + x log x, with psi(0) = 1.
double psi(double x);

}  // namespace poisapprox
