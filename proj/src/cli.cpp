#include "poisapprox/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "poisapprox/bounds.hpp"
#include "poisapprox/errors.hpp"
#include "poisapprox/expansion.hpp"
#include "poisapprox/measures.hpp"
#include "poisapprox/metrics.hpp"
#include "poisapprox/verify.hpp"

namespace poisapprox {

namespace {

using json = nlohmann::json;

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

BernoulliParams load_params(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return params_from_json(text);
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") throw UsageError("format must be json or csv");
}

int cmd_distances(const std::string& path, const std::string& format, const std::string& approx,
                  bool emit_measure, std::ostream& out) {
  check_format(format);
  const BernoulliParams params = load_params(path);
  const BoundTarget target = bound_target_from_string(approx);
  const ExactEvaluator eval(params);
  const MassView q = eval.target(target);

  std::vector<std::pair<DistanceKind, double>> values;
  for (const DistanceKind kind : kAllDistanceKinds) {
    double v = NAN;
    if (target == BoundTarget::poisson) {
      continue;
    } else if (kind == DistanceKind::chi2) {
      v = eval.uniform(BoundKind::chi2, target);
    } else if (kind != DistanceKind::kl) {
      v = distance(kind, eval.law(), q).value;
    }
    values.emplace_back(kind, v);
  }
  if (target == BoundTarget::poisson) {
    for (const auto& r : poisson_distances(params)) values.emplace_back(r.kind, r.value);
  }

  if (format == "json") {
    json doc = json::object();
    for (const auto& [kind, v] : values) {
      doc[std::string(to_string(kind))] = std::isnan(v) ? json(nullptr) : json(v);
    }
    if (emit_measure) {
      json m = json::object();
      m["offset"] = q.offset;
      m["values"] = std::vector<double>(q.values.begin(), q.values.end());
      doc["measure"] = m;
    }
    out << doc.dump() << "\n";
    return 0;
  }
  out << "kind,value\n";
  for (const auto& [kind, v] : values) out << to_string(kind) << "," << (std::isnan(v) ? "" : num(v)) << "\n";
  if (emit_measure) {
    out << "m,mass\n";
    for (std::int64_t m = q.lo(); m <= q.hi(); ++m) out << m << "," << num(q.at(m)) << "\n";
  }
  return 0;
}

struct BoundRow {
  BoundResult result;
  std::string family;
  double exact = NAN;
};

std::vector<BoundRow> collect_bounds(const ExactEvaluator& eval, const std::string& family_name,
                                     std::optional<std::int64_t> m) {
  const BernoulliParams& params = eval.params();
  std::vector<BoundRow> rows;
  const auto exact_of = [&](const BoundResult& b) -> double {
    if (!b.valid) return NAN;
    if (b.kind == BoundKind::nonuniform_k || b.kind == BoundKind::nonuniform_p) return eval.at(b.kind, b.target, *b.m);
    return eval.uniform(b.kind, b.target);
  };
  const bool all = family_name == "all";
  if (!all && family_name != "literature") bound_family_from_string(family_name);
  for (const BoundFamily family : {BoundFamily::first, BoundFamily::second, BoundFamily::signed_measure}) {
    if (!all && to_string(family) != family_name) continue;
    for (const BoundPair pair : supported_pairs(family)) {
      const bool nonuniform = pair.kind == BoundKind::nonuniform_k || pair.kind == BoundKind::nonuniform_p;
      if (nonuniform && !m) continue;
      PaperBoundOptions opt;
      opt.versus = pair.target;
      if (nonuniform) opt.m = m;
      BoundResult b = paper_bound(family, pair.kind, params, opt);
      rows.push_back({b, std::string(to_string(family)), exact_of(b)});
    }
  }
  if (all || family_name == "literature") {
    for (const auto& e : literature_catalog()) {
      if (e.needs_m && !m) continue;
      BoundResult b = literature_bound(e.citation_id, params, e.needs_m ? m : std::nullopt);
      if (e.needs_m && b.valid) b.m = m;
      rows.push_back({b, "literature", exact_of(b)});
    }
  }
  return rows;
}

int cmd_bounds(const std::string& path, const std::string& format, const std::string& family,
               std::optional<std::int64_t> m, std::ostream& out) {
  check_format(format);
  if (m && *m < 0) throw DomainError("m must be nonnegative");
  const ExactEvaluator eval(load_params(path));
  const auto rows = collect_bounds(eval, family, m);
  if (format == "json") {
    json doc = json::object();
    for (const auto& r : rows) {
      json e = json::object();
      e["family"] = r.family;
      e["kind"] = std::string(to_string(r.result.kind));
      e["target"] = std::string(to_string(r.result.target));
      e["value"] = r.result.valid ? json(r.result.value) : json(nullptr);
      e["valid"] = r.result.valid;
      if (!r.result.valid) e["reason"] = r.result.validity_reason;
      e["exact_distance"] = std::isnan(r.exact) ? json(nullptr) : json(r.exact);
      doc[r.result.citation_id] = e;
    }
    out << doc.dump() << "\n";
    return 0;
  }
  out << "citation_id,family,kind,target,value,valid,exact_distance,slack_ratio\n";
  for (const auto& r : rows) {
    const bool ok = r.result.valid;
    out << r.result.citation_id << "," << r.family << "," << to_string(r.result.kind) << ","
        << to_string(r.result.target) << "," << (ok ? num(r.result.value) : "") << "," << (ok ? "true" : "false")
        << "," << (ok ? num(r.exact) : "") << ","
        << (ok && r.exact > 0.0 ? num(r.result.value / r.exact) : "") << "\n";
  }
  return 0;
}

ExpansionVariant variant_from_string(const std::string& s) {
  if (s == "full_f") return ExpansionVariant::full_f;
  if (s == "F_minus_poisson") return ExpansionVariant::F_minus_poisson;
  if (s == "F_minus_P1") return ExpansionVariant::F_minus_P1;
  if (s == "F_minus_P2") return ExpansionVariant::F_minus_P2;
  throw UsageError("unknown variant '" + s + "'; expected full_f, F_minus_poisson, F_minus_P1 or F_minus_P2");
}

int cmd_expand(const std::string& path, int order, const std::string& variant, const std::string& method,
               std::ostream& out) {
  if (order < 0 || order > kMaxExpansionOrder) {
    throw DomainError("order must lie in [0, " + std::to_string(kMaxExpansionOrder) + "]");
  }
  CoefficientMethod cm;
  if (method == "convolution") {
    cm = CoefficientMethod::symmetric_convolution;
  } else if (method == "quadrature") {
    cm = CoefficientMethod::circle_quadrature;
  } else {
    throw UsageError("method must be convolution or quadrature");
  }
  const BernoulliParams params = load_params(path);
  const auto ec = charlier_coefficients(params, variant_from_string(variant), order, cm);
  out << "j,a_j,shorgin_bound,method_disagreement\n";
  for (int j = 0; j <= order; ++j) {
    const auto i = static_cast<std::size_t>(j);
    const std::string dis = ec.convolution.empty() ? "" : num(ec.disagreement[i]);
    out << j << "," << num(ec.coeffs[i]) << "," << num(shorgin_envelope(params.lambda2, j)) << "," << dis << "\n";
  }
  return 0;
}

json report_json(const BatteryReport& rep) {
  json doc = json::object();
  doc["samples"] = rep.samples;
  json checks = json::object();
  for (const auto& [id, n] : rep.checks) checks[id] = n;
  doc["checks"] = checks;
  json vs = json::array();
  for (const auto& v : rep.violations) {
    vs.push_back({{"id", v.id}, {"inputs", v.inputs}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"margin", v.margin}});
  }
  doc["violations"] = vs;
  return doc;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::int64_t samples, std::ostream& out) {
  if (suite != "all" && suite != "battery" && suite != "dominance" && suite != "truncation") {
    throw UsageError("suite must be all, battery, dominance or truncation");
  }
  json doc = json::object();
  doc["seed"] = seed;
  std::size_t violations = 0;
  if (suite == "all" || suite == "battery") {
    const auto rep = inequality_battery(seed, samples);
    violations += rep.violations.size();
    doc["battery"] = report_json(rep);
  }
  if (suite == "all" || suite == "dominance") {
    const std::set<BoundFamily> families{BoundFamily::first, BoundFamily::second, BoundFamily::signed_measure,
                                         BoundFamily::literature};
    auto rep = dominance_sweep(default_grid(), families, all_bound_kinds());
    violations += rep.violations.size();
    doc["dominance"] = report_json(rep);
    rep = dominance_sweep(lambda_sweep_grid(), {BoundFamily::signed_measure}, all_bound_kinds());
    violations += rep.violations.size();
    doc["lambda_sweep"] = report_json(rep);
  }
  if (suite == "all" || suite == "truncation") {
    const auto rep = truncation_sweep(default_grid(), 6);
    violations += rep.violations.size();
    doc["truncation"] = report_json(rep);
  }
  doc["passed"] = violations == 0;
  out << doc.dump(2) << "\n";
  return violations == 0 ? 0 : 1;
}

int cmd_compare(const std::string& path, const std::string& format, std::ostream& out) {
  check_format(format);
  const ExactEvaluator eval(load_params(path));
  const double exact = eval.uniform(BoundKind::tv, BoundTarget::poisson);
  std::vector<BoundRow> rows;
  for (auto& r : collect_bounds(eval, "all", std::nullopt)) {
    if (r.result.kind == BoundKind::tv && r.result.target == BoundTarget::poisson) rows.push_back(std::move(r));
  }
  PaperBoundOptions roos;
  roos.versus = BoundTarget::poisson;
  roos.roos_constant = true;
  BoundResult rb = paper_bound(BoundFamily::second, BoundKind::tv, eval.params(), roos);
  rb.citation_id += "/roos";
  rows.push_back({rb, "second", rb.valid ? exact : NAN});
  std::stable_sort(rows.begin(), rows.end(), [](const BoundRow& a, const BoundRow& b) {
    if (a.result.valid != b.result.valid) return a.result.valid;
    return a.result.valid && a.result.value < b.result.value;
  });

  if (format == "json") {
    json doc = json::object();
    doc["exact_tv"] = exact;
    json arr = json::array();
    int rank = 0;
    for (const auto& r : rows) {
      json e = {{"citation_id", r.result.citation_id}, {"family", r.family}, {"valid", r.result.valid}};
      if (r.result.valid) {
        e["rank"] = ++rank;
        e["value"] = r.result.value;
        e["ratio"] = exact > 0.0 ? json(r.result.value / exact) : json(nullptr);
        e["dominates_exact"] = r.result.value >= exact;
      } else {
        e["reason"] = r.result.validity_reason;
      }
      arr.push_back(e);
    }
    doc["rows"] = arr;
    out << doc.dump() << "\n";
    return 0;
  }
  out << "rank,citation_id,family,value,exact_tv,ratio,valid,dominates_exact\n";
  int rank = 0;
  for (const auto& r : rows) {
    if (r.result.valid) {
      out << ++rank << "," << r.result.citation_id << "," << r.family << "," << num(r.result.value) << ","
          << num(exact) << "," << (exact > 0.0 ? num(r.result.value / exact) : "") << ",true,"
          << (r.result.value >= exact ? "true" : "false") << "\n";
    } else {
      out << "," << r.result.citation_id << "," << r.family << ",," << num(exact) << ",,false,\n";
    }
  }
  return 0;
}

void diagnostic(std::ostream& err, std::string_view code, const std::string& message) {
  std::string flat = message;
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  err << "error: code=" << code << " message=" << flat << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poisson approximation of Poisson-binomial laws"};
  app.require_subcommand(1);

  std::string probs;
  std::string format = "json";
  std::string approx = "poisson";
  bool emit_measure = false;
  auto* distances = app.add_subcommand("distances", "Exact distances to Poisson, P1 or P2");
  distances->add_option("--probs", probs, "JSON input file ('-' for stdin)")->required();
  distances->add_option("--format", format, "json or csv");
  distances->add_option("--approx", approx, "poisson, p1 or p2");
  distances->add_flag("--emit-measure", emit_measure, "Also print the approximating measure");

  std::string family = "all";
  std::optional<std::int64_t> m;
  std::string bounds_format = "csv";
  auto* bounds = app.add_subcommand("bounds", "Bound values with the exact distance they bound");
  bounds->add_option("--probs", probs, "JSON input file ('-' for stdin)")->required();
  bounds->add_option("--family", family, "first, second, signed, literature or all");
  bounds->add_option("--m", m, "Index for nonuniform bounds");
  bounds->add_option("--format", bounds_format, "csv or json");

  int order = 10;
  std::string variant = "F_minus_poisson";
  std::string method = "convolution";
  auto* expand = app.add_subcommand("expand", "Charlier-Jordan coefficients");
  expand->add_option("--probs", probs, "JSON input file ('-' for stdin)")->required();
  expand->add_option("--order", order, "Highest coefficient index");
  expand->add_option("--variant", variant, "full_f, F_minus_poisson, F_minus_P1 or F_minus_P2");
  expand->add_option("--method", method, "convolution or quadrature");

  std::string suite = "all";
  std::uint64_t seed = 42;
  std::int64_t samples = 100000;
  auto* verify = app.add_subcommand("verify", "Inequality battery and dominance sweeps");
  verify->add_option("--suite", suite, "all, battery, dominance or truncation");
  verify->add_option("--seed", seed, "Battery seed");
  verify->add_option("--samples", samples, "Samples per lemma");

  std::string compare_format = "csv";
  auto* compare = app.add_subcommand("compare", "Rank total variation bounds against the exact distance");
  compare->add_option("--probs", probs, "JSON input file ('-' for stdin)")->required();
  compare->add_option("--format", compare_format, "csv or json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    diagnostic(err, "usage", e.what());
    return 2;
  }

  try {
    if (*distances) return cmd_distances(probs, format, approx, emit_measure, out);
    if (*bounds) return cmd_bounds(probs, bounds_format, family, m, out);
    if (*expand) return cmd_expand(probs, order, variant, method, out);
    if (*verify) return cmd_verify(suite, seed, samples, out);
    return cmd_compare(probs, compare_format, out);
  } catch (const Error& e) {
    diagnostic(err, e.code(), e.what());
    return 2;
  }
}

}  // namespace poisapprox
