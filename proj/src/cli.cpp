#include "hartogs/cli.hpp"

#include "hartogs/analysis.hpp"
#include "hartogs/errors.hpp"
#include "hartogs/kernel.hpp"
#include "hartogs/oracle.hpp"
#include "hartogs/polycoeff.hpp"
#include "hartogs/transform.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace hartogs::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

json cjson(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }
json pjson(const Point2C& p) { return {{"z1", cjson(p.z1)}, {"z2", cjson(p.z2)}}; }

std::uint64_t parse_count(const std::string& text, const std::string& flag) {
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw UsageError(flag + ": expected a count, got '" + text + "'");
  }
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) throw UsageError(flag + ": expected a count, got '" + text + "'");
  return static_cast<std::uint64_t>(v);
}

Point2C parse_point(const std::vector<std::string>& tokens, const std::string& flag) {
  if (tokens.size() != 2) throw UsageError(flag + ": expected two 're,im' tokens");
  try {
    return {parse_complex(tokens[0]), parse_complex(tokens[1])};
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

ThinDenominator parse_variant(const std::string& text) {
  if (text == "one-minus-t") return ThinDenominator::OneMinusT;
  if (text == "one-minus-s") return ThinDenominator::OneMinusS;
  throw UsageError("--thin-variant: expected one-minus-t or one-minus-s, got '" + text + "'");
}

std::string variant_name(ThinDenominator v) { return v == ThinDenominator::OneMinusT ? "one-minus-t" : "one-minus-s"; }

struct Report {
  json params = json::object();
  json results = json::object();
  std::optional<std::string> csv; // when set, emitted instead of JSON
  bool check_failed = false;
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string csv_preamble(const std::string& command) {
  return "# schema_version=" + std::to_string(kSchemaVersion) + " command=" + command + "\n";
}

double tol_or(const RunConfig& c, double fallback) { return c.tol.value_or(fallback); }
std::uint64_t n_or(std::uint64_t v, std::uint64_t fallback) { return v == 0 ? fallback : v; }

DomainSpec spec_of(const RunConfig& c) {
  try {
    return DomainSpec::parse(c.spec);
  } catch (const PreconditionError& e) {
    throw UsageError(std::string("--spec: ") + e.what());
  }
}

// ---- commands ---------------------------------------------------------

Report cmd_eval(const RunConfig& c) {
  if (!c.z || !c.w) throw UsageError("eval needs --z and --w");
  const DomainSpec spec = spec_of(c);
  const ThinDenominator variant = parse_variant(c.thin_variant);
  const KernelValue v = bergman(spec, *c.z, *c.w, {variant});
  Report r;
  r.params = {{"spec", spec.to_string()}, {"z", pjson(*c.z)}, {"w", pjson(*c.w)}, {"thin_variant", variant_name(variant)}};
  r.results = {{"spec", spec.to_string()},          {"z", pjson(*c.z)},
               {"w", pjson(*c.w)},                  {"value", cjson(v.value)},
               {"numerator", cjson(v.numerator)},   {"denominator", cjson(v.denominator)},
               {"near_singular", v.near_singular}};
  return r;
}

Report cmd_series_compare(const RunConfig& c) {
  const DomainSpec spec = spec_of(c);
  if (!spec.is_hartogs()) throw UsageError("series-compare needs a Hartogs triangle spec");
  const ThinDenominator variant = parse_variant(c.thin_variant);
  const std::uint64_t pairs = n_or(c.pairs, 50);
  const double tol = tol_or(c, 1e-6);
  Report r;
  r.params = {{"spec", spec.to_string()}, {"pairs", pairs},       {"seed", c.seed},
              {"tol", tol},               {"st_bound", c.st_bound}, {"series_rel_tol", c.series_rel_tol},
              {"thin_variant", variant_name(variant)}};
  json rows = json::array();
  double worst = 0.0;
  for (const auto& [z, w] : sample_interior_pairs(spec, pairs, c.seed, c.st_bound)) {
    const SeriesResult series = kernel_series_auto(spec, z, w, c.series_rel_tol);
    const KernelValue closed = kernel_from_args(spec, KernelArgs::from(z, w), {variant});
    const double dev = std::abs(series.value - closed.value) / std::abs(closed.value);
    worst = std::max(worst, dev);
    rows.push_back({{"z", pjson(z)},
                    {"w", pjson(w)},
                    {"series", cjson(series.value)},
                    {"closed", cjson(closed.value)},
                    {"rel_dev", dev},
                    {"a_max", series.truncation.a_max},
                    {"b_max", series.truncation.b_max},
                    {"terms_used", series.truncation.terms_used},
                    {"tail_estimate", series.truncation.tail_estimate}});
  }
  r.results = {{"pairs", rows}, {"max_rel_dev", worst}, {"passed", worst <= tol}};
  r.check_failed = worst > tol;
  return r;
}

Report cmd_bell_check(const RunConfig& c) {
  if (c.k < 1) throw UsageError("--k must be >= 1");
  const std::uint64_t pairs = n_or(c.pairs, 100);
  const double tol = tol_or(c, 1e-9);
  const auto zs = sample_interior(DomainSpec::classical(), pairs, c.seed);
  const auto ws = sample_interior(DomainSpec::fat(c.k), pairs, c.seed + 1);
  json residuals = json::array();
  double worst = 0.0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const double res = bell_residual(c.k, zs[i], ws[i]);
    residuals.push_back(res);
    worst = std::max(worst, res);
  }
  Report r;
  r.params = {{"k", c.k}, {"pairs", pairs}, {"seed", c.seed}, {"tol", tol}};
  r.results = {{"residuals", residuals}, {"max", worst}, {"passed", worst <= tol}};
  r.check_failed = worst > tol;
  return r;
}

struct MapChoice {
  ProperMap map;
  DomainSpec src;
  DomainSpec dst;
};

int map_exponent(const std::string& text, std::size_t prefix) {
  try {
    std::size_t used = 0;
    const int k = std::stoi(text.substr(prefix), &used);
    if (used + prefix != text.size() || k < 1) throw std::invalid_argument(text);
    return k;
  } catch (const std::exception&) {
    throw UsageError("--map: bad exponent in '" + text + "'");
  }
}

MapChoice parse_map(const std::string& text) {
  if (text == "shear") return {ProperMap::shear(), DomainSpec::classical(), DomainSpec::punctured_bidisc()};
  if (text.starts_with("shear-iter:")) {
    const int k = map_exponent(text, 11);
    return {ProperMap::shear_iter(k), DomainSpec::thin(k), DomainSpec::punctured_bidisc()};
  }
  if (text.starts_with("chain:")) {
    const int k = map_exponent(text, 6);
    return {ProperMap::shear(), DomainSpec::thin(k + 1), DomainSpec::thin(k)};
  }
  throw UsageError("--map: expected shear, shear-iter:k or chain:k, got '" + text + "'");
}

Report cmd_biholo_check(const RunConfig& c) {
  const MapChoice choice = parse_map(c.map);
  const ThinDenominator variant = parse_variant(c.thin_variant);
  const std::uint64_t pairs = n_or(c.pairs, 1000);
  const double tol = tol_or(c, 1e-12);
  json residuals = json::array();
  double worst = 0.0;
  for (const auto& [z, w] : sample_interior_pairs(choice.src, pairs, c.seed)) {
    const double res = biholo_residual(choice.map, choice.src, choice.dst, z, w, {variant});
    residuals.push_back(res);
    worst = std::max(worst, res);
  }
  Report r;
  r.params = {{"map", c.map},       {"source", choice.src.to_string()}, {"target", choice.dst.to_string()},
              {"pairs", pairs},     {"seed", c.seed},                   {"tol", tol},
              {"thin_variant", variant_name(variant)}};
  r.results = {{"residuals", residuals}, {"max", worst}, {"passed", worst <= tol}};
  r.check_failed = worst > tol;
  return r;
}

Report cmd_lqk(const RunConfig& c) {
  Report r;
  if (c.thin) {
    const std::uint64_t n = n_or(c.n, 100000);
    const ThinNonvanishingReport t = thin_nonvanishing(c.k, n, c.seed);
    r.params = {{"k", c.k}, {"thin", true}, {"n", n}, {"seed", c.seed}};
    r.results = {{"k", t.k},
                 {"pairs", t.pairs},
                 {"zero_hits", t.zero_hits},
                 {"min_abs_value", t.min_abs_value},
                 {"min_abs_numerator", t.min_abs_numerator},
                 {"max_numerator_deviation", t.max_numerator_deviation}};
    r.check_failed = t.zero_hits != 0;
    return r;
  }
  const ZeroWitness wit = lqk_witness(c.k);
  r.params = {{"k", c.k}, {"thin", false}};
  r.results = {{"k", wit.k},
               {"z", pjson(wit.z)},
               {"w", pjson(wit.w)},
               {"numerator_abs", wit.numerator_abs},
               {"confirmed", wit.confirmed}};
  r.check_failed = !wit.confirmed;
  return r;
}

Report cmd_zero_scan(const RunConfig& c) {
  ZeroScanGrid grid;
  grid.s_min = c.s_min;
  grid.s_max = c.s_max;
  grid.s_steps = c.s_steps;
  grid.t_steps = c.t_steps;
  grid.tolerance = tol_or(c, 1e-2);
  if (c.table != "roots" && c.table != "cells") throw UsageError("--table: expected roots or cells");
  const ZeroScanResult scan = zero_locus_scan(c.k, grid);
  Report r;
  r.params = {{"k", c.k},           {"s_min", grid.s_min},     {"s_max", grid.s_max}, {"s_steps", grid.s_steps},
              {"t_steps", grid.t_steps}, {"tol", grid.tolerance}, {"table", c.table}};
  json rows = json::array();
  std::ostringstream csv;
  csv << csv_preamble("zero-scan");
  if (c.table == "roots") {
    csv << "s,root,t_re,t_im,t_abs,realizable,residual\n";
    for (const auto& row : scan.rows) {
      for (std::size_t i = 0; i < row.roots.size(); ++i) {
        const auto& root = row.roots[i];
        csv << fmt(row.s) << ',' << i << ',' << fmt(root.t.real()) << ',' << fmt(root.t.imag()) << ','
            << fmt(std::abs(root.t)) << ',' << (root.realizable ? 1 : 0) << ',' << fmt(root.residual) << '\n';
        rows.push_back({{"s", row.s}, {"root", i}, {"t", cjson(root.t)}, {"realizable", root.realizable},
                        {"residual", root.residual}});
      }
    }
  } else {
    csv << "s,t_re,t_im,numerator_abs,realizable\n";
    for (const auto& cell : scan.cells) {
      csv << fmt(cell.s) << ',' << fmt(cell.t.real()) << ',' << fmt(cell.t.imag()) << ',' << fmt(cell.numerator_abs)
          << ',' << (cell.realizable ? 1 : 0) << '\n';
      rows.push_back({{"s", cell.s}, {"t", cjson(cell.t)}, {"numerator_abs", cell.numerator_abs},
                      {"realizable", cell.realizable}});
    }
  }
  r.results = {{"rows", rows}};
  if (!c.format_set || c.format == OutputFormat::Csv) r.csv = csv.str();
  return r;
}

Report cmd_asymptotics(const RunConfig& c) {
  const DomainSpec spec = spec_of(c);
  if (!spec.is_hartogs()) throw UsageError("asymptotics needs a Hartogs triangle spec");
  if (c.measure != "growth" && c.measure != "delta") throw UsageError("--measure: expected growth or delta");
  if (c.tail < 1) throw UsageError("--tail must be >= 1");
  const PathKind kind = [&] {
    try {
      return parse_path_kind(c.path);
    } catch (const PreconditionError& e) {
      throw UsageError(std::string("--path: ") + e.what());
    }
  }();
  const double max_quotient = tol_or(c, 10.0);
  const BoundaryPath path = boundary_path(spec, kind, c.steps);
  const AsymptoticReport rep = c.measure == "delta" ? delta_rate(spec, path, c.tail) : diagonal_ratio(spec, path, c.tail);

  Report r;
  r.params = {{"spec", spec.to_string()}, {"path", to_string(kind)}, {"measure", c.measure},
              {"steps", c.steps},         {"tail", c.tail},          {"max_quotient", max_quotient}};
  json rows = json::array();
  std::ostringstream csv;
  csv << csv_preamble("asymptotics") << "index,eps,z1_abs,z2_abs,kernel,comparison,ratio\n";
  for (std::size_t i = 0; i < rep.ratios.size(); ++i) {
    const Point2C& z = path.samples[i];
    csv << i << ',' << fmt(path.params[i]) << ',' << fmt(std::abs(z.z1)) << ',' << fmt(std::abs(z.z2)) << ','
        << fmt(rep.kernel[i]) << ',' << fmt(rep.comparison[i]) << ',' << fmt(rep.ratios[i]) << '\n';
    rows.push_back({{"eps", path.params[i]}, {"z", pjson(z)}, {"kernel", rep.kernel[i]},
                    {"comparison", rep.comparison[i]}, {"ratio", rep.ratios[i]}});
  }
  r.results = {{"samples", rows},
               {"min_ratio", rep.min_ratio},
               {"max_ratio", rep.max_ratio},
               {"tail_quotient", rep.tail_quotient},
               {"passed", rep.tail_quotient <= max_quotient}};
  r.check_failed = rep.tail_quotient > max_quotient;
  if (!c.format_set || c.format == OutputFormat::Csv) r.csv = csv.str();
  return r;
}

std::vector<std::pair<Point2C, Point2C>> ramadanov_pairs(const RunConfig& c) {
  std::vector<Point2C> pts = c.points;
  if (pts.empty()) pts = {{0.5, 0.6}, {0.3, 0.7}, {0.2, 0.9}};
  std::vector<std::pair<Point2C, Point2C>> pairs;
  for (const auto& p : pts) pairs.emplace_back(p, p);
  return pairs;
}

Report cmd_ramadanov(const RunConfig& c) {
  const auto pairs = ramadanov_pairs(c);
  const int k_max = c.k_max;
  const RamadanovTable table = ramadanov_table(pairs, k_max);

  Report r;
  json pts = json::array();
  for (const auto& [z, w] : pairs) pts.push_back(pjson(z));
  r.params = {{"k_max", k_max}, {"points", pts}, {"check", c.check}};

  std::ostringstream csv;
  csv << csv_preamble("ramadanov") << "k";
  for (std::size_t i = 0; i < pairs.size(); ++i) csv << ",e_" << i;
  csv << ",max_error,min_abs_kernel\n";
  json rows = json::array();
  for (const auto& row : table.rows) {
    csv << row.k;
    json errs = json::array();
    for (const auto& e : row.errors) {
      csv << ',' << (e ? fmt(*e) : "");
      errs.push_back(e ? json(*e) : json(nullptr));
    }
    csv << ',' << (row.max_error ? fmt(*row.max_error) : "") << ','
        << (row.min_abs_kernel ? fmt(*row.min_abs_kernel) : "") << '\n';
    rows.push_back({{"k", row.k},
                    {"errors", errs},
                    {"max_error", row.max_error ? json(*row.max_error) : json(nullptr)},
                    {"min_abs_kernel", row.min_abs_kernel ? json(*row.min_abs_kernel) : json(nullptr)}});
  }
  r.results = {{"k0", table.k0}, {"rows", rows}};

  if (c.check) {
    // e_k decreasing over the last 10 k, and e_kmax < e_k0 / 10, per pair.
    bool ok = true;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      std::vector<double> series;
      for (const auto& row : table.rows)
        if (row.errors[i]) series.push_back(*row.errors[i]);
      const std::size_t n = series.size();
      for (std::size_t j = n >= 10 ? n - 9 : 1; j < n; ++j) ok = ok && series[j] < series[j - 1];
      ok = ok && n > 0 && series.back() < series.front() / 10.0;
    }
    r.results["passed"] = ok;
    r.check_failed = !ok;
  }
  if (!c.format_set || c.format == OutputFormat::Csv) r.csv = csv.str();
  return r;
}

Report cmd_reproduce(const RunConfig& c) {
  if (!c.z) throw UsageError("reproduce needs --z");
  const DomainSpec spec = spec_of(c);
  const TestFunction f = [&] {
    try {
      return TestFunction::parse(c.function);
    } catch (const PreconditionError& e) {
      throw UsageError(std::string("--f: ") + e.what());
    }
  }();
  const std::uint64_t n = n_or(c.n, 10'000'000);
  const double tol = tol_or(c, 0.02);
  const ReproducingCheck chk = reproducing_check(spec, f, *c.z, n, c.seed);
  Report r;
  r.params = {{"spec", spec.to_string()}, {"f", f.name()}, {"z", pjson(*c.z)}, {"n", n}, {"seed", c.seed}, {"tol", tol}};
  r.results = {{"residual", chk.residual}, {"estimate", cjson(chk.estimate)}, {"expected", cjson(chk.expected)},
               {"std_error", chk.std_error}, {"n", chk.n},                      {"excluded", chk.excluded},
               {"passed", chk.residual <= tol}};
  r.check_failed = chk.residual > tol;
  return r;
}

Report cmd_identities(const RunConfig& c) {
  const IdentityReport rep = verify_identities(c.k_max);
  Report r;
  r.params = {{"k_max", c.k_max}, {"show_polys", c.show_polys}};
  json checks = json::array();
  for (const auto& chk : rep.checks) {
    json j = {{"k", chk.k},
              {"F1_eq_p", chk.f1_matches_p},
              {"F2_eq_q", chk.f2_matches_q},
              {"F3_eq_sk_p", chk.f3_matches_shifted_p},
              {"triple", chk.triple_consistent},
              {"passed", chk.passed()}};
    if (chk.first_mismatch)
      j["first_mismatch"] = {{"identity", chk.first_mismatch->identity},
                             {"power", chk.first_mismatch->power},
                             {"lhs", chk.first_mismatch->lhs.str()},
                             {"rhs", chk.first_mismatch->rhs.str()}};
    if (c.show_polys) {
      j["p"] = p(chk.k);
      j["q"] = q(chk.k);
    }
    checks.push_back(std::move(j));
  }
  r.results = {{"checks", checks}, {"passed", rep.passed()}};
  r.check_failed = !rep.passed();
  return r;
}

Report cmd_volume(const RunConfig& c) {
  const DomainSpec spec = spec_of(c);
  const std::uint64_t n = n_or(c.n, 1'000'000);
  const McEstimate est = inner_product_mc(spec, {0, 0}, {0, 0}, n, c.seed);
  Report r;
  r.params = {{"spec", spec.to_string()}, {"n", n}, {"seed", c.seed}};
  r.results = {{"volume", est.value.real()},
               {"std_error", est.std_error},
               {"acceptance", static_cast<double>(est.n) / static_cast<double>(est.draws)},
               {"draws", est.draws}};
  return r;
}

Report dispatch(const RunConfig& c) {
  if (c.command == "eval") return cmd_eval(c);
  if (c.command == "series-compare") return cmd_series_compare(c);
  if (c.command == "bell-check") return cmd_bell_check(c);
  if (c.command == "biholo-check") return cmd_biholo_check(c);
  if (c.command == "lqk") return cmd_lqk(c);
  if (c.command == "zero-scan") return cmd_zero_scan(c);
  if (c.command == "asymptotics") return cmd_asymptotics(c);
  if (c.command == "ramadanov") return cmd_ramadanov(c);
  if (c.command == "reproduce") return cmd_reproduce(c);
  if (c.command == "identities") return cmd_identities(c);
  if (c.command == "volume") return cmd_volume(c);
  throw UsageError("unknown command '" + c.command + "'");
}

} // namespace

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("expected 're,im', got '" + text + "'");
  auto num = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (part.empty() || used != part.size() || !std::isfinite(v))
      throw std::invalid_argument("expected 're,im', got '" + text + "'");
    return v;
  };
  return {num(text.substr(0, comma)), num(text.substr(comma + 1))};
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  RunConfig c;
  CLI::App app{"Bergman kernels of generalized Hartogs triangles: evaluation and verification"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  std::vector<std::string> z_tokens, w_tokens, point_tokens;
  std::string n_text, pairs_text, format_text = "json";

  auto add_spec = [&](CLI::App* s, const std::string& def) {
    c.spec = def;
    s->add_option("--spec", c.spec, "Domain: fat:k, thin:k, classical, bidisc, punctured-bidisc")->capture_default_str();
  };
  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", c.seed, "RNG seed")->capture_default_str(); };
  auto add_tol = [&](CLI::App* s, const std::string& what) { s->add_option("--tol", c.tol, what); };
  auto add_k = [&](CLI::App* s) { s->add_option("--k", c.k, "Exponent k")->capture_default_str(); };
  auto add_pairs = [&](CLI::App* s, const std::string& def) {
    s->add_option("--pairs", pairs_text, "Number of random interior pairs (default " + def + ")");
  };
  auto add_variant = [&](CLI::App* s) {
    s->add_option("--thin-variant", c.thin_variant, "Thin denominator: one-minus-t or one-minus-s")
        ->capture_default_str();
  };
  auto add_point = [&](CLI::App* s, const std::string& flag, std::vector<std::string>& into) {
    s->add_option(flag, into, "Point as two 're,im' tokens")->expected(2);
  };

  std::vector<CLI::App*> subs;
  auto* eval = app.add_subcommand("eval", "Evaluate a closed-form kernel; JSON KernelValue");
  add_spec(eval, "fat:2");
  add_point(eval, "--z", z_tokens);
  add_point(eval, "--w", w_tokens);
  add_variant(eval);
  subs.push_back(eval);

  auto* series = app.add_subcommand("series-compare", "Closed form vs monomial series on random pairs");
  add_spec(series, "fat:2");
  add_pairs(series, "50");
  add_seed(series);
  add_tol(series, "Max relative deviation (default 1e-6); exit 2 above it");
  series->add_option("--st-bound", c.st_bound, "Pairs satisfy |s|,|t| <= bound")->capture_default_str();
  series->add_option("--series-tol", c.series_rel_tol, "Relative series tail target")->capture_default_str();
  add_variant(series);
  subs.push_back(series);

  auto* bell = app.add_subcommand("bell-check", "Transformation rule for (z1, z2^k): H_1 -> H_k");
  add_k(bell);
  add_pairs(bell, "100");
  add_seed(bell);
  add_tol(bell, "Max residual (default 1e-9); exit 2 above it");
  subs.push_back(bell);

  auto* biholo = app.add_subcommand("biholo-check", "Biholomorphic invariance of the kernel");
  biholo->add_option("--map", c.map, "shear (H_1 -> DxD*), shear-iter:k (H_1/k -> DxD*), chain:k (H_1/(k+1) -> H_1/k)")
      ->capture_default_str();
  add_pairs(biholo, "1000");
  add_seed(biholo);
  add_tol(biholo, "Max residual (default 1e-12); exit 2 above it");
  add_variant(biholo);
  subs.push_back(biholo);

  auto* lqk = app.add_subcommand("lqk", "Kernel zero witness on H_k, or --thin non-vanishing scan on H_1/k");
  add_k(lqk);
  lqk->add_flag("--thin", c.thin, "Scan random pairs of H_1/k for zeros");
  lqk->add_option("--n", n_text, "Pairs for --thin (default 1e5)");
  add_seed(lqk);
  subs.push_back(lqk);

  auto* scan = app.add_subcommand("zero-scan", "Zero locus of the fat numerator over a real s slice (CSV)");
  add_k(scan);
  scan->add_option("--s-min", c.s_min)->capture_default_str();
  scan->add_option("--s-max", c.s_max)->capture_default_str();
  scan->add_option("--s-steps", c.s_steps)->capture_default_str();
  scan->add_option("--t-steps", c.t_steps, "Grid points per side of the t square [-1,1]^2")->capture_default_str();
  add_tol(scan, "Report cells with |numerator| below this (default 1e-2)");
  scan->add_option("--table", c.table,
                   "roots: columns s,root,t_re,t_im,t_abs,realizable,residual; "
                   "cells: columns s,t_re,t_im,numerator_abs,realizable")
      ->capture_default_str();
  subs.push_back(scan);

  auto* asym = app.add_subcommand(
      "asymptotics", "Diagonal kernel ratios along a boundary path (CSV columns index,eps,z1_abs,z2_abs,kernel,comparison,ratio)");
  add_spec(asym, "fat:2");
  asym->add_option("--path", c.path, "origin, top, levi or corner")->capture_default_str();
  asym->add_option("--measure", c.measure, "growth: (1-|z2|)^2 gap^2, delta: boundary distance^2")->capture_default_str();
  asym->add_option("--steps", c.steps, "Path length (>= 20)")->capture_default_str();
  asym->add_option("--tail", c.tail, "Samples in the tail quotient")->capture_default_str();
  add_tol(asym, "Max tail quotient max/min (default 10); exit 2 above it");
  subs.push_back(asym);

  auto* rama = app.add_subcommand("ramadanov", "|B_k - B_DxD*| on diagonal pairs (CSV columns k,e_0..,max_error,min_abs_kernel)");
  c.k_max = 25;
  rama->add_option("--kmax", c.k_max, "Largest k")->capture_default_str();
  add_point(rama, "--point", point_tokens);
  rama->get_option("--point")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)->description(
      "Point as two 're,im' tokens; repeatable (default (0.5,0.6) (0.3,0.7) (0.2,0.9))");
  rama->add_flag("--check", c.check, "Exit 2 unless every e_k decreases over the last 10 k and e_kmax < e_k0/10");
  subs.push_back(rama);

  auto* repro = app.add_subcommand("reproduce", "Monte Carlo check of the reproducing property");
  add_spec(repro, "fat:2");
  repro->add_option("--f", c.function, "one, z1, z2, z2inv or z1^a*z2^b")->capture_default_str();
  add_point(repro, "--z", z_tokens);
  repro->add_option("--n", n_text, "In-domain samples (default 1e7)");
  add_seed(repro);
  add_tol(repro, "Max residual (default 0.02); exit 2 above it");
  subs.push_back(repro);

  auto* ident = app.add_subcommand("identities", "Exact coefficient-polynomial identities for 2 <= k <= kmax");
  ident->add_option("--kmax", c.k_max, "Largest k (default 50)");
  ident->add_flag("--show-polys", c.show_polys, "Include p_k and q_k coefficient arrays");
  subs.push_back(ident);

  auto* vol = app.add_subcommand("volume", "Monte Carlo volume and rejection acceptance ratio");
  add_spec(vol, "fat:2");
  vol->add_option("--n", n_text, "In-domain samples (default 1e6)");
  add_seed(vol);
  subs.push_back(vol);

  for (auto* s : subs) {
    s->add_option("--format", format_text, "json or csv (csv only for zero-scan, asymptotics, ramadanov)");
    s->add_option("--out", c.out_path, "Write the report to this file");
  }

  // add_spec reassigns c.spec for each subcommand; restore the shared default.
  c.spec = "fat:2";
  c.k_max = 50;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, out);
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, out);
    return std::nullopt;
  }

  for (auto* s : subs)
    if (s->parsed()) c.command = s->get_name();
  if (c.command == "ramadanov" && rama->count("--kmax") == 0) c.k_max = 25;

  if (!z_tokens.empty()) c.z = parse_point(z_tokens, "--z");
  if (!w_tokens.empty()) c.w = parse_point(w_tokens, "--w");
  if (point_tokens.size() % 2 != 0) throw UsageError("--point: expected pairs of 're,im' tokens");
  for (std::size_t i = 0; i < point_tokens.size(); i += 2)
    c.points.push_back(parse_point({point_tokens[i], point_tokens[i + 1]}, "--point"));
  if (!n_text.empty()) c.n = parse_count(n_text, "--n");
  if (!pairs_text.empty()) c.pairs = parse_count(pairs_text, "--pairs");

  if (format_text == "json") {
    c.format = OutputFormat::Json;
  } else if (format_text == "csv") {
    c.format = OutputFormat::Csv;
  } else {
    throw UsageError("--format: expected json or csv, got '" + format_text + "'");
  }
  for (auto* s : subs)
    if (s->parsed() && s->count("--format") > 0) c.format_set = true;
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    report = dispatch(config);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Usage);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Usage);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Usage);
  } catch (const SingularEvaluation& e) {
    err << "check failed: " << e.what() << '\n';
    return static_cast<int>(ExitCode::CheckFailed);
  } catch (const NonconvergentTruncation& e) {
    err << "check failed: " << e.what() << '\n';
    return static_cast<int>(ExitCode::CheckFailed);
  }

  std::string text;
  if (report.csv) {
    text = *report.csv;
  } else {
    if (config.format == OutputFormat::Csv)
      err << "note: " << config.command << " has no CSV form, writing JSON\n";
    const json doc = {{"schema_version", kSchemaVersion},
                      {"version", kVersion},
                      {"command", config.command},
                      {"params", report.params},
                      {"results", report.results}};
    text = doc.dump(2) + "\n";
  }

  if (config.out_path) {
    std::ofstream file(*config.out_path);
    if (!file) {
      err << "error: cannot open '" << *config.out_path << "' for writing\n";
      return static_cast<int>(ExitCode::Usage);
    }
    file << text;
  } else {
    out << text;
  }

  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
  err << config.command << ": wall_time_s=" << std::fixed << std::setprecision(3) << wall.count() << '\n';
  return static_cast<int>(report.check_failed ? ExitCode::CheckFailed : ExitCode::Ok);
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_args(args, out);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Usage);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Usage);
  }
  if (!config) return static_cast<int>(ExitCode::Ok);
  return run(*config, out, err);
}

} // namespace hartogs::cli
