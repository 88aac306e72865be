#include "hartogs/analysis.hpp"

#include "hartogs/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hartogs {

ZeroWitness lqk_witness(int k) {
  if (k < 2) throw PreconditionError("fat triangles with k >= 2 have kernel zeros; k = " + std::to_string(k));
  const Complex i(0.0, 1.0);
  ZeroWitness wit{k, {}, {}, 0.0, false};
  if (k == 2) {
    const double r7 = std::sqrt(7.0);
    wit.z = {i / std::sqrt(2.0), (r7 + i) / 4.0};
    wit.w = {-i / std::sqrt(2.0), (r7 - i) / 4.0};
  } else {
    const double r = 1.0 / std::sqrt(static_cast<double>(k - 1));
    wit.z = {0.0, i * r};
    wit.w = {0.0, -i * r};
  }
  const DomainSpec spec = DomainSpec::fat(k);
  const KernelArgs a = KernelArgs::from(wit.z, wit.w);
  wit.numerator_abs = std::abs(fat_numerator(k, a.s, a.t));
  wit.confirmed = contains(spec, wit.z) && contains(spec, wit.w) && wit.numerator_abs <= 1e-12;
  return wit;
}

ThinNonvanishingReport thin_nonvanishing(int k, std::size_t n, std::uint64_t seed) {
  if (k < 1) throw PreconditionError("thin_nonvanishing needs k >= 1");
  if (n == 0) throw PreconditionError("thin_nonvanishing needs n >= 1");
  const DomainSpec spec = DomainSpec::thin(k);
  DomainSampler sampler(spec, seed);
  ThinNonvanishingReport r{k, n, 0, INFINITY, INFINITY, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const Point2C z = sampler.next();
    const Point2C w = sampler.next();
    const KernelValue v = bergman_thin(k, z, w);
    const double num = std::abs(v.numerator);
    const double val = std::abs(v.value);
    if (num == 0.0 || val == 0.0) ++r.zero_hits;
    r.min_abs_numerator = std::min(r.min_abs_numerator, num);
    r.min_abs_value = std::min(r.min_abs_value, val);
    const double expect = std::pow(std::abs(z.z2), k) * std::pow(std::abs(w.z2), k);
    r.max_numerator_deviation = std::max(r.max_numerator_deviation, std::abs(num - expect) / expect);
  }
  return r;
}

bool realizable(int k, Complex s, Complex t) {
  const double at = std::abs(t);
  return std::pow(std::abs(s), k) < at && at < 1.0;
}

std::vector<Complex> quadratic_roots(Complex a, Complex b, Complex c) {
  if (a == Complex(0.0)) {
    if (b == Complex(0.0)) return {};
    return {-c / b};
  }
  const Complex disc = std::sqrt(b * b - 4.0 * a * c);
  // pick the sign that adds b and disc constructively
  const double align = (std::conj(b) * disc).real();
  const Complex q = -0.5 * (align >= 0.0 ? b + disc : b - disc);
  if (q == Complex(0.0)) return {0.0, 0.0};
  return {q / a, c / q};
}

std::vector<ZeroRoot> numerator_roots(int k, Complex s) {
  const auto& coeffs = fat_coefficients(k);
  const Complex pk = horner(coeffs.p, s);
  const Complex qk = horner(coeffs.q, s);
  const Complex sk = int_pow(s, k);
  std::vector<ZeroRoot> out;
  for (Complex t : quadratic_roots(pk, qk, sk * pk)) {
    const double scale = std::abs(pk) * std::norm(t) + std::abs(qk) * std::abs(t) + std::abs(sk * pk);
    const double res = std::abs(fat_numerator(k, s, t));
    out.push_back({t, realizable(k, s, t), scale > 0.0 ? res / scale : res});
  }
  return out;
}

ZeroScanResult zero_locus_scan(int k, const ZeroScanGrid& grid) {
  if (k < 2) throw PreconditionError("zero_locus_scan needs k >= 2");
  if (grid.s_steps < 1 || grid.t_steps < 2) throw PreconditionError("zero_locus_scan grid is too small");
  ZeroScanResult result{k, grid, {}, {}};
  for (int i = 0; i < grid.s_steps; ++i) {
    const double s = grid.s_steps == 1 ? grid.s_min
                                       : grid.s_min + (grid.s_max - grid.s_min) * i / (grid.s_steps - 1);
    result.rows.push_back({s, numerator_roots(k, s)});
    for (int a = 0; a < grid.t_steps; ++a) {
      for (int b = 0; b < grid.t_steps; ++b) {
        const Complex t(-1.0 + 2.0 * a / (grid.t_steps - 1), -1.0 + 2.0 * b / (grid.t_steps - 1));
        const double num = std::abs(fat_numerator(k, s, t));
        if (num < grid.tolerance) result.cells.push_back({s, t, num, realizable(k, s, t)});
      }
    }
  }
  return result;
}

namespace {

AsymptoticReport make_report(const DomainSpec& spec, const BoundaryPath& path, std::size_t tail,
                             double (*comparison)(const DomainSpec&, const Point2C&)) {
  if (path.samples.empty()) throw PreconditionError("empty boundary path");
  AsymptoticReport r{spec, path, {}, {}, {}, INFINITY, 0.0, 0.0, std::min(tail, path.samples.size())};
  for (const Point2C& z : path.samples) {
    const double b = diagonal(spec, z);
    const double c = comparison(spec, z);
    const double ratio = b * c;
    if (!(ratio > 0.0) || !std::isfinite(ratio)) throw SingularEvaluation("ratio is not finite and positive");
    r.kernel.push_back(b);
    r.comparison.push_back(c);
    r.ratios.push_back(ratio);
    r.min_ratio = std::min(r.min_ratio, ratio);
    r.max_ratio = std::max(r.max_ratio, ratio);
  }
  const auto first = r.ratios.end() - static_cast<std::ptrdiff_t>(r.tail);
  const auto [lo, hi] = std::minmax_element(first, r.ratios.end());
  r.tail_quotient = *hi / *lo;
  return r;
}

double growth_comparison(const DomainSpec& spec, const Point2C& z) {
  const double r1 = std::abs(z.z1);
  const double r2 = std::abs(z.z2);
  const double gap = spec.kind() == DomainSpec::Kind::ThinHartogs ? std::pow(r2, spec.k()) - r1
                                                                   : r2 - std::pow(r1, spec.k());
  return (1.0 - r2) * (1.0 - r2) * gap * gap;
}

double delta_comparison(const DomainSpec& spec, const Point2C& z) {
  const double d = boundary_distance(spec, z);
  return d * d;
}

} // namespace

AsymptoticReport diagonal_ratio(const DomainSpec& spec, const BoundaryPath& path, std::size_t tail) {
  if (!spec.is_hartogs()) throw PreconditionError("diagonal_ratio needs a Hartogs triangle");
  return make_report(spec, path, tail, growth_comparison);
}

AsymptoticReport delta_rate(const DomainSpec& spec, const BoundaryPath& path, std::size_t tail) {
  if (!spec.is_hartogs()) throw PreconditionError("delta_rate needs a Hartogs triangle");
  if (path.kind != PathKind::Origin) throw PreconditionError("delta_rate is defined along Origin paths");
  return make_report(spec, path, tail, delta_comparison);
}

RamadanovTable ramadanov_table(const std::vector<std::pair<Point2C, Point2C>>& pairs, int k_max) {
  if (pairs.empty()) throw PreconditionError("ramadanov_table needs at least one pair");
  const DomainSpec limit = DomainSpec::punctured_bidisc();
  RamadanovTable table{pairs, {}, {}};
  int k_lo = k_max + 1;
  int k_all = 1;
  for (const auto& [z, w] : pairs) {
    require_inside(limit, z, "z");
    require_inside(limit, w, "w");
    int k0 = 1;
    while (!(contains(DomainSpec::fat(k0), z) && contains(DomainSpec::fat(k0), w))) {
      if (++k0 > 100'000) throw PreconditionError("pair does not enter H_k for any reasonable k");
    }
    table.k0.push_back(k0);
    k_lo = std::min(k_lo, k0);
    k_all = std::max(k_all, k0);
  }
  for (int k = k_lo; k <= k_max; ++k) {
    RamadanovRow row{k, {}, std::nullopt, std::nullopt};
    double worst = 0.0;
    double smallest = INFINITY;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (k < table.k0[i]) {
        row.errors.push_back(std::nullopt);
        continue;
      }
      const auto& [z, w] = pairs[i];
      const Complex bk = bergman_fat(k, z, w).value;
      const Complex lim = bergman_reference(limit, z, w).value;
      const double e = std::abs(bk - lim);
      row.errors.push_back(e);
      worst = std::max(worst, e);
      smallest = std::min(smallest, std::abs(bk));
    }
    if (k >= k_all) {
      row.max_error = worst;
      row.min_abs_kernel = smallest;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

} // namespace hartogs
