#include "hartogs/analysis.hpp"
#include "hartogs/errors.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace hartogs;
using testsupport::kPi2;

namespace {

Complex numerator_by_hand(int k, Complex s, Complex t) {
  Complex pk = 0.0, qk = 0.0;
  for (int l = 1; l <= k - 1; ++l) pk += static_cast<double>(l * (k - l)) * std::pow(s, l - 1);
  for (int l = 1; l <= k; ++l)
    qk += (static_cast<double>(l * l) + static_cast<double>((k - l) * (k - l)) * std::pow(s, k)) * std::pow(s, l - 1);
  return pk * t * t + qk * t + std::pow(s, k) * pk;
}

} // namespace

TEST_CASE("witness pairs") {
  const Complex i(0.0, 1.0);
  const ZeroWitness two = lqk_witness(2);
  CHECK(two.confirmed);
  CHECK(std::abs(two.z.z1 - i / std::sqrt(2.0)) < 1e-16);
  CHECK(std::abs(two.z.z2 - (std::sqrt(7.0) + i) / 4.0) < 1e-16);
  const KernelArgs a = KernelArgs::from(two.z, two.w);
  CHECK(std::abs(a.s + 0.5) < 1e-15);
  CHECK(std::abs(a.t - (3.0 + i * std::sqrt(7.0)) / 8.0) < 1e-15);

  const ZeroWitness ten = lqk_witness(10);
  CHECK(std::abs(ten.z.z2 - i / 3.0) < 1e-16);
  CHECK(std::abs(KernelArgs::from(ten.z, ten.w).t + 1.0 / 9.0) < 1e-16);

  for (int k = 2; k <= 50; ++k) {
    const ZeroWitness w = lqk_witness(k);
    CAPTURE(k);
    CHECK(w.confirmed);
    CHECK(w.numerator_abs <= 1e-12);
    CHECK(contains(DomainSpec::fat(k), w.z));
    CHECK(contains(DomainSpec::fat(k), w.w));
    const KernelArgs kw = KernelArgs::from(w.z, w.w);
    CHECK(std::abs(numerator_by_hand(k, kw.s, kw.t)) <= 1e-12);
  }
  CHECK_THROWS_AS(lqk_witness(1), PreconditionError);
}

TEST_CASE("thin triangles have no kernel zeros") {
  for (int k = 1; k <= 4; ++k) {
    const ThinNonvanishingReport r = thin_nonvanishing(k, 20000, 3);
    CAPTURE(k);
    CHECK(r.pairs == 20000);
    CHECK(r.zero_hits == 0);
    CHECK(r.min_abs_value > 0.0);
    CHECK(r.min_abs_numerator > 0.0);
    CHECK(r.max_numerator_deviation <= 1e-13);
  }
}

TEST_CASE("realizability") {
  CHECK(realizable(2, -0.5, Complex(3.0, std::sqrt(7.0)) / 8.0));
  CHECK(realizable(3, 0.0, -0.5));
  CHECK_FALSE(realizable(2, 0.9, 0.5));
  CHECK_FALSE(realizable(2, 0.1, 1.0));
  CHECK_FALSE(realizable(2, 0.0, 0.0));
  // the stated witness points realise their own (s, t)
  for (int k = 2; k <= 10; ++k) {
    const ZeroWitness w = lqk_witness(k);
    const KernelArgs a = KernelArgs::from(w.z, w.w);
    CHECK(realizable(k, a.s, a.t));
  }
}

TEST_CASE("quadratic roots") {
  auto sorted = [](std::vector<Complex> v) {
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    return v;
  };
  const auto r = sorted(quadratic_roots(1.0, -3.0, 2.0));
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - 1.0) < 1e-15);
  CHECK(std::abs(r[1] - 2.0) < 1e-15);
  const auto lin = quadratic_roots(0.0, 2.0, -1.0);
  REQUIRE(lin.size() == 1);
  CHECK(std::abs(lin[0] - 0.5) < 1e-16);
  CHECK(quadratic_roots(0.0, 0.0, 1.0).empty());

  // tiny root next to a large one: the naive formula loses it entirely
  const auto tiny = quadratic_roots(1.0, -1e8, 1.0);
  REQUIRE(tiny.size() == 2);
  const double small = std::min(std::abs(tiny[0]), std::abs(tiny[1]));
  CHECK(small == doctest::Approx(1e-8).epsilon(1e-12));

  testsupport::PointGen gen(61);
  for (int n = 0; n < 500; ++n) {
    const Complex a = gen.uniform(0.1, 2.0) * gen.phase(), b = gen.uniform(0.0, 3.0) * gen.phase(),
                  c = gen.uniform(0.0, 3.0) * gen.phase();
    for (const auto& root : quadratic_roots(a, b, c)) {
      const double scale = std::abs(a) * std::norm(root) + std::abs(b) * std::abs(root) + std::abs(c);
      CHECK(std::abs(a * root * root + b * root + c) <= 1e-14 * scale);
    }
  }
}

TEST_CASE("numerator roots examples") {
  const auto k3 = numerator_roots(3, 0.0);
  REQUIRE(k3.size() == 2);
  bool has_zero = false, has_half = false;
  for (const auto& r : k3) {
    if (std::abs(r.t) < 1e-15) {
      has_zero = true;
      CHECK_FALSE(r.realizable);
    }
    if (std::abs(r.t + 0.5) < 1e-15) {
      has_half = true;
      CHECK(r.realizable);
    }
  }
  CHECK(has_zero);
  CHECK(has_half);

  const auto k2 = numerator_roots(2, -0.5);
  REQUIRE(k2.size() == 2);
  for (const auto& r : k2) {
    CHECK(std::abs(r.t) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.realizable);
    CHECK(r.residual <= 1e-10);
  }

  for (int k = 2; k <= 12; ++k) {
    for (double s = -1.0; s <= 1.0; s += 0.05) {
      for (const auto& r : numerator_roots(k, s)) {
        CHECK(r.residual <= 1e-10);
        CHECK(r.realizable == realizable(k, s, r.t));
      }
    }
  }
}

TEST_CASE("zero locus scan") {
  ZeroScanGrid grid;
  grid.s_steps = 9;
  grid.t_steps = 41;
  const ZeroScanResult scan = zero_locus_scan(2, grid);
  CHECK(scan.rows.size() == 9);
  CHECK(scan.rows.front().s == doctest::Approx(-1.0));
  CHECK(scan.rows.back().s == doctest::Approx(1.0));
  for (const auto& cell : scan.cells) {
    CHECK(cell.numerator_abs < grid.tolerance);
    CHECK(cell.realizable == realizable(2, cell.s, cell.t));
  }
  CHECK_THROWS_AS(zero_locus_scan(1, grid), PreconditionError);
}

TEST_CASE("diagonal ratios along boundary paths") {
  const BoundaryPath origin = boundary_path(DomainSpec::fat(2), PathKind::Origin);
  const AsymptoticReport rep = diagonal_ratio(DomainSpec::fat(2), origin);
  REQUIRE(rep.ratios.size() == origin.samples.size());
  for (std::size_t i = 0; i < rep.ratios.size(); ++i) {
    // along (0, r): B = (1+t)/(2 pi^2 (1-t)^2 t), comparison (1-r)^2 r^2
    const double r = std::abs(origin.samples[i].z2), t = r * r;
    const double want = (1.0 - r) * (1.0 - r) * t * (1.0 + t) / (2.0 * kPi2 * (1.0 - t) * (1.0 - t) * t);
    CHECK(rep.ratios[i] == doctest::Approx(want).epsilon(1e-12));
    CHECK(rep.ratios[i] >= 1e-3);
    CHECK(rep.ratios[i] <= 1e3);
  }
  CHECK(rep.tail_quotient <= 10.0);

  for (const auto& spec : {DomainSpec::fat(1), DomainSpec::fat(3), DomainSpec::fat(5), DomainSpec::thin(2),
                           DomainSpec::thin(5)}) {
    for (auto kind : {PathKind::Origin, PathKind::TopFace, PathKind::SmoothLeviFlat, PathKind::Corner}) {
      const AsymptoticReport r = diagonal_ratio(spec, boundary_path(spec, kind));
      CAPTURE(spec.to_string());
      CAPTURE(to_string(kind));
      CHECK(r.min_ratio > 0.0);
      CHECK(r.tail_quotient <= 10.0);
      CHECK(r.min_ratio == *std::min_element(r.ratios.begin(), r.ratios.end()));
    }
  }

  for (const auto& spec : {DomainSpec::fat(1), DomainSpec::fat(2), DomainSpec::thin(3)}) {
    const AsymptoticReport d = delta_rate(spec, boundary_path(spec, PathKind::Origin));
    CAPTURE(spec.to_string());
    CHECK(d.tail_quotient <= 10.0);
  }
  CHECK_THROWS_AS(delta_rate(DomainSpec::fat(2), boundary_path(DomainSpec::fat(2), PathKind::TopFace)),
                  PreconditionError);
}

TEST_CASE("Ramadanov table") {
  const std::vector<std::pair<Point2C, Point2C>> pairs = {
      {{0.5, 0.6}, {0.5, 0.6}}, {{0.3, 0.7}, {0.3, 0.7}}, {{0.2, 0.9}, {0.2, 0.9}}, {{0.0, 0.5}, {0.0, 0.5}}};
  const RamadanovTable table = ramadanov_table(pairs, 25);
  CHECK(table.k0 == std::vector<int>{1, 1, 1, 1});
  REQUIRE(table.rows.size() == 25);
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<double> e;
    for (const auto& row : table.rows) e.push_back(*row.errors[i]);
    for (std::size_t j = e.size() - 10; j < e.size(); ++j) CHECK(e[j] < e[j - 1]);
    CHECK(e.back() < e.front() / 10.0);
  }
  // (0, 1/2): B_k = ((k-1) t + 1)/(k pi^2 (1-t)^2 t) against 1/(pi^2 (1-t)^2)
  for (const auto& row : table.rows) {
    const double t = 0.25, k = row.k;
    const double want = std::abs(((k - 1) * t + 1) / (k * kPi2 * (1 - t) * (1 - t) * t) - 1.0 / (kPi2 * (1 - t) * (1 - t)));
    CHECK(*row.errors[3] == doctest::Approx(want).epsilon(1e-12));
  }

  // a point outside H_1 enters the table at a later k
  const RamadanovTable late = ramadanov_table({{{0.8, 0.5}, {0.8, 0.5}}}, 10);
  CHECK(late.k0[0] == 4);
  CHECK(late.rows.front().k == 4);
  CHECK_THROWS(ramadanov_table({{{0.5, 0.0}, {0.5, 0.0}}}, 10));
}
