#include "hartogs/domain.hpp"
#include "hartogs/errors.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace hartogs;
using testsupport::kPi;
using testsupport::kPi2;
using testsupport::PointGen;

namespace {

// Dense scan of the boundary curve r2 = r1^g in the modulus plane, sampled
// both along r1 and along r2 so steep and flat stretches are covered.
double grid_distance(double g, double r1, double r2) {
  const int n = 400000;
  double best = 1.0 - r2;
  for (int i = 0; i <= n; ++i) {
    const double u = static_cast<double>(i) / n;
    best = std::min(best, std::hypot(u - r1, std::pow(u, g) - r2));
    best = std::min(best, std::hypot(std::pow(u, 1.0 / g) - r1, u - r2));
  }
  return best;
}

// Area-weighted quadrature of the modulus region {r1^g < r2 < 1}:
// vol = 4 pi^2 * int int r1 r2 dr1 dr2, by the midpoint rule in r2 with
// the inner r1 integral r1^2/2 done exactly.
double quadrature_volume(double g) {
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r2 = (i + 0.5) / n;
    const double r1max = std::pow(r2, 1.0 / g);
    sum += r2 * r1max * r1max / 2.0;
  }
  return 4.0 * kPi2 * sum / n;
}

} // namespace

TEST_CASE("spec parsing and canonical names") {
  CHECK(DomainSpec::parse("fat:3") == DomainSpec::fat(3));
  CHECK(DomainSpec::parse("thin:2").to_string() == "thin:2");
  CHECK(DomainSpec::parse("bidisc").kind() == DomainSpec::Kind::Bidisc);
  CHECK(DomainSpec::parse("punctured-bidisc").to_string() == "punctured-bidisc");
  CHECK(DomainSpec::fat(1) == DomainSpec::classical());
  CHECK(DomainSpec::thin(1) == DomainSpec::classical());
  CHECK(DomainSpec::parse("fat:1").to_string() == "classical");
  CHECK_THROWS_AS(DomainSpec::parse("fat:0"), PreconditionError);
  CHECK_THROWS_AS(DomainSpec::parse("fat:x"), PreconditionError);
  CHECK_THROWS_AS(DomainSpec::parse("disc"), PreconditionError);
  CHECK_THROWS_AS(DomainSpec::fat(0), PreconditionError);

  CHECK(*DomainSpec::fat(4).gamma() == Rational{4, 1});
  CHECK(*DomainSpec::thin(4).gamma() == Rational{1, 4});
  CHECK(*DomainSpec::classical().gamma() == Rational{1, 1});
  CHECK_FALSE(DomainSpec::bidisc().gamma().has_value());
}

TEST_CASE("membership examples") {
  CHECK(contains(DomainSpec::fat(2), {0.5, 0.6}));
  CHECK_FALSE(contains(DomainSpec::fat(2), {0.8, 0.6}));
  CHECK(contains(DomainSpec::thin(2), {0.2, 0.5}));
  CHECK_FALSE(contains(DomainSpec::thin(2), {0.3, 0.5}));
  CHECK_FALSE(contains(DomainSpec::classical(), {0.0, 1.0}));
  CHECK_FALSE(contains(DomainSpec::classical(), {0.5, 0.5}));
  CHECK(contains(DomainSpec::bidisc(), {0.0, 0.0}));
  CHECK_FALSE(contains(DomainSpec::punctured_bidisc(), {0.0, 0.0}));
  CHECK(contains(DomainSpec::punctured_bidisc(), {0.9, 0.1}));
  // within the boundary margin counts as outside
  CHECK_FALSE(contains(DomainSpec::classical(), {0.5, 0.5 + 1e-15}));
  CHECK_FALSE(contains(DomainSpec::classical(), {0.0, Complex(std::nan(""), 0.0)}));
  CHECK_THROWS_AS(require_inside(DomainSpec::fat(2), {0.8, 0.6}, "z"), DomainError);
}

TEST_CASE("membership is invariant under independent rotations") {
  PointGen gen(11);
  for (const auto& spec : {DomainSpec::fat(3), DomainSpec::thin(3), DomainSpec::classical(), DomainSpec::bidisc()}) {
    for (int i = 0; i < 2000; ++i) {
      const Point2C p{gen.uniform() * gen.phase(), gen.uniform() * gen.phase()};
      const Point2C rotated{p.z1 * gen.phase(), p.z2 * gen.phase()};
      const double r1 = std::abs(p.z1), r2 = std::abs(p.z2);
      // skip the thin shell where rounding in the rotation could flip the answer
      const double gap = spec.is_hartogs() ? std::abs(r2 - std::pow(r1, testsupport::exponent(spec))) : 1.0;
      if (gap < 1e-9) continue;
      CHECK(contains(spec, p) == contains(spec, rotated));
    }
  }
}

TEST_CASE("boundary distance examples") {
  CHECK(boundary_distance(DomainSpec::classical(), {0.0, 0.5}) == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(boundary_distance(DomainSpec::fat(2), {0.0, 0.9}) == doctest::Approx(0.1).epsilon(1e-12));
  const double eps = 1e-3;
  CHECK(boundary_distance(DomainSpec::fat(2), {0.0, eps}) == doctest::Approx(eps).epsilon(0.01));
  CHECK(boundary_distance(DomainSpec::bidisc(), {0.5, 0.7}) == doctest::Approx(0.3));
  CHECK(boundary_distance(DomainSpec::punctured_bidisc(), {0.5, 0.1}) == doctest::Approx(0.1));
  CHECK_THROWS_AS(boundary_distance(DomainSpec::fat(2), {0.8, 0.6}), DomainError);
}

TEST_CASE("boundary distance agrees with a dense grid scan") {
  PointGen gen(5);
  for (const auto& spec : {DomainSpec::fat(2), DomainSpec::fat(5), DomainSpec::thin(3), DomainSpec::classical()}) {
    const double g = testsupport::exponent(spec);
    for (int i = 0; i < 12; ++i) {
      const Point2C p = gen.hartogs(spec, 0.95, 0.01, 0.99);
      const double got = boundary_distance(spec, p);
      const double want = grid_distance(g, std::abs(p.z1), std::abs(p.z2));
      CAPTURE(spec.to_string());
      CAPTURE(i);
      CHECK(got <= want + 1e-12);
      CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }
  }
}

TEST_CASE("boundary distance bounds hold on random points") {
  PointGen gen(6);
  for (const auto& spec : {DomainSpec::fat(2), DomainSpec::fat(4), DomainSpec::thin(2), DomainSpec::thin(5)}) {
    const double g = testsupport::exponent(spec);
    for (int i = 0; i < 500; ++i) {
      const Point2C p = gen.hartogs(spec, 0.999, 0.001, 0.999);
      const double r1 = std::abs(p.z1), r2 = std::abs(p.z2);
      const double d = boundary_distance(spec, p);
      CHECK(d > 0.0);
      CHECK(d <= std::min(1.0 - r2, r2 - std::pow(r1, g)));
    }
  }
}

TEST_CASE("origin path distance ratio") {
  // the curve r2 = r1^k is flat at the origin for k >= 2, so delta ~ |z2|
  for (const auto& spec : {DomainSpec::fat(2), DomainSpec::fat(3)}) {
    const BoundaryPath path = boundary_path(spec, PathKind::Origin);
    const Point2C last = path.samples.back();
    CHECK(boundary_distance(spec, last) / std::abs(last.z2) == doctest::Approx(1.0).epsilon(1e-4));
  }
  // the diagonal r2 = r1 meets the axis at 45 degrees
  const BoundaryPath path = boundary_path(DomainSpec::classical(), PathKind::Origin);
  for (const auto& p : path.samples)
    CHECK(boundary_distance(DomainSpec::classical(), p) / std::abs(p.z2) == doctest::Approx(1.0 / std::sqrt(2.0)));
  // the thin curve is vertical there, so the ratio tends to zero
  const BoundaryPath thin = boundary_path(DomainSpec::thin(2), PathKind::Origin);
  const Point2C last = thin.samples.back();
  CHECK(boundary_distance(DomainSpec::thin(2), last) / std::abs(last.z2) < 1e-4);
}

TEST_CASE("boundary paths stay inside and approach their target") {
  for (const auto& spec : {DomainSpec::fat(1), DomainSpec::fat(2), DomainSpec::fat(5), DomainSpec::thin(2),
                           DomainSpec::thin(5)}) {
    for (auto kind : {PathKind::Origin, PathKind::TopFace, PathKind::SmoothLeviFlat, PathKind::Corner}) {
      const BoundaryPath path = boundary_path(spec, kind);
      CAPTURE(spec.to_string());
      CAPTURE(to_string(kind));
      REQUIRE(path.samples.size() == 20);
      REQUIRE(path.params.size() == 20);
      double prev_dist = 1e300, prev_eps = 2.0;
      for (std::size_t i = 0; i < path.samples.size(); ++i) {
        const Point2C& p = path.samples[i];
        CHECK(contains(spec, p));
        const double dist = std::hypot(std::abs(p.z1 - path.target.z1), std::abs(p.z2 - path.target.z2));
        CHECK(dist < prev_dist);
        CHECK(path.params[i] < prev_eps);
        CHECK(path.params[i] > 0.0);
        CHECK(path.params[i] <= 1.0);
        prev_dist = dist;
        prev_eps = path.params[i];
      }
    }
  }
  const BoundaryPath origin = boundary_path(DomainSpec::fat(2), PathKind::Origin);
  CHECK(origin.samples.front() == Point2C{0.0, 0.5});
  CHECK(origin.samples.back() == Point2C{0.0, std::ldexp(1.0, -20)});
  const BoundaryPath levi = boundary_path(DomainSpec::fat(2), PathKind::SmoothLeviFlat);
  for (std::size_t i = 1; i < levi.samples.size(); ++i) CHECK(std::abs(levi.samples[i].z1) > std::abs(levi.samples[i - 1].z1));
  CHECK(parse_path_kind("levi") == PathKind::SmoothLeviFlat);
  CHECK_THROWS_AS(parse_path_kind("edge"), PreconditionError);
  CHECK_THROWS_AS(boundary_path(DomainSpec::bidisc(), PathKind::Origin), PreconditionError);
  CHECK_THROWS_AS(boundary_path(DomainSpec::fat(2), PathKind::Origin, 10), PreconditionError);
}

TEST_CASE("sampler acceptance matches quadrature volume") {
  CHECK(quadrature_volume(1.0) == doctest::Approx(kPi2 / 2.0).epsilon(1e-6));
  for (const auto& spec : {DomainSpec::classical(), DomainSpec::fat(2), DomainSpec::thin(3)}) {
    DomainSampler sampler(spec, 42);
    for (int i = 0; i < 1000000; ++i) sampler.next();
    const double acceptance = static_cast<double>(sampler.accepted()) / static_cast<double>(sampler.draws());
    const double expected = quadrature_volume(testsupport::exponent(spec)) / kPi2;
    CAPTURE(spec.to_string());
    CHECK(acceptance == doctest::Approx(expected).epsilon(0.005));
  }
  CHECK(quadrature_volume(2.0) / kPi2 == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("sampling is reproducible and in-domain") {
  const auto a = sample_uniform(DomainSpec::fat(3), 500, 9);
  const auto b = sample_uniform(DomainSpec::fat(3), 500, 9);
  const auto c = sample_uniform(DomainSpec::fat(3), 500, 10);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto& p : a) CHECK(contains(DomainSpec::fat(3), p));
  CHECK_THROWS_AS(sample_uniform(DomainSpec::fat(3), 0, 1), PreconditionError);

  RandomStream s0(1, 0), s1(1, 1);
  CHECK(s0.uniform() != s1.uniform());
  for (int i = 0; i < 10000; ++i) {
    const double u = s0.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(std::abs(s1.unit_disc()) < 1.0);
  }
}

TEST_CASE("interior samples respect the margin") {
  for (const auto& spec : {DomainSpec::fat(2), DomainSpec::thin(2), DomainSpec::punctured_bidisc()}) {
    for (const auto& p : sample_interior(spec, 300, 3)) {
      CHECK(contains(spec, p));
      CHECK(std::abs(p.z2) <= 0.9);
      if (spec.is_hartogs()) CHECK(std::pow(std::abs(p.z1), testsupport::exponent(spec)) <= 0.9 * std::abs(p.z2));
    }
  }
  for (const auto& [z, w] : sample_interior_pairs(DomainSpec::fat(3), 100, 4, 0.4)) {
    CHECK(std::abs(z.z1 * std::conj(w.z1)) <= 0.4);
    CHECK(std::abs(z.z2 * std::conj(w.z2)) <= 0.4);
  }
}
