#pragma once

#include "hartogs/domain.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace testsupport {

using hartogs::Complex;
using hartogs::DomainSpec;
using hartogs::Point2C;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kPi2 = kPi * kPi;

inline double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

// Exponent of the defining inequality |z1|^g < |z2|, written out again here
// so tests do not lean on DomainSpec::gamma().
inline double exponent(const DomainSpec& spec) {
  switch (spec.kind()) {
  case DomainSpec::Kind::FatHartogs: return spec.k();
  case DomainSpec::Kind::ThinHartogs: return 1.0 / spec.k();
  default: return 1.0;
  }
}

// Random point with moduli chosen so that it sits comfortably inside a
// Hartogs triangle: |z2| in (lo, hi), |z1|^g in (0, frac * |z2|).
class PointGen {
public:
  explicit PointGen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  Complex phase() { return std::polar(1.0, uniform(0.0, 2.0 * kPi)); }

  Point2C hartogs(const DomainSpec& spec, double frac = 0.9, double lo = 0.05, double hi = 0.9) {
    const double r2 = uniform(lo, hi);
    const double r1 = std::pow(uniform(0.0, frac) * r2, 1.0 / exponent(spec));
    return {r1 * phase(), r2 * phase()};
  }

  Point2C bidisc(double hi = 0.9) { return {uniform(0.0, hi) * phase(), uniform(0.05, hi) * phase()}; }

private:
  std::mt19937_64 rng_;
};

} // namespace testsupport
