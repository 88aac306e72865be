#include "hartogs/kernel.hpp"

#include "hartogs/errors.hpp"
#include "hartogs/polycoeff.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>

namespace hartogs {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

std::vector<double> to_doubles(const IntPoly& poly) {
  std::vector<double> out;
  out.reserve(poly.coeffs().size());
  for (const auto& c : poly.coeffs()) {
    const double d = c.convert_to<double>();
    if (BigInt(d) != c) throw std::overflow_error("coefficient " + c.str() + " is not exact in double");
    out.push_back(d);
  }
  return out;
}

// scale is the size of the homogeneous factor of the denominator, so the
// flag fires on cancellation rather than on plain smallness near the origin.
KernelValue make_value(Complex num, Complex den, double scale = 1.0) {
  KernelValue v{{}, num, den, std::abs(den) < kNearSingular * scale};
  v.value = den != Complex(0.0) ? num / den : Complex(std::nan(""), std::nan(""));
  return v;
}
} // namespace

const FatCoefficients& fat_coefficients(int k) {
  if (k < 1) throw PreconditionError("fat kernel needs k >= 1");
  static std::shared_mutex mutex;
  static std::map<int, std::unique_ptr<FatCoefficients>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(k); it != cache.end()) return *it->second;
  }
  auto entry = std::make_unique<FatCoefficients>(FatCoefficients{k, to_doubles(p(k)), to_doubles(q(k))});
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.emplace(k, std::move(entry));
  return *it->second;
}

Complex horner(const std::vector<double>& coeffs, Complex x) {
  Complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex fat_numerator(int k, Complex s, Complex t) {
  const auto& c = fat_coefficients(k);
  const Complex pk = horner(c.p, s);
  const Complex qk = horner(c.q, s);
  return pk * t * t + qk * t + int_pow(s, k) * pk;
}

KernelValue classical_kernel(const KernelArgs& a) {
  const Complex one_t = 1.0 - a.t;
  const Complex gap = a.t - a.s;
  return make_value(a.t, kPi2 * one_t * one_t * gap * gap, std::norm(a.t));
}

KernelValue fat_kernel(int k, const KernelArgs& a) {
  if (k == 1) return classical_kernel(a);
  const Complex one_t = 1.0 - a.t;
  const Complex gap = a.t - int_pow(a.s, k);
  return make_value(fat_numerator(k, a.s, a.t), static_cast<double>(k) * kPi2 * one_t * one_t * gap * gap,
                    std::norm(a.t));
}

KernelValue thin_kernel(int k, const KernelArgs& a, ThinDenominator variant) {
  if (k < 1) throw PreconditionError("thin kernel needs k >= 1");
  if (k == 1 && variant == ThinDenominator::OneMinusT) return classical_kernel(a);
  const Complex tk = int_pow(a.t, k);
  const Complex middle = 1.0 - (variant == ThinDenominator::OneMinusT ? a.t : a.s);
  const Complex gap = tk - a.s;
  return make_value(tk, kPi2 * middle * middle * gap * gap, std::norm(tk));
}

KernelValue bidisc_kernel(const KernelArgs& a) {
  const Complex one_s = 1.0 - a.s;
  const Complex one_t = 1.0 - a.t;
  return make_value(1.0, kPi2 * one_s * one_s * one_t * one_t);
}

KernelValue kernel_from_args(const DomainSpec& spec, const KernelArgs& a, const KernelOptions& opts) {
  switch (spec.kind()) {
  case DomainSpec::Kind::FatHartogs: return fat_kernel(spec.k(), a);
  case DomainSpec::Kind::ThinHartogs: return thin_kernel(spec.k(), a, opts.thin);
  case DomainSpec::Kind::ClassicalHartogs: return classical_kernel(a);
  case DomainSpec::Kind::Bidisc:
  case DomainSpec::Kind::PuncturedBidisc: return bidisc_kernel(a);
  }
  throw std::logic_error("unhandled domain kind");
}

namespace {

void require_pair(const DomainSpec& spec, const Point2C& z, const Point2C& w) {
  require_inside(spec, z, "z");
  require_inside(spec, w, "w");
}

} // namespace

KernelValue bergman_fat(int k, const Point2C& z, const Point2C& w) {
  require_pair(DomainSpec::fat(k), z, w);
  return fat_kernel(k, KernelArgs::from(z, w));
}

KernelValue bergman_thin(int k, const Point2C& z, const Point2C& w, ThinDenominator variant) {
  require_pair(DomainSpec::thin(k), z, w);
  return thin_kernel(k, KernelArgs::from(z, w), variant);
}

KernelValue bergman_reference(const DomainSpec& spec, const Point2C& z, const Point2C& w) {
  switch (spec.kind()) {
  case DomainSpec::Kind::Bidisc:
  case DomainSpec::Kind::PuncturedBidisc:
  case DomainSpec::Kind::ClassicalHartogs:
    require_pair(spec, z, w);
    return kernel_from_args(spec, KernelArgs::from(z, w));
  default: throw PreconditionError("bergman_reference covers bidisc, punctured-bidisc and classical only");
  }
}

KernelValue bergman(const DomainSpec& spec, const Point2C& z, const Point2C& w, const KernelOptions& opts) {
  require_pair(spec, z, w);
  return kernel_from_args(spec, KernelArgs::from(z, w), opts);
}

double diagonal(const DomainSpec& spec, const Point2C& z) {
  const KernelValue v = bergman(spec, z, z);
  const double mag = std::abs(v.value);
  if (v.near_singular || !std::isfinite(mag))
    throw SingularEvaluation("diagonal kernel is singular at this point of " + spec.to_string());
  if (std::abs(v.value.imag()) > 1e-12 * mag)
    throw std::logic_error("diagonal kernel has a non-negligible imaginary part");
  if (!(v.value.real() > 0.0)) throw std::logic_error("diagonal kernel is not positive");
  return v.value.real();
}

} // namespace hartogs
