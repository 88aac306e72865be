#include "hartogs/transform.hpp"

#include "hartogs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hartogs {

namespace {


double relative_gap(Complex lhs, Complex rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

void require_regular(const KernelValue& v, const char* where) {
  if (v.near_singular || !std::isfinite(std::abs(v.value)))
    throw SingularEvaluation(std::string("near-singular kernel evaluation in ") + where);
}

} // namespace

std::string ProperMap::name() const {
  switch (kind) {
  case Kind::PowerMap: return "power:" + std::to_string(k);
  case Kind::Shear: return "shear";
  case Kind::ShearInv: return "shear-inv";
  case Kind::ShearIter: return "shear-iter:" + std::to_string(k);
  case Kind::ShearIterInv: return "shear-iter-inv:" + std::to_string(k);
  }
  return "?";
}

DomainSpec ProperMap::default_source() const {
  switch (kind) {
  case Kind::PowerMap:
  case Kind::Shear: return DomainSpec::classical();
  case Kind::ShearInv:
  case Kind::ShearIterInv: return DomainSpec::punctured_bidisc();
  case Kind::ShearIter: return DomainSpec::thin(k);
  }
  throw std::logic_error("unhandled map");
}

DomainSpec ProperMap::default_target() const {
  switch (kind) {
  case Kind::PowerMap: return DomainSpec::fat(k);
  case Kind::Shear:
  case Kind::ShearIter: return DomainSpec::punctured_bidisc();
  case Kind::ShearInv: return DomainSpec::classical();
  case Kind::ShearIterInv: return DomainSpec::thin(k);
  }
  throw std::logic_error("unhandled map");
}

Point2C apply(const ProperMap& map, const Point2C& p, const DomainSpec& source) {
  require_inside(source, p, "source point");
  switch (map.kind) {
  case ProperMap::Kind::PowerMap: return {p.z1, int_pow(p.z2, map.k)};
  case ProperMap::Kind::Shear: return {p.z1 / p.z2, p.z2};
  case ProperMap::Kind::ShearInv: return {p.z1 * p.z2, p.z2};
  case ProperMap::Kind::ShearIter: return {p.z1 * int_pow(p.z2, -map.k), p.z2};
  case ProperMap::Kind::ShearIterInv: return {p.z1 * int_pow(p.z2, map.k), p.z2};
  }
  throw std::logic_error("unhandled map");
}

Point2C apply(const ProperMap& map, const Point2C& p) { return apply(map, p, map.default_source()); }

Complex jacobian(const ProperMap& map, const Point2C& p) {
  switch (map.kind) {
  case ProperMap::Kind::PowerMap: return static_cast<double>(map.k) * int_pow(p.z2, map.k - 1);
  case ProperMap::Kind::Shear: return 1.0 / p.z2;
  case ProperMap::Kind::ShearInv: return p.z2;
  case ProperMap::Kind::ShearIter: return int_pow(p.z2, -map.k);
  case ProperMap::Kind::ShearIterInv: return int_pow(p.z2, map.k);
  }
  throw std::logic_error("unhandled map");
}

Complex principal_root(Complex w, int k) {
  if (k < 1) throw PreconditionError("root order must be >= 1");
  if (w == Complex(0.0)) return 0.0;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double arg = std::arg(w);
  if (arg < 0.0) arg += two_pi;
  if (two_pi - arg < 1e-15) arg = 0.0;
  return std::polar(std::pow(std::abs(w), 1.0 / k), arg / k);
}

std::vector<BranchInverse> branch_inverses(int k, const Point2C& w) {
  require_inside(DomainSpec::fat(k), w, "w");
  const Complex root = principal_root(w.z2, k);
  std::vector<BranchInverse> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = 1; j <= k; ++j) {
    const Complex zeta_j = std::polar(1.0, 2.0 * std::numbers::pi * j / k);
    // d/dw2 (zeta^j w2^(1/k)) = zeta^j w2^(1/k) / (k w2)
    out.push_back({j, {w.z1, zeta_j * root}, zeta_j * root / (static_cast<double>(k) * w.z2)});
  }
  return out;
}

double bell_residual(int k, const Point2C& z, const Point2C& w) {
  const DomainSpec source = DomainSpec::classical();
  const DomainSpec target = DomainSpec::fat(k);
  require_inside(source, z, "z");
  require_inside(target, w, "w");

  const ProperMap phi = ProperMap::power(k);
  const KernelValue lhs_kernel = bergman(target, apply(phi, z, source), w);
  require_regular(lhs_kernel, "bell_residual (target kernel)");
  const Complex lhs = jacobian(phi, z) * lhs_kernel.value;

  Complex rhs = 0.0;
  for (const auto& branch : branch_inverses(k, w)) {
    const KernelValue kv = bergman(source, z, branch.point);
    require_regular(kv, "bell_residual (source kernel)");
    rhs += kv.value * std::conj(branch.jacobian);
  }
  return relative_gap(lhs, rhs);
}

double biholo_residual(const ProperMap& map, const DomainSpec& src, const DomainSpec& dst, const Point2C& z,
                       const Point2C& w, const KernelOptions& opts) {
  if (map.order() != 1) throw PreconditionError("biholo_residual needs a map of order 1");
  const Point2C fz = apply(map, z, src);
  const Point2C fw = apply(map, w, src);
  require_inside(dst, fz, "F(z)");
  require_inside(dst, fw, "F(w)");

  const KernelValue lhs = bergman(src, z, w, opts);
  const KernelValue pulled = bergman(dst, fz, fw, opts);
  require_regular(lhs, "biholo_residual (source kernel)");
  require_regular(pulled, "biholo_residual (target kernel)");
  const Complex rhs = jacobian(map, z) * pulled.value * std::conj(jacobian(map, w));
  return relative_gap(lhs.value, rhs);
}

} // namespace hartogs
