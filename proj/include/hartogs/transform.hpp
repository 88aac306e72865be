#pragma once

#include "hartogs/domain.hpp"
#include "hartogs/kernel.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hartogs {

/// The holomorphic maps relating the triangles to each other and to D x D*.
///   PowerMap(k)      (z1, z2^k)         H_1     -> H_k, order k
///   Shear            (z1/z2, z2)        H_1     -> D x D*  (also H_{1/(m+1)} -> H_{1/m})
///   ShearInv         (z1 z2, z2)        D x D*  -> H_1
///   ShearIter(k)     (z1 z2^-k, z2)     H_{1/k} -> D x D*
///   ShearIterInv(k)  (z1 z2^k, z2)      D x D*  -> H_{1/k}
struct ProperMap {
  enum class Kind { PowerMap, Shear, ShearInv, ShearIter, ShearIterInv };

  Kind kind;
  int k = 1;

  static ProperMap power(int k) { return {Kind::PowerMap, k}; }
  static ProperMap shear() { return {Kind::Shear, 1}; }
  static ProperMap shear_inv() { return {Kind::ShearInv, 1}; }
  static ProperMap shear_iter(int k) { return {Kind::ShearIter, k}; }
  static ProperMap shear_iter_inv(int k) { return {Kind::ShearIterInv, k}; }

  /// Branched-cover order: k for PowerMap, 1 for the biholomorphisms.
  int order() const { return kind == Kind::PowerMap ? k : 1; }
  std::string name() const;
  DomainSpec default_source() const;
  DomainSpec default_target() const;
};

/// Image of p. Throws DomainError if p is not in `source`.
Point2C apply(const ProperMap& map, const Point2C& p, const DomainSpec& source);
Point2C apply(const ProperMap& map, const Point2C& p);

/// Complex Jacobian determinant of the map at p.
Complex jacobian(const ProperMap& map, const Point2C& p);

/// k-th root of w with argument in [0, 2 pi / k). Arguments are taken in
/// [0, 2 pi); values within 1e-15 of 2 pi are folded to 0.
Complex principal_root(Complex w, int k);

/// One local inverse of PowerMap(k): w -> (w1, zeta^j w2^(1/k)), zeta = e^(2 pi i/k).
struct BranchInverse {
  int j;
  Point2C point;
  Complex jacobian; // derivative of the branch map: zeta^j w2^(1/k - 1) / k
};

/// The k branch inverses at w in H_k, j = 1..k; each image lies in H_1.
std::vector<BranchInverse> branch_inverses(int k, const Point2C& w);

/// Relative residual of the transformation rule for PowerMap(k): H_1 -> H_k,
///   u(z) B_k(phi(z), w)  vs  sum_j B_1(z, Phi_j(w)) conj(U_j(w)),
/// with u(z) = k z2^(k-1). Throws SingularEvaluation on near-singular kernels.
double bell_residual(int k, const Point2C& z, const Point2C& w);

/// Relative residual of
///   B_src(z, w) = det F'(z) B_dst(F(z), F(w)) conj(det F'(w))
/// for a biholomorphism F = map from src onto dst. `opts` applies to both
/// kernel evaluations (selects the thin denominator variant).
double biholo_residual(const ProperMap& map, const DomainSpec& src, const DomainSpec& dst, const Point2C& z,
                       const Point2C& w, const KernelOptions& opts = {});

} // namespace hartogs
