#pragma once

#include "hartogs/domain.hpp"

#include <vector>

namespace hartogs {

/// Reduced variables s = z1 conj(w1), t = z2 conj(w2). Every kernel here
/// depends on (z, w) only through them.
struct KernelArgs {
  Complex s;
  Complex t;

  static KernelArgs from(const Point2C& z, const Point2C& w) {
    return {z.z1 * std::conj(w.z1), z.z2 * std::conj(w.z2)};
  }
};

inline constexpr double kNearSingular = 1e-30;

struct KernelValue {
  Complex value;
  Complex numerator;
  Complex denominator;
  /// |denominator| < kNearSingular times |t|^2 (fat, classical) or
  /// |t|^{2k} (thin); plain |denominator| < kNearSingular on the bidisc.
  bool near_singular = false;
};

/// Two readings of the thin-triangle denominator middle factor. Only
/// OneMinusT reproduces the series expansion and the pullback of the
/// bidisc kernel; OneMinusS is kept so that claim stays testable.
enum class ThinDenominator { OneMinusT, OneMinusS };

struct KernelOptions {
  ThinDenominator thin = ThinDenominator::OneMinusT;
};

/// Fat-kernel coefficients of p_k and q_k in double precision, converted
/// once from the exact integers (throws if any coefficient is not exactly
/// representable). Cached per k.
struct FatCoefficients {
  int k;
  std::vector<double> p;
  std::vector<double> q;
};

const FatCoefficients& fat_coefficients(int k);

/// Horner evaluation, coefficients in ascending powers.
Complex horner(const std::vector<double>& coeffs, Complex x);

/// p_k(s) t^2 + q_k(s) t + s^k p_k(s).
Complex fat_numerator(int k, Complex s, Complex t);

// Unchecked evaluation from (s, t); callers guarantee realisability.
KernelValue classical_kernel(const KernelArgs& a);
KernelValue fat_kernel(int k, const KernelArgs& a);
KernelValue thin_kernel(int k, const KernelArgs& a, ThinDenominator variant = ThinDenominator::OneMinusT);
KernelValue bidisc_kernel(const KernelArgs& a);
KernelValue kernel_from_args(const DomainSpec& spec, const KernelArgs& a, const KernelOptions& opts = {});

/// Bergman kernel of H_k,
///   (p_k(s) t^2 + q_k(s) t + s^k p_k(s)) / (k pi^2 (1-t)^2 (t - s^k)^2).
/// Throws DomainError unless z, w are in H_k.
KernelValue bergman_fat(int k, const Point2C& z, const Point2C& w);

/// Bergman kernel of H_{1/k}, t^k / (pi^2 (1-t)^2 (t^k - s)^2).
KernelValue bergman_thin(int k, const Point2C& z, const Point2C& w,
                         ThinDenominator variant = ThinDenominator::OneMinusT);

/// Bidisc (and punctured bidisc): 1 / (pi^2 (1-s)^2 (1-t)^2).
/// Classical Hartogs triangle: t / (pi^2 (1-t)^2 (t-s)^2).
KernelValue bergman_reference(const DomainSpec& spec, const Point2C& z, const Point2C& w);

/// Dispatch on the spec's kind.
KernelValue bergman(const DomainSpec& spec, const Point2C& z, const Point2C& w, const KernelOptions& opts = {});

/// B(z, z) as a positive real. Throws if the imaginary residue exceeds
/// 1e-12 of the magnitude or the value is not positive.
double diagonal(const DomainSpec& spec, const Point2C& z);

} // namespace hartogs
