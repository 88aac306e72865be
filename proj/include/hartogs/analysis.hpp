#pragma once

#include "hartogs/domain.hpp"
#include "hartogs/kernel.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hartogs {

/// A pair of points of H_k at which the fat kernel vanishes.
struct ZeroWitness {
  int k;
  Point2C z;
  Point2C w;
  double numerator_abs;
  bool confirmed; // both points inside and numerator_abs <= 1e-12
};

/// k = 2: z = (i/sqrt2, (sqrt7 + i)/4), w = (-i/sqrt2, (sqrt7 - i)/4).
/// k >= 3: z = (0, i/sqrt(k-1)), w = (0, -i/sqrt(k-1)).
ZeroWitness lqk_witness(int k);

struct ThinNonvanishingReport {
  int k;
  std::size_t pairs;
  std::size_t zero_hits; // value or numerator exactly zero
  double min_abs_value;
  double min_abs_numerator;
  /// max over pairs of | |numerator| - |z2|^k |w2|^k | / (|z2|^k |w2|^k)
  double max_numerator_deviation;
};

ThinNonvanishingReport thin_nonvanishing(int k, std::size_t n, std::uint64_t seed);

/// (s, t) comes from some z, w in H_k iff |s|^k < |t| < 1: given such
/// (s, t), z = w = (sqrt|s|, sqrt|t|) rotated by the arguments works.
bool realizable(int k, Complex s, Complex t);

/// Roots in t of a t^2 + b t + c with the cancellation-free form
/// q = -(b + sign * sqrt(b^2 - 4ac)) / 2, roots q/a and c/q. Degenerates
/// to the linear root when a == 0; empty when a == b == 0.
std::vector<Complex> quadratic_roots(Complex a, Complex b, Complex c);

struct ZeroRoot {
  Complex t;
  bool realizable;
  double residual; // |numerator(s, t)| / (|p||t|^2 + |q||t| + |s^k p|)
};

struct ZeroScanRow {
  double s;
  std::vector<ZeroRoot> roots;
};

struct ZeroScanCell {
  double s;
  Complex t;
  double numerator_abs;
  bool realizable;
};

/// Real slice s in [s_min, s_max] (s_steps points) against the complex
/// t-square [-1, 1]^2 (t_steps per side).
struct ZeroScanGrid {
  double s_min = -1.0;
  double s_max = 1.0;
  int s_steps = 41;
  int t_steps = 101;
  double tolerance = 1e-2; // cells with |numerator| below this are reported
};

struct ZeroScanResult {
  int k;
  ZeroScanGrid grid;
  std::vector<ZeroScanRow> rows;
  std::vector<ZeroScanCell> cells;
};

ZeroScanResult zero_locus_scan(int k, const ZeroScanGrid& grid);

/// Roots of the fat numerator in t at fixed s.
std::vector<ZeroRoot> numerator_roots(int k, Complex s);

struct AsymptoticReport {
  DomainSpec spec;
  BoundaryPath path;
  std::vector<double> kernel;     // B(z_i, z_i)
  std::vector<double> comparison; // quantity multiplying B
  std::vector<double> ratios;
  double min_ratio;
  double max_ratio;
  /// max/min over the last `tail` ratios
  double tail_quotient;
  std::size_t tail;
};

/// B(z,z) (1 - |z2|)^2 (|z2| - |z1|^k)^2 on fat triangles,
/// B(z,z) (1 - |z2|)^2 (|z2|^k - |z1|)^2 on thin ones.
AsymptoticReport diagonal_ratio(const DomainSpec& spec, const BoundaryPath& path, std::size_t tail = 10);

/// B(z,z) delta(z)^2 along an Origin path.
AsymptoticReport delta_rate(const DomainSpec& spec, const BoundaryPath& path, std::size_t tail = 10);

struct RamadanovRow {
  int k;
  std::vector<std::optional<double>> errors; // per pair; empty below that pair's k0
  std::optional<double> max_error;           // once every pair is in H_k
  std::optional<double> min_abs_kernel;
};

struct RamadanovTable {
  std::vector<std::pair<Point2C, Point2C>> pairs;
  std::vector<int> k0; // first k with both points of the pair in H_k
  std::vector<RamadanovRow> rows;
};

/// e_k = |B_k(z, w) - B_{D x D*}(z, w)| for k = min k0 .. k_max.
/// Every point needs |z1| < 1 and z2 != 0 (it then lies in H_k for large k).
RamadanovTable ramadanov_table(const std::vector<std::pair<Point2C, Point2C>>& pairs, int k_max);

} // namespace hartogs
