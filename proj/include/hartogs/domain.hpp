#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace hartogs {

using Complex = std::complex<double>;

/// x^n by repeated multiplication (n < 0 uses 1/x).
Complex int_pow(Complex x, long n);

/// Exact positive rational p/q.
struct Rational {
  long num = 1;
  long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

/// A point (z1, z2) of C^2.
struct Point2C {
  Complex z1;
  Complex z2;

  bool finite() const;
  bool operator==(const Point2C&) const = default;
};

/// Which domain we are working on. Hartogs triangles are
/// H_g = { |z1|^g < |z2| < 1 } with g = k (fat), 1/k (thin) or 1 (classical).
class DomainSpec {
public:
  enum class Kind { FatHartogs, ThinHartogs, ClassicalHartogs, Bidisc, PuncturedBidisc };

  // fat(1) and thin(1) both canonicalize to classical().
  static DomainSpec fat(int k);
  static DomainSpec thin(int k);
  static DomainSpec classical();
  static DomainSpec bidisc();
  static DomainSpec punctured_bidisc();

  /// Accepts "fat:k", "thin:k", "classical", "bidisc", "punctured-bidisc".
  static DomainSpec parse(std::string_view text);
  std::string to_string() const;

  Kind kind() const { return kind_; }
  /// Exponent k for fat/thin, 1 for classical, 0 for the bidiscs.
  int k() const { return k_; }
  bool is_hartogs() const;
  /// Exponent g of the defining inequality; empty for the bidiscs.
  std::optional<Rational> gamma() const;

  bool operator==(const DomainSpec&) const = default;

private:
  DomainSpec(Kind kind, int k) : kind_(kind), k_(k) {}

  Kind kind_;
  int k_;
};

/// Points within this distance of a bounding hypersurface count as outside.
inline constexpr double kBoundaryMargin = 1e-14;

bool contains(const DomainSpec& spec, const Point2C& p);

/// Throws DomainError naming `what` when `p` is not in `spec`.
void require_inside(const DomainSpec& spec, const Point2C& p, std::string_view what);

/// Euclidean distance from `p` to the boundary of `spec`.
///
/// The domain is Reinhardt, so the nearest boundary point shares the
/// arguments of p and the problem reduces to the modulus quadrant: the
/// distance from (|z1|, |z2|) to the top face r2 = 1 and to the curve
/// r2 = r1^g. The curve distance is a 1-D minimisation over a smooth
/// parameterisation of the curve (grid scan, then golden section).
double boundary_distance(const DomainSpec& spec, const Point2C& p);

/// Deterministic 64-bit stream. Seeds are expanded with std::seed_seq so
/// (seed, stream) pairs give independent, reproducible substreams.
class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform point of the open unit disc.
  Complex unit_disc();

private:
  std::mt19937_64 engine_;
};

/// Rejection sampler for Lebesgue-uniform points of a domain, drawing from
/// the enclosing bidisc.
class DomainSampler {
public:
  DomainSampler(DomainSpec spec, std::uint64_t seed, std::uint64_t stream = 0);

  Point2C next();
  /// One bidisc draw: the point, and whether it landed inside the domain.
  std::pair<Point2C, bool> draw();

  std::uint64_t draws() const { return draws_; }
  std::uint64_t accepted() const { return accepted_; }
  const DomainSpec& spec() const { return spec_; }

  /// Upper limit of bidisc draws for a single accepted point.
  static constexpr std::uint64_t kMaxDrawsPerPoint = 1'000'000;

private:
  DomainSpec spec_;
  RandomStream rng_;
  std::uint64_t draws_ = 0;
  std::uint64_t accepted_ = 0;
};

/// n i.i.d. uniform points of `spec`. Throws PreconditionError when n == 0.
std::vector<Point2C> sample_uniform(const DomainSpec& spec, std::size_t n, std::uint64_t seed);

/// Uniform points conditioned to sit away from the boundary: for Hartogs
/// triangles |z1|^g <= margin * |z2| and |z2| <= margin, for bidiscs every
/// modulus <= margin. Used wherever "random interior pairs" are needed.
std::vector<Point2C> sample_interior(const DomainSpec& spec, std::size_t n, std::uint64_t seed,
                                     double margin = 0.9);

/// n pairs (z, w) of interior points (same margin rule as sample_interior)
/// with |z1 conj(w1)| <= st_bound and |z2 conj(w2)| <= st_bound.
std::vector<std::pair<Point2C, Point2C>> sample_interior_pairs(const DomainSpec& spec, std::size_t n,
                                                               std::uint64_t seed, double st_bound = 1.0,
                                                               double margin = 0.9);

enum class PathKind { Origin, SmoothLeviFlat, TopFace, Corner };

std::string to_string(PathKind kind);
PathKind parse_path_kind(std::string_view text);

/// A sequence of interior points approaching a boundary point.
struct BoundaryPath {
  PathKind kind;
  Point2C target;
  std::vector<Point2C> samples;
  std::vector<double> params; // eps_i, halving each step
};

/// Canonical boundary approach for a Hartogs triangle, eps = 2^-m for
/// `steps` consecutive m (steps >= 20).
///   Origin:          (0, eps)                        -> (0, 0)
///   TopFace:         (0, 1 - eps)                    -> (0, 1)
///   SmoothLeviFlat:  (x0 (1 - eps), 1/2)             -> (x0, 1/2), x0^g = 1/2
///   Corner:          ((1 - 2 eps)^(1/g), 1 - eps)    -> (1, 1)
BoundaryPath boundary_path(const DomainSpec& spec, PathKind kind, int steps = 20);

} // namespace hartogs
