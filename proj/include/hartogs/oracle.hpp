#pragma once

#include "hartogs/domain.hpp"
#include "hartogs/kernel.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hartogs {

/// Laurent monomial z1^a z2^b of a Hartogs triangle with its squared L2 norm
///   4 pi^2 / ((2a + 2)(2b + 2 + (2a + 2)/g)).
struct MonomialIndex {
  long a;
  long b;
  double norm_sq;
};

/// z1^a z2^b is square integrable on H_g iff 2b + 2 + (2a + 2)/g > 0.
bool admissible(const DomainSpec& spec, long a, long b);
/// Smallest admissible b for a given a.
long min_admissible_b(const DomainSpec& spec, long a);
/// Throws PreconditionError for non-admissible or non-Hartogs input.
double monomial_norm_sq(const DomainSpec& spec, long a, long b);

/// All admissible (a, b) with 0 <= a <= a_max and min_admissible_b(a) <= b <= b_max.
std::vector<MonomialIndex> basis_norms(const DomainSpec& spec, long a_max, long b_max);

/// Truncation rectangle of the monomial series. Row a runs over
/// b = min_admissible_b(a) .. b_max.
struct SeriesTruncation {
  long a_max = 0;
  long b_max = 0;
  std::size_t terms_used = 0;
  double tail_estimate = 0.0; // rigorous bound on |omitted terms|
};

struct SeriesResult {
  Complex value;
  double abs_sum; // sum of |terms| actually added
  SeriesTruncation truncation;
};

/// Upper bound on the sum of |s^a t^b| / norm_sq over the admissible
/// indices outside the rectangle, from closed-form geometric sums in b
/// and a (n rho^n) bound in a with rho = |s| |t|^(-1/g) < 1.
double series_tail_bound(const DomainSpec& spec, double abs_s, double abs_t, long a_max, long b_max);

/// Partial sum of  sum s^a t^b / norm_sq(a, b)  over `trunc`'s rectangle.
/// Throws NonconvergentTruncation when the tail bound exceeds `tolerance`
/// (absolute), DomainError when z or w is outside.
SeriesResult kernel_series(const DomainSpec& spec, const Point2C& z, const Point2C& w, SeriesTruncation trunc,
                           double tolerance = 1e300);

/// Picks the smallest rectangle whose tail bound is below
/// rel_tol * |first term| (a lower bound on the absolute series), then sums.
SeriesResult kernel_series_auto(const DomainSpec& spec, const Point2C& z, const Point2C& w, double rel_tol = 1e-10,
                                std::size_t max_terms = 50'000'000);

/// Named test function z1^a z2^b. Parses "one", "z1", "z2", "z2inv" and
/// "z1^a*z2^b" (either factor may be omitted, exponents may be negative).
struct TestFunction {
  long a = 0;
  long b = 0;

  static TestFunction parse(std::string_view text);
  std::string name() const;
  Complex operator()(const Point2C& p) const;
};

struct McEstimate {
  Complex value;
  double std_error;
  std::size_t n;     // in-domain samples used
  std::uint64_t draws; // bidisc draws (domain volume is estimated from these)
  std::uint64_t seed;
};

/// Number of fixed substreams for Monte Carlo runs. Results depend only on
/// (seed, n) and this constant, never on the thread count.
inline constexpr std::size_t kMcPartitions = 16;

/// <f, g> = integral of f conj(g) over the domain, estimated as
/// pi^2 * mean(1_domain f conj(g)) over uniform bidisc draws until n draws
/// have landed inside. Requires n >= 1000.
McEstimate inner_product_mc(const DomainSpec& spec, const TestFunction& f, const TestFunction& g, std::size_t n,
                            std::uint64_t seed);

struct ReproducingCheck {
  double residual; // |estimate - f(z)| / max(1, |f(z)|)
  Complex estimate;
  Complex expected;
  double std_error;
  std::size_t n;
  std::size_t excluded; // samples dropped for near-singular kernel values
};

/// Monte Carlo check of f(z) = integral B(z, w) f(w) dV(w) with the
/// closed-form kernel. f must be admissible and z inside the domain.
ReproducingCheck reproducing_check(const DomainSpec& spec, const TestFunction& f, const Point2C& z, std::size_t n,
                                   std::uint64_t seed);

} // namespace hartogs
