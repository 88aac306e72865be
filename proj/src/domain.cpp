#include "hartogs/domain.hpp"

#include "hartogs/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace hartogs {

Complex int_pow(Complex x, long n) {
  Complex r = 1.0;
  const Complex base = n < 0 ? 1.0 / x : x;
  for (long i = 0; i < std::abs(n); ++i) r *= base;
  return r;
}

bool Point2C::finite() const {
  return std::isfinite(z1.real()) && std::isfinite(z1.imag()) && std::isfinite(z2.real()) &&
         std::isfinite(z2.imag());
}

DomainSpec DomainSpec::fat(int k) {
  if (k < 1) throw PreconditionError("fat Hartogs exponent must be >= 1");
  return k == 1 ? classical() : DomainSpec(Kind::FatHartogs, k);
}

DomainSpec DomainSpec::thin(int k) {
  if (k < 1) throw PreconditionError("thin Hartogs exponent must be >= 1");
  return k == 1 ? classical() : DomainSpec(Kind::ThinHartogs, k);
}

DomainSpec DomainSpec::classical() { return DomainSpec(Kind::ClassicalHartogs, 1); }
DomainSpec DomainSpec::bidisc() { return DomainSpec(Kind::Bidisc, 0); }
DomainSpec DomainSpec::punctured_bidisc() { return DomainSpec(Kind::PuncturedBidisc, 0); }

namespace {

int parse_exponent(std::string_view digits, std::string_view whole) {
  int k = 0;
  const auto* end = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), end, k);
  if (digits.empty() || ec != std::errc{} || ptr != end || k < 1)
    throw PreconditionError("bad domain spec '" + std::string(whole) + "'");
  return k;
}

} // namespace

DomainSpec DomainSpec::parse(std::string_view text) {
  if (text == "classical") return classical();
  if (text == "bidisc") return bidisc();
  if (text == "punctured-bidisc") return punctured_bidisc();
  if (text.starts_with("fat:")) return fat(parse_exponent(text.substr(4), text));
  if (text.starts_with("thin:")) return thin(parse_exponent(text.substr(5), text));
  throw PreconditionError("unknown domain spec '" + std::string(text) + "'");
}

std::string DomainSpec::to_string() const {
  switch (kind_) {
  case Kind::FatHartogs: return "fat:" + std::to_string(k_);
  case Kind::ThinHartogs: return "thin:" + std::to_string(k_);
  case Kind::ClassicalHartogs: return "classical";
  case Kind::Bidisc: return "bidisc";
  case Kind::PuncturedBidisc: return "punctured-bidisc";
  }
  return "?";
}

bool DomainSpec::is_hartogs() const {
  return kind_ == Kind::FatHartogs || kind_ == Kind::ThinHartogs || kind_ == Kind::ClassicalHartogs;
}

std::optional<Rational> DomainSpec::gamma() const {
  switch (kind_) {
  case Kind::FatHartogs: return Rational{k_, 1};
  case Kind::ThinHartogs: return Rational{1, k_};
  case Kind::ClassicalHartogs: return Rational{1, 1};
  default: return std::nullopt;
  }
}

namespace {

// |z1|^g for the spec's exponent.
double lower_modulus(const DomainSpec& spec, double r1) {
  switch (spec.kind()) {
  case DomainSpec::Kind::FatHartogs: return std::pow(r1, spec.k());
  case DomainSpec::Kind::ThinHartogs: return std::pow(r1, 1.0 / spec.k());
  default: return r1;
  }
}

} // namespace

bool contains(const DomainSpec& spec, const Point2C& p) {
  if (!p.finite()) return false;
  const double r1 = std::abs(p.z1);
  const double r2 = std::abs(p.z2);
  if (!(1.0 - r2 > kBoundaryMargin)) return false;
  switch (spec.kind()) {
  case DomainSpec::Kind::Bidisc: return 1.0 - r1 > kBoundaryMargin;
  case DomainSpec::Kind::PuncturedBidisc: return 1.0 - r1 > kBoundaryMargin && r2 > kBoundaryMargin;
  default: return r2 - lower_modulus(spec, r1) > kBoundaryMargin;
  }
}

void require_inside(const DomainSpec& spec, const Point2C& p, std::string_view what) {
  if (!contains(spec, p))
    throw DomainError(std::string(what) + " is not inside " + spec.to_string());
}

namespace {

// Point of the curve r2 = r1^g at smooth parameter u in [0, 1].
std::pair<double, double> curve_point(const DomainSpec& spec, double u) {
  switch (spec.kind()) {
  case DomainSpec::Kind::FatHartogs: return {u, std::pow(u, spec.k())};
  case DomainSpec::Kind::ThinHartogs: return {std::pow(u, spec.k()), u};
  default: return {u, u};
  }
}

double curve_distance(const DomainSpec& spec, double x, double y) {
  auto dist2 = [&](double u) {
    const auto [cx, cy] = curve_point(spec, u);
    return (cx - x) * (cx - x) + (cy - y) * (cy - y);
  };

  constexpr int kGrid = 4096;
  constexpr double h = 1.0 / kGrid;
  int best = 0;
  double best_val = dist2(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double v = dist2(i * h);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }

  double lo = std::max(0.0, (best - 1) * h);
  double hi = std::min(1.0, (best + 1) * h);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = dist2(a);
  double fb = dist2(b);
  // Relative stopping rule: near the origin the minimiser can be ~1e-6 with
  // distances ~1e-18, so an absolute 1e-12 bracket would be far too coarse.
  for (int it = 0; it < 400 && hi - lo > 1e-12 * std::max(lo, 1e-6) && hi - lo > 1e-300; ++it) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = dist2(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = dist2(b);
    }
  }
  best_val = std::min({best_val, fa, fb, dist2(lo), dist2(hi)});
  double d = std::sqrt(best_val);

  // The vertical and horizontal segments to the curve are admissible
  // candidates, so the result never exceeds either.
  const auto g = *spec.gamma();
  const double vertical = y - std::pow(x, g.value());
  const double horizontal = std::pow(y, 1.0 / g.value()) - x;
  return std::min({d, vertical, horizontal});
}

} // namespace

double boundary_distance(const DomainSpec& spec, const Point2C& p) {
  require_inside(spec, p, "point");
  const double r1 = std::abs(p.z1);
  const double r2 = std::abs(p.z2);
  switch (spec.kind()) {
  case DomainSpec::Kind::Bidisc: return std::min(1.0 - r1, 1.0 - r2);
  case DomainSpec::Kind::PuncturedBidisc: return std::min({1.0 - r1, 1.0 - r2, r2});
  default: return std::min(1.0 - r2, curve_distance(spec, r1, r2));
  }
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double RandomStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Complex RandomStream::unit_disc() {
  const double r = std::sqrt(uniform());
  const double theta = 2.0 * std::numbers::pi * uniform();
  return {r * std::cos(theta), r * std::sin(theta)};
}

DomainSampler::DomainSampler(DomainSpec spec, std::uint64_t seed, std::uint64_t stream)
    : spec_(spec), rng_(seed, stream) {}

std::pair<Point2C, bool> DomainSampler::draw() {
  Point2C p{rng_.unit_disc(), rng_.unit_disc()};
  ++draws_;
  const bool in = contains(spec_, p);
  if (in) ++accepted_;
  return {p, in};
}

Point2C DomainSampler::next() {
  for (std::uint64_t i = 0; i < kMaxDrawsPerPoint; ++i) {
    auto [p, in] = draw();
    if (in) return p;
  }
  throw std::runtime_error("rejection sampler exceeded its draw budget for " + spec_.to_string());
}

std::vector<Point2C> sample_uniform(const DomainSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw PreconditionError("sample_uniform needs n >= 1");
  DomainSampler sampler(spec, seed);
  std::vector<Point2C> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sampler.next());
  return out;
}

namespace {

bool well_inside(const DomainSpec& spec, const Point2C& p, double margin) {
  const double r1 = std::abs(p.z1);
  const double r2 = std::abs(p.z2);
  if (r2 > margin) return false;
  if (spec.is_hartogs()) return lower_modulus(spec, r1) <= margin * r2;
  return r1 <= margin && (spec.kind() == DomainSpec::Kind::Bidisc || r2 >= 1.0 - margin);
}

void check_margin(double margin) {
  if (!(margin > 0.0 && margin < 1.0)) throw PreconditionError("margin must lie in (0, 1)");
}

} // namespace

std::vector<Point2C> sample_interior(const DomainSpec& spec, std::size_t n, std::uint64_t seed,
                                     double margin) {
  if (n == 0) throw PreconditionError("sample_interior needs n >= 1");
  check_margin(margin);
  DomainSampler sampler(spec, seed);
  std::vector<Point2C> out;
  out.reserve(n);
  while (out.size() < n) {
    const Point2C p = sampler.next();
    if (well_inside(spec, p, margin)) out.push_back(p);
  }
  return out;
}

std::vector<std::pair<Point2C, Point2C>> sample_interior_pairs(const DomainSpec& spec, std::size_t n,
                                                               std::uint64_t seed, double st_bound,
                                                               double margin) {
  if (n == 0) throw PreconditionError("sample_interior_pairs needs n >= 1");
  if (!(st_bound > 0.0)) throw PreconditionError("st_bound must be positive");
  check_margin(margin);
  DomainSampler sampler(spec, seed);
  auto next_inside = [&] {
    for (;;) {
      const Point2C p = sampler.next();
      if (well_inside(spec, p, margin)) return p;
    }
  };
  std::vector<std::pair<Point2C, Point2C>> out;
  out.reserve(n);
  while (out.size() < n) {
    const Point2C z = next_inside();
    const Point2C w = next_inside();
    if (std::abs(z.z1) * std::abs(w.z1) <= st_bound && std::abs(z.z2) * std::abs(w.z2) <= st_bound)
      out.emplace_back(z, w);
  }
  return out;
}

std::string to_string(PathKind kind) {
  switch (kind) {
  case PathKind::Origin: return "origin";
  case PathKind::SmoothLeviFlat: return "levi";
  case PathKind::TopFace: return "top";
  case PathKind::Corner: return "corner";
  }
  return "?";
}

PathKind parse_path_kind(std::string_view text) {
  if (text == "origin") return PathKind::Origin;
  if (text == "levi") return PathKind::SmoothLeviFlat;
  if (text == "top") return PathKind::TopFace;
  if (text == "corner") return PathKind::Corner;
  throw PreconditionError("unknown path kind '" + std::string(text) + "'");
}

BoundaryPath boundary_path(const DomainSpec& spec, PathKind kind, int steps) {
  if (!spec.is_hartogs()) throw PreconditionError("boundary paths are defined for Hartogs triangles");
  if (steps < 20) throw PreconditionError("boundary paths need at least 20 steps");
  const double g = spec.gamma()->value();

  BoundaryPath path{kind, {}, {}, {}};
  // Corner paths start at m = 2 so that 1 - 2 eps stays positive.
  const int first = kind == PathKind::Corner ? 2 : 1;
  const double x0 = std::pow(0.5, 1.0 / g);
  switch (kind) {
  case PathKind::Origin: path.target = {0.0, 0.0}; break;
  case PathKind::TopFace: path.target = {0.0, 1.0}; break;
  case PathKind::SmoothLeviFlat: path.target = {x0, 0.5}; break;
  case PathKind::Corner: path.target = {1.0, 1.0}; break;
  }
  for (int m = first; m < first + steps; ++m) {
    const double eps = std::ldexp(1.0, -m);
    Point2C p;
    switch (kind) {
    case PathKind::Origin: p = {0.0, eps}; break;
    case PathKind::TopFace: p = {0.0, 1.0 - eps}; break;
    case PathKind::SmoothLeviFlat: p = {x0 * (1.0 - eps), 0.5}; break;
    case PathKind::Corner: p = {std::pow(1.0 - 2.0 * eps, 1.0 / g), 1.0 - eps}; break;
    }
    path.samples.push_back(p);
    path.params.push_back(eps);
  }
  return path;
}

} // namespace hartogs
