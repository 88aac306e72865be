#include "hartogs/oracle.hpp"

#include "hartogs/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace hartogs {

namespace {

constexpr double kFourPi2 = 4.0 * std::numbers::pi * std::numbers::pi;

Rational hartogs_gamma(const DomainSpec& spec) {
  auto g = spec.gamma();
  if (!g) throw PreconditionError("monomial series are implemented for Hartogs triangles only");
  return *g;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// 2b + 2 + (2a + 2)/g
double weight_c(const Rational& g, long a, long b) {
  return 2.0 * (b + 1) + 2.0 * (a + 1) * static_cast<double>(g.den) / static_cast<double>(g.num);
}

} // namespace

bool admissible(const DomainSpec& spec, long a, long b) {
  const Rational g = hartogs_gamma(spec);
  return a >= 0 && g.num * (b + 1) + (a + 1) * g.den > 0;
}

long min_admissible_b(const DomainSpec& spec, long a) {
  const Rational g = hartogs_gamma(spec);
  // b + 1 > -(a + 1) den / num
  return floor_div(-(a + 1) * g.den, g.num);
}

double monomial_norm_sq(const DomainSpec& spec, long a, long b) {
  if (!admissible(spec, a, b))
    throw PreconditionError("z1^" + std::to_string(a) + " z2^" + std::to_string(b) + " is not square integrable");
  const Rational g = hartogs_gamma(spec);
  return kFourPi2 / ((2.0 * a + 2.0) * weight_c(g, a, b));
}

std::vector<MonomialIndex> basis_norms(const DomainSpec& spec, long a_max, long b_max) {
  if (a_max < 0) throw PreconditionError("a_max must be >= 0");
  std::vector<MonomialIndex> out;
  for (long a = 0; a <= a_max; ++a)
    for (long b = min_admissible_b(spec, a); b <= b_max; ++b) out.push_back({a, b, monomial_norm_sq(spec, a, b)});
  return out;
}

double series_tail_bound(const DomainSpec& spec, double abs_s, double abs_t, long a_max, long b_max) {
  const Rational g = hartogs_gamma(spec);
  const double tau = abs_t;
  if (!(tau > 0.0 && tau < 1.0)) return std::numeric_limits<double>::infinity();
  const double log_tau = std::log(tau);
  const double log_s = abs_s > 0.0 ? std::log(abs_s) : -std::numeric_limits<double>::infinity();
  const double geo = 1.0 / (1.0 - tau);
  const double geo2 = tau / ((1.0 - tau) * (1.0 - tau));

  // Rows inside the rectangle: sum over b > b_max, exact closed form
  // sum_{m>=0} tau^(b0+m) (c + 2m) = tau^b0 (c/(1-tau) + 2 tau/(1-tau)^2).
  double tail = 0.0;
  for (long a = 0; a <= a_max; ++a) {
    if (a > 0 && abs_s == 0.0) break;
    const long b0 = std::max(min_admissible_b(spec, a), b_max + 1);
    const double log_mag = (a > 0 ? a * log_s : 0.0) + b0 * log_tau;
    tail += std::exp(log_mag) * (2.0 * a + 2.0) / kFourPi2 * (weight_c(g, a, b0) * geo + 2.0 * geo2);
  }

  // Rows beyond a_max: whole-row sums bounded by C (a+1) rho^a.
  if (abs_s > 0.0) {
    const double inv_g = static_cast<double>(g.den) / static_cast<double>(g.num);
    const double log_rho = log_s - inv_g * log_tau;
    if (!(log_rho < 0.0)) return std::numeric_limits<double>::infinity();
    const double rho = std::exp(log_rho);
    const double c = std::exp((-1.0 - inv_g) * log_tau) * 2.0 / kFourPi2 * (2.0 * geo + 2.0 * geo2);
    const double n = static_cast<double>(a_max) + 2.0;
    tail += c * std::exp((a_max + 1) * log_rho) * (n - (n - 1.0) * rho) / ((1.0 - rho) * (1.0 - rho));
  }
  return tail;
}

SeriesResult kernel_series(const DomainSpec& spec, const Point2C& z, const Point2C& w, SeriesTruncation trunc,
                           double tolerance) {
  const Rational g = hartogs_gamma(spec);
  require_inside(spec, z, "z");
  require_inside(spec, w, "w");
  if (trunc.a_max < 0) throw PreconditionError("a_max must be >= 0");
  const KernelArgs args = KernelArgs::from(z, w);
  const Complex inv_t = 1.0 / args.t;

  auto tpow = [&](long n) {
    Complex r = 1.0;
    const Complex base = n < 0 ? inv_t : args.t;
    for (long i = 0; i < std::abs(n); ++i) r *= base;
    return r;
  };

  Complex sum = 0.0;
  double abs_sum = 0.0;
  std::size_t terms = 0;
  long prev_b = min_admissible_b(spec, 0);
  Complex row_start = tpow(prev_b); // s^a t^{b_min(a)}
  for (long a = 0; a <= trunc.a_max; ++a) {
    const long b_min = min_admissible_b(spec, a);
    if (a > 0) {
      row_start *= args.s * tpow(b_min - prev_b);
      prev_b = b_min;
    }
    Complex cur = row_start;
    for (long b = b_min; b <= trunc.b_max; ++b) {
      const Complex term = cur * ((2.0 * a + 2.0) * weight_c(g, a, b) / kFourPi2);
      sum += term;
      abs_sum += std::abs(term);
      ++terms;
      cur *= args.t;
    }
  }

  trunc.terms_used = terms;
  trunc.tail_estimate = series_tail_bound(spec, std::abs(args.s), std::abs(args.t), trunc.a_max, trunc.b_max);
  if (trunc.tail_estimate > tolerance)
    throw NonconvergentTruncation("series tail bound " + std::to_string(trunc.tail_estimate) + " exceeds tolerance");
  return {sum, abs_sum, trunc};
}

SeriesResult kernel_series_auto(const DomainSpec& spec, const Point2C& z, const Point2C& w, double rel_tol,
                                std::size_t max_terms) {
  require_inside(spec, z, "z");
  require_inside(spec, w, "w");
  const KernelArgs args = KernelArgs::from(z, w);
  const double abs_s = std::abs(args.s);
  const double abs_t = std::abs(args.t);

  const long b0 = min_admissible_b(spec, 0);
  const double first = std::pow(abs_t, static_cast<double>(b0)) / monomial_norm_sq(spec, 0, b0);
  const double target = rel_tol * first;

  // a_max: grow until the beyond-a_max bound (b_max irrelevant there) is small.
  long a_max = 0;
  const long huge_b = 1'000'000'000;
  while (series_tail_bound(spec, abs_s, abs_t, a_max, huge_b) > 0.5 * target) {
    if (++a_max > 1'000'000) throw NonconvergentTruncation("series does not converge at this pair");
  }
  // b_max: doubling then bisection on the total bound.
  long hi = std::max<long>(1, -b0);
  while (series_tail_bound(spec, abs_s, abs_t, a_max, hi) > target) {
    hi *= 2;
    if (hi > 100'000'000) throw NonconvergentTruncation("series does not converge at this pair");
  }
  long lo = std::min<long>(0, b0);
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    (series_tail_bound(spec, abs_s, abs_t, a_max, mid) > target ? lo : hi) = mid;
  }

  const double rows = static_cast<double>(a_max + 1);
  const double longest = static_cast<double>(hi - min_admissible_b(spec, a_max) + 1);
  if (rows * longest > static_cast<double>(max_terms))
    throw NonconvergentTruncation("series truncation would need more than " + std::to_string(max_terms) + " terms");
  return kernel_series(spec, z, w, SeriesTruncation{a_max, hi, 0, 0.0});
}

TestFunction TestFunction::parse(std::string_view text) {
  if (text == "one") return {0, 0};
  if (text == "z1") return {1, 0};
  if (text == "z2") return {0, 1};
  if (text == "z2inv") return {0, -1};

  auto bad = [&] { return PreconditionError("bad test function '" + std::string(text) + "'"); };
  TestFunction f;
  bool seen_z1 = false;
  bool seen_z2 = false;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto star = rest.find('*');
    std::string_view factor = rest.substr(0, star);
    rest = star == std::string_view::npos ? std::string_view{} : rest.substr(star + 1);
    if (star != std::string_view::npos && rest.empty()) throw bad();

    long exponent = 1;
    const auto caret = factor.find('^');
    std::string_view var = factor.substr(0, caret);
    if (caret != std::string_view::npos) {
      std::string_view digits = factor.substr(caret + 1);
      const auto* end = digits.data() + digits.size();
      auto [ptr, ec] = std::from_chars(digits.data(), end, exponent);
      if (digits.empty() || ec != std::errc{} || ptr != end) throw bad();
    }
    if (var == "z1" && !seen_z1) {
      f.a = exponent;
      seen_z1 = true;
    } else if (var == "z2" && !seen_z2) {
      f.b = exponent;
      seen_z2 = true;
    } else {
      throw bad();
    }
  }
  if (!seen_z1 && !seen_z2) throw bad();
  if (f.a < 0) throw PreconditionError("negative powers of z1 are not holomorphic on Hartogs triangles");
  return f;
}

std::string TestFunction::name() const {
  if (a == 0 && b == 0) return "one";
  if (a == 1 && b == 0) return "z1";
  if (a == 0 && b == 1) return "z2";
  if (a == 0 && b == -1) return "z2inv";
  return "z1^" + std::to_string(a) + "*z2^" + std::to_string(b);
}

namespace {


// Per-substream accumulator of X = 1_domain * v over bidisc draws.
struct McAccumulator {
  Complex sum = 0.0;
  double sum_sq_re = 0.0;
  double sum_sq_im = 0.0;
  std::uint64_t draws = 0;
  std::size_t accepted = 0;
  std::size_t excluded = 0;
};

// Runs `chunk(i)` for i in [0, kMcPartitions) on a small worker pool and
// returns results indexed by partition, so reductions are order-stable.
template <typename Fn>
std::vector<McAccumulator> run_partitions(Fn&& chunk) {
  std::vector<McAccumulator> results(kMcPartitions);
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, kMcPartitions);
  if (workers == 1) {
    for (std::size_t i = 0; i < kMcPartitions; ++i) results[i] = chunk(i);
    return results;
  }
  std::vector<std::thread> pool;
  for (std::size_t wkr = 0; wkr < workers; ++wkr)
    pool.emplace_back([&, wkr] {
      for (std::size_t i = wkr; i < kMcPartitions; i += workers) results[i] = chunk(i);
    });
  for (auto& t : pool) t.join();
  return results;
}

std::size_t partition_size(std::size_t n, std::size_t i) {
  return n / kMcPartitions + (i < n % kMcPartitions ? 1 : 0);
}

// Integrand v(w) evaluated at accepted points; returns false to exclude.
template <typename Integrand>
McAccumulator accumulate(const DomainSpec& spec, std::size_t n, std::uint64_t seed, std::size_t part,
                         Integrand& integrand) {
  McAccumulator acc;
  DomainSampler sampler(spec, seed, part);
  const std::size_t want = partition_size(n, part);
  while (acc.accepted < want) {
    auto [pt, in] = sampler.draw();
    if (!in) continue;
    ++acc.accepted;
    Complex v;
    if (!integrand(pt, v)) {
      ++acc.excluded;
      continue;
    }
    acc.sum += v;
    acc.sum_sq_re += v.real() * v.real();
    acc.sum_sq_im += v.imag() * v.imag();
  }
  acc.draws = sampler.draws();
  return acc;
}

struct McTotals {
  Complex mean;
  double std_error;
  std::uint64_t draws;
  std::size_t excluded;
};

McTotals combine(const std::vector<McAccumulator>& parts) {
  constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
  McAccumulator total;
  for (const auto& p : parts) {
    total.sum += p.sum;
    total.sum_sq_re += p.sum_sq_re;
    total.sum_sq_im += p.sum_sq_im;
    total.draws += p.draws;
    total.excluded += p.excluded;
  }
  const double n = static_cast<double>(total.draws);
  const Complex mean = total.sum / n;
  const double var_re = std::max(0.0, total.sum_sq_re / n - mean.real() * mean.real());
  const double var_im = std::max(0.0, total.sum_sq_im / n - mean.imag() * mean.imag());
  return {kPi2 * mean, kPi2 * std::sqrt((var_re + var_im) / n), total.draws, total.excluded};
}

} // namespace

Complex TestFunction::operator()(const Point2C& p) const { return int_pow(p.z1, a) * int_pow(p.z2, b); }

McEstimate inner_product_mc(const DomainSpec& spec, const TestFunction& f, const TestFunction& g, std::size_t n,
                            std::uint64_t seed) {
  if (n < 1000) throw PreconditionError("inner_product_mc needs n >= 1000");
  auto parts = run_partitions([&](std::size_t part) {
    auto integrand = [&](const Point2C& pt, Complex& v) {
      v = f(pt) * std::conj(g(pt));
      return true;
    };
    return accumulate(spec, n, seed, part, integrand);
  });
  const McTotals t = combine(parts);
  return {t.mean, t.std_error, n, t.draws, seed};
}

ReproducingCheck reproducing_check(const DomainSpec& spec, const TestFunction& f, const Point2C& z, std::size_t n,
                                   std::uint64_t seed) {
  if (n < 1000) throw PreconditionError("reproducing_check needs n >= 1000");
  if (spec.is_hartogs() && !admissible(spec, f.a, f.b))
    throw PreconditionError(f.name() + " is not in the Bergman space of " + spec.to_string());
  require_inside(spec, z, "z");
  auto parts = run_partitions([&](std::size_t part) {
    auto integrand = [&](const Point2C& w, Complex& v) {
      const KernelValue kv = kernel_from_args(spec, KernelArgs::from(z, w));
      if (kv.near_singular || !std::isfinite(std::abs(kv.value))) return false;
      v = kv.value * f(w);
      return true;
    };
    return accumulate(spec, n, seed, part, integrand);
  });
  const McTotals t = combine(parts);
  const Complex expected = f(z);
  const double residual = std::abs(t.mean - expected) / std::max(1.0, std::abs(expected));
  return {residual, t.mean, expected, t.std_error, n, t.excluded};
}

} // namespace hartogs
