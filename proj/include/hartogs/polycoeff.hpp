#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hartogs {

using BigInt = boost::multiprecision::cpp_int;

/// Dense univariate polynomial in s with exact integer coefficients.
/// coeffs()[i] multiplies s^i; trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients.
class IntPoly {
public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly monomial(const BigInt& c, std::size_t power);

  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  /// Coefficient of s^i, zero past the degree.
  BigInt coeff(std::size_t i) const;
  BigInt leading() const;

  BigInt operator()(const BigInt& s) const;

  IntPoly& operator+=(const IntPoly& other);
  IntPoly operator+(const IntPoly& other) const;
  IntPoly operator*(const IntPoly& other) const;
  IntPoly operator*(const BigInt& c) const;
  /// Multiply by s^n.
  IntPoly shifted(std::size_t n) const;

  bool operator==(const IntPoly& other) const = default;

  /// "c0 + c1*s + c2*s^2 + ..." (zero coefficients skipped, "0" for zero).
  std::string to_string() const;

private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// JSON integer array; entries outside the int64 range become decimal strings.
void to_json(nlohmann::json& j, const IntPoly& p);

/// 1 + s + ... + s^l.
IntPoly h(long l);
/// sum_{l=1}^{k-1} l (k-l) s^{l-1}; zero for k = 1.
IntPoly p(int k);
/// sum_{l=1}^{k} (l^2 + (k-l)^2 s^k) s^{l-1}.
IntPoly q(int k);

// Coefficient sums of the a^{3k-2}, a^{2k-2} and a^{k-2} terms, built
// literally from products of the h_l. All require k >= 2.
IntPoly coeff_sum_F1(int k);
IntPoly coeff_sum_F2(int k);
IntPoly coeff_sum_F3(int k);

/// The three surviving coefficient polynomials of the fat-kernel numerator,
/// each built from its own defining sum (not from p and q).
struct NumeratorTriple {
  int k;
  IntPoly g2k; // k sum l(k-l) s^{l-1}
  IntPoly gk;  // k sum (l^2 + (k-l)^2 s^k) s^{l-1}
  IntPoly g0;  // k sum l(k-l) s^{k+l-1}
};

NumeratorTriple numerator_triple(int k);

struct IdentityMismatch {
  std::string identity; // "F1=p", "F2=q", "F3=s^k p", "g2k=k p", ...
  std::size_t power;    // first differing coefficient
  BigInt lhs;
  BigInt rhs;
};

struct IdentityCheck {
  int k;
  bool f1_matches_p;
  bool f2_matches_q;
  bool f3_matches_shifted_p;
  bool triple_consistent;
  std::optional<IdentityMismatch> first_mismatch;

  bool passed() const {
    return f1_matches_p && f2_matches_q && f3_matches_shifted_p && triple_consistent;
  }
};

struct IdentityReport {
  int k_max;
  std::vector<IdentityCheck> checks; // k = 2..k_max

  bool passed() const;
};

/// Exact check of F1 = p_k, F2 = q_k, F3 = s^k p_k and of the
/// NumeratorTriple relations for every 2 <= k <= k_max.
IdentityReport verify_identities(int k_max);

/// Position of the first differing coefficient, if any.
std::optional<std::size_t> first_difference(const IntPoly& a, const IntPoly& b);

} // namespace hartogs
