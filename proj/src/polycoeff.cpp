#include "hartogs/polycoeff.hpp"

#include "hartogs/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>

namespace hartogs {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::monomial(const BigInt& c, std::size_t power) {
  std::vector<BigInt> v(power + 1);
  v[power] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

BigInt IntPoly::leading() const { return coeffs_.empty() ? BigInt(0) : coeffs_.back(); }

BigInt IntPoly::operator()(const BigInt& s) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

IntPoly& IntPoly::operator+=(const IntPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

IntPoly IntPoly::operator+(const IntPoly& other) const {
  IntPoly out = *this;
  out += other;
  return out;
}

IntPoly IntPoly::operator*(const IntPoly& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<BigInt> out(coeffs_.size() + other.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  return IntPoly(std::move(out));
}

IntPoly IntPoly::operator*(const BigInt& c) const {
  std::vector<BigInt> out = coeffs_;
  for (auto& x : out) x *= c;
  return IntPoly(std::move(out));
}

IntPoly IntPoly::shifted(std::size_t n) const {
  if (is_zero()) return {};
  std::vector<BigInt> out(n);
  out.insert(out.end(), coeffs_.begin(), coeffs_.end());
  return IntPoly(std::move(out));
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    const BigInt mag = abs(c);
    const std::string power = i == 0 ? "" : i == 1 ? "s" : "s^" + std::to_string(i);
    if (power.empty())
      out += mag.str();
    else if (mag == 1)
      out += power;
    else
      out += mag.str() + "*" + power;
  }
  return out;
}

void to_json(nlohmann::json& j, const IntPoly& poly) {
  j = nlohmann::json::array();
  const BigInt lo = std::numeric_limits<std::int64_t>::min();
  const BigInt hi = std::numeric_limits<std::int64_t>::max();
  for (const auto& c : poly.coeffs()) {
    if (c >= lo && c <= hi)
      j.push_back(c.convert_to<std::int64_t>());
    else
      j.push_back(c.str());
  }
}

IntPoly h(long l) {
  if (l < 0) throw PreconditionError("h_l needs l >= 0");
  return IntPoly(std::vector<BigInt>(static_cast<std::size_t>(l) + 1, BigInt(1)));
}

IntPoly p(int k) {
  if (k < 1) throw PreconditionError("p_k needs k >= 1");
  IntPoly out;
  for (int l = 1; l <= k - 1; ++l) out += IntPoly::monomial(BigInt(l) * (k - l), l - 1);
  return out;
}

IntPoly q(int k) {
  if (k < 1) throw PreconditionError("q_k needs k >= 1");
  IntPoly out;
  for (int l = 1; l <= k; ++l) {
    out += IntPoly::monomial(BigInt(l) * l, l - 1);
    out += IntPoly::monomial(BigInt(k - l) * (k - l), k + l - 1);
  }
  return out;
}

namespace {

void require_k2(int k, const char* what) {
  if (k < 2) throw PreconditionError(std::string(what) + " is only defined for k >= 2");
}

} // namespace

IntPoly coeff_sum_F1(int k) {
  require_k2(k, "F1");
  IntPoly out;
  for (int l = 0; l <= k - 2; ++l) out += h(l) * h(k - 2 - l);
  return out;
}

IntPoly coeff_sum_F2(int k) {
  require_k2(k, "F2");
  IntPoly out;
  for (int l = 0; l <= k - 2; ++l) out += (h(l) * h(l)).shifted(k - 1 - l) * BigInt(2);
  out += h(k - 1) * h(k - 1);
  return out;
}

IntPoly coeff_sum_F3(int k) {
  require_k2(k, "F3");
  return coeff_sum_F1(k).shifted(k);
}

NumeratorTriple numerator_triple(int k) {
  if (k < 1) throw PreconditionError("numerator triple needs k >= 1");
  NumeratorTriple t{k, {}, {}, {}};
  for (int l = 1; l <= k - 1; ++l) {
    t.g2k += IntPoly::monomial(BigInt(k) * l * (k - l), l - 1);
    t.g0 += IntPoly::monomial(BigInt(k) * l * (k - l), k + l - 1);
  }
  for (int l = 1; l <= k; ++l) {
    t.gk += IntPoly::monomial(BigInt(k) * l * l, l - 1);
    t.gk += IntPoly::monomial(BigInt(k) * (k - l) * (k - l), k + l - 1);
  }
  return t;
}

std::optional<std::size_t> first_difference(const IntPoly& a, const IntPoly& b) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  for (std::size_t i = 0; i < n; ++i)
    if (a.coeff(i) != b.coeff(i)) return i;
  return std::nullopt;
}

bool IdentityReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed(); });
}

IdentityReport verify_identities(int k_max) {
  if (k_max < 2) throw PreconditionError("verify_identities needs k_max >= 2");
  IdentityReport report{k_max, {}};
  for (int k = 2; k <= k_max; ++k) {
    IdentityCheck check{k, true, true, true, true, std::nullopt};
    auto compare = [&](bool& flag, const char* name, const IntPoly& lhs, const IntPoly& rhs) {
      if (auto at = first_difference(lhs, rhs)) {
        flag = false;
        if (!check.first_mismatch) check.first_mismatch = IdentityMismatch{name, *at, lhs.coeff(*at), rhs.coeff(*at)};
      }
    };
    const IntPoly pk = p(k);
    const IntPoly qk = q(k);
    const NumeratorTriple triple = numerator_triple(k);
    compare(check.f1_matches_p, "F1=p", coeff_sum_F1(k), pk);
    compare(check.f2_matches_q, "F2=q", coeff_sum_F2(k), qk);
    compare(check.f3_matches_shifted_p, "F3=s^k*p", coeff_sum_F3(k), pk.shifted(k));
    compare(check.triple_consistent, "g2k=k*p", triple.g2k, pk * BigInt(k));
    compare(check.triple_consistent, "gk=k*q", triple.gk, qk * BigInt(k));
    compare(check.triple_consistent, "g0=k*s^k*p", triple.g0, pk.shifted(k) * BigInt(k));
    report.checks.push_back(std::move(check));
  }
  return report;
}

} // namespace hartogs
