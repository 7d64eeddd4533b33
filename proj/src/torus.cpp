#include "qcc/torus.hpp"

#include "qcc/errors.hpp"

namespace qcc {

LaurentScalar LaurentScalar::constant(std::int64_t c) { return s_power(0, c); }

LaurentScalar LaurentScalar::s_power(int k, std::int64_t c) {
  LaurentScalar x;
  x.add_term(k, c);
  return x;
}

void LaurentScalar::add_term(int k, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted && (it->second += c) == 0) terms_.erase(it);
}

LaurentScalar& LaurentScalar::operator+=(const LaurentScalar& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

LaurentScalar& LaurentScalar::operator-=(const LaurentScalar& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

LaurentScalar LaurentScalar::operator-() const {
  LaurentScalar r;
  for (const auto& [k, c] : terms_) r.add_term(k, -c);
  return r;
}

LaurentScalar LaurentScalar::operator*(const LaurentScalar& o) const {
  LaurentScalar r;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) r.add_term(k1 + k2, c1 * c2);
  return r;
}

LaurentScalar LaurentScalar::shifted(int k) const {
  LaurentScalar r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
  return r;
}

std::string LaurentScalar::to_string() const {
  if (terms_.empty()) return "0";
  auto term = [](int k, std::int64_t c) {
    if (k == 0) return std::to_string(c);
    const std::string pow = "s^" + std::to_string(k);
    if (c == 1) return pow;
    if (c == -1) return "-" + pow;
    return std::to_string(c) + "*" + pow;
  };
  if (terms_.size() == 1) return term(terms_.begin()->first, terms_.begin()->second);
  std::string out = "(";
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    out += (first ? "" : " + ") + term(it->first, it->second);
    first = false;
  }
  return out + ")";
}

TorusElement TorusElement::monomial(const DimVector& alpha, const LaurentScalar& c) {
  TorusElement x;
  x.add_term(alpha, c);
  return x;
}

void TorusElement::add_term(const DimVector& alpha, const LaurentScalar& c) {
  if (c.is_zero()) return;
  if (!terms_.empty() && terms_.begin()->first.size() != alpha.size())
    throw UsageError("torus exponent length mismatch");
  auto [it, inserted] = terms_.emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& o) {
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

TorusElement TorusElement::scaled(const LaurentScalar& c) const {
  TorusElement r;
  for (const auto& [a, x] : terms_) r.add_term(a, x * c);
  return r;
}

std::string TorusElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [a, c] : terms_) {
    if (!out.empty()) out += " + ";
    if (!c.is_one()) out += c.to_string() + "*";
    out += "X^" + qcc::to_string(a);
  }
  return out;
}

TorusElement QuantumTorus::mul(const TorusElement& x, const TorusElement& y) const {
  TorusElement r;
  for (const auto& [a, c] : x.terms()) {
    if (a.size() != rank()) throw UsageError("torus element does not match the Lambda context");
    for (const auto& [b, d] : y.terms()) {
      if (b.size() != rank()) throw UsageError("torus element does not match the Lambda context");
      r.add_term(a + b, (c * d).shifted(static_cast<int>(euler_form(lambda2_, a, b))));
    }
  }
  return r;
}

SpecializedScalar specialize(const LaurentScalar& c, std::uint32_t p) {
  SpecializedScalar out{0, 0, 0, 0};
  for (const auto& [k, coeff] : c.terms()) {
    const int r = ((k % 4) + 4) % 4;
    const int j = (k - r) / 4;
    Rational v = coeff;
    const Rational base = p;
    for (int i = 0; i < std::abs(j); ++i) {
      if (j > 0)
        v *= base;
      else
        v /= base;
    }
    out[r] += v;
  }
  return out;
}

SpecializedComparison compare_specialized(const TorusElement& lhs, const TorusElement& rhs, std::uint32_t p) {
  SpecializedComparison res;
  const TorusElement diff = lhs - rhs;
  for (const auto& [a, c] : diff.terms()) {
    const auto v = specialize(c, p);
    if (v[0] != 0 || v[1] != 0 || v[2] != 0 || v[3] != 0) {
      res.equal = false;
      res.first_difference = a;
      res.detail = "first differing exponent " + qcc::to_string(a) + ": lhs-rhs coefficient " + c.to_string() +
                   " is nonzero at s^4=" + std::to_string(p);
      return res;
    }
  }
  return res;
}

}  // namespace qcc
