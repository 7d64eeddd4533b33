#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "qcc/poly.hpp"
#include "qcc/quiver.hpp"

namespace qcc {

// Integer Laurent polynomial in s = t^{1/2}; q = t^2 = s^4.
class LaurentScalar {
 public:
  LaurentScalar() = default;
  static LaurentScalar constant(std::int64_t c);
  static LaurentScalar s_power(int k, std::int64_t c = 1);
  static LaurentScalar t_power(int k) { return s_power(2 * k); }
  static LaurentScalar q_power(int k) { return s_power(4 * k); }

  const std::map<int, std::int64_t>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_one() const noexcept { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1; }

  LaurentScalar& operator+=(const LaurentScalar& o);
  LaurentScalar& operator-=(const LaurentScalar& o);
  LaurentScalar operator+(const LaurentScalar& o) const { return LaurentScalar(*this) += o; }
  LaurentScalar operator-(const LaurentScalar& o) const { return LaurentScalar(*this) -= o; }
  LaurentScalar operator-() const;
  LaurentScalar operator*(const LaurentScalar& o) const;
  LaurentScalar shifted(int k) const;  // times s^k
  bool operator==(const LaurentScalar& o) const = default;
  std::string to_string() const;

 private:
  void add_term(int k, std::int64_t c);
  std::map<int, std::int64_t> terms_;
};

struct DescendingLex {
  bool operator()(const DimVector& a, const DimVector& b) const { return a > b; }
};

class TorusElement {
 public:
  using Terms = std::map<DimVector, LaurentScalar, DescendingLex>;

  TorusElement() = default;
  static TorusElement monomial(const DimVector& alpha, const LaurentScalar& c = LaurentScalar::constant(1));

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  void add_term(const DimVector& alpha, const LaurentScalar& c);

  TorusElement& operator+=(const TorusElement& o);
  TorusElement& operator-=(const TorusElement& o);
  TorusElement operator+(const TorusElement& o) const { return TorusElement(*this) += o; }
  TorusElement operator-(const TorusElement& o) const { return TorusElement(*this) -= o; }
  TorusElement scaled(const LaurentScalar& c) const;
  bool operator==(const TorusElement& o) const = default;
  // Terms in descending lexicographic order of exponent; "0" for the zero element.
  std::string to_string() const;

 private:
  Terms terms_;
};

// T_Lambda with X^e X^f = t^{Lambda(e,f)} X^{e+f} = s^{2 Lambda(e,f)} X^{e+f}.
class QuantumTorus {
 public:
  explicit QuantumTorus(IntMatrix lambda2) : lambda2_(std::move(lambda2)) {}
  const IntMatrix& lambda2() const noexcept { return lambda2_; }
  std::size_t rank() const noexcept { return lambda2_.rows(); }

  TorusElement mul(const TorusElement& x, const TorusElement& y) const;
  TorusElement mul(const TorusElement& x, const TorusElement& y, const TorusElement& z) const { return mul(mul(x, y), z); }

 private:
  IntMatrix lambda2_;
};

// Value of a Laurent scalar at s^4 = p: coefficients of 1, s, s^2, s^3 over Q.
using SpecializedScalar = std::array<Rational, 4>;
SpecializedScalar specialize(const LaurentScalar& c, std::uint32_t p);

struct SpecializedComparison {
  bool equal = true;
  std::optional<DimVector> first_difference;  // in print order
  std::string detail;
};
SpecializedComparison compare_specialized(const TorusElement& lhs, const TorusElement& rhs, std::uint32_t p);

}  // namespace qcc
