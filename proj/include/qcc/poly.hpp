#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace qcc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Polynomial in one variable with rational coefficients, lowest degree first.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs);

  // Unique polynomial of degree < xs.size() through the points.
  static RationalPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_integral() const;
  Rational operator()(const Rational& x) const;
  bool operator==(const RationalPoly& o) const { return coeffs_ == o.coeffs_; }
  std::string to_string(const std::string& var = "q") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace qcc
