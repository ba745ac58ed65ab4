#pragma once

// Exact univariate polynomials over the rationals (GMP mpq_class), dense
// coefficient storage from low to high degree.

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace ptdomain {

using Rational = mpq_class;

/// Exact rational value of a finite double (every IEEE double is dyadic).
Rational exact_rational(double value);

/// Parses "p", "p/q" or a decimal literal such as "2.25" exactly.
Rational parse_rational(const std::string& text);

/// Nearest long double, accurate to the last bit of the 64-bit mantissa.
long double to_long_double(const Rational& value);

int sign(const Rational& value);

class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coefficients);
  RationalPoly(std::initializer_list<Rational> coefficients);

  static RationalPoly monomial(const Rational& coefficient, int degree);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Coefficient of x^k; zero beyond the degree.
  Rational coefficient(int k) const;
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  const Rational& leading() const;

  Rational operator()(const Rational& x) const;
  long double evaluate(long double x) const;

  RationalPoly derivative() const;
  RationalPoly monic() const;

  RationalPoly& operator+=(const RationalPoly& other);
  RationalPoly& operator-=(const RationalPoly& other);
  RationalPoly& operator*=(const Rational& scalar);

  friend RationalPoly operator+(RationalPoly lhs, const RationalPoly& rhs) {
    return lhs += rhs;
  }
  friend RationalPoly operator-(RationalPoly lhs, const RationalPoly& rhs) {
    return lhs -= rhs;
  }
  friend RationalPoly operator*(RationalPoly lhs, const Rational& rhs) {
    return lhs *= rhs;
  }
  friend RationalPoly operator*(const RationalPoly& lhs, const RationalPoly& rhs);
  friend bool operator==(const RationalPoly& lhs, const RationalPoly& rhs) {
    return lhs.coeffs_ == rhs.coeffs_;
  }

  /// Euclidean division; throws InvalidInput on a zero divisor.
  std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& divisor) const;

  std::string to_string(const std::string& variable = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic greatest common divisor (zero iff both arguments are zero).
RationalPoly gcd(RationalPoly a, RationalPoly b);

/// Polynomial with the given roots, each with multiplicity one.
RationalPoly from_roots(const std::vector<Rational>& roots);

/// Binomial coefficient C(n, k) for small n.
long binomial(int n, int k);

}  // namespace ptdomain
