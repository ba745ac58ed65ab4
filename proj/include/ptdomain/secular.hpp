#pragma once

// Characteristic polynomial of H(N) and its reduction to the degree-J
// polynomial in s = E^2,
//
//   s^J - C(J,1) P s^{J-1} + C(J,2) Q s^{J-2} - C(J,3) R s^{J-3} + ...
//
// with binomially normalized coefficients (P, Q, R, S, T).

#include <string>
#include <vector>

#include "ptdomain/chain_model.hpp"
#include "ptdomain/polynomial.hpp"

namespace ptdomain {

/// det(H - E I) as a polynomial in E, exact.
struct CharPoly {
  int dimension = 0;
  RationalPoly coefficients;
};

/// Three-term recurrence D_k = (d_k - E) D_{k-1} + g^2 D_{k-2} on the band.
CharPoly char_poly(const ChainMatrix& matrix);

class SecularForm {
 public:
  /// From a monic polynomial in s of degree J >= 1.
  static SecularForm from_monic(const RationalPoly& polynomial);
  /// From the normalized tuple (P, Q, ...); J = tuple size.
  static SecularForm from_normalized(const std::vector<Rational>& normalized);

  int order() const noexcept { return static_cast<int>(normalized_.size()); }
  const RationalPoly& polynomial() const noexcept { return polynomial_; }
  /// (P, Q, R, S, T) truncated to length J.
  const std::vector<Rational>& normalized() const noexcept { return normalized_; }
  /// Normalized coefficient k = 1..J (P is k = 1); zero beyond J.
  Rational coefficient(int k) const;
  std::vector<long double> normalized_ld() const;

  friend bool operator==(const SecularForm& lhs, const SecularForm& rhs) {
    return lhs.polynomial_ == rhs.polynomial_;
  }

 private:
  SecularForm(RationalPoly polynomial, std::vector<Rational> normalized)
      : polynomial_(std::move(polynomial)), normalized_(std::move(normalized)) {}

  RationalPoly polynomial_;
  std::vector<Rational> normalized_;
};

/// Even N: substitutes s = E^2.  Odd N: removes the factor E first.
/// Throws InternalInconsistency on odd-power residue or non-divisibility.
SecularForm to_secular_form(const CharPoly& poly, int dimension);

/// build_chain -> char_poly -> to_secular_form.
SecularForm secular_form(const CouplingVector& couplings);

/// "P", "Q", "R", "S", "T" for k = 1..5.
std::string coefficient_name(int k);

struct NecessaryCondition {
  std::string name;  // e.g. "P >= 0"
  double value = 0.0;
  bool pass = false;
};

/// Sign status of each normalized coefficient (exact comparison with zero).
std::vector<NecessaryCondition> necessary_conditions(const SecularForm& form);

}  // namespace ptdomain
