#include "ptdomain/secular.hpp"

#include "ptdomain/errors.hpp"

namespace ptdomain {

CharPoly char_poly(const ChainMatrix& matrix) {
  const int n = matrix.dimension();
  const auto& diag = matrix.exact_diagonal();
  const auto& bonds = matrix.bond_products();
  // (d_k - E) as a polynomial in E.
  auto linear = [&](int k) { return RationalPoly{diag[static_cast<std::size_t>(k)], Rational(-1)}; };

  RationalPoly previous{Rational(1)};
  RationalPoly current = linear(0);
  for (int k = 1; k < n; ++k) {
    RationalPoly next = current * linear(k);
    next += previous * bonds[static_cast<std::size_t>(k - 1)];
    previous = std::move(current);
    current = std::move(next);
  }
  return CharPoly{n, std::move(current)};
}

namespace {

std::vector<Rational> normalize(const RationalPoly& monic) {
  const int order = monic.degree();
  std::vector<Rational> out;
  for (int k = 1; k <= order; ++k) {
    Rational value = monic.coefficient(order - k) / binomial(order, k);
    if (k % 2 == 1) value = -value;
    out.push_back(value);
  }
  return out;
}

}  // namespace

SecularForm SecularForm::from_monic(const RationalPoly& polynomial) {
  if (polynomial.degree() < 1) throw InvalidInput("secular form needs degree >= 1");
  if (polynomial.leading() != 1) throw InvalidInput("secular polynomial must be monic");
  return SecularForm(polynomial, normalize(polynomial));
}

SecularForm SecularForm::from_normalized(const std::vector<Rational>& normalized) {
  const int order = static_cast<int>(normalized.size());
  if (order < 1) throw InvalidInput("secular form needs at least one coefficient");
  std::vector<Rational> coeffs(static_cast<std::size_t>(order) + 1, Rational(0));
  coeffs[static_cast<std::size_t>(order)] = 1;
  for (int k = 1; k <= order; ++k) {
    Rational value = normalized[static_cast<std::size_t>(k - 1)] * binomial(order, k);
    if (k % 2 == 1) value = -value;
    coeffs[static_cast<std::size_t>(order - k)] = value;
  }
  return SecularForm(RationalPoly(std::move(coeffs)), normalized);
}

Rational SecularForm::coefficient(int k) const {
  if (k < 1 || k > order()) return Rational(0);
  return normalized_[static_cast<std::size_t>(k - 1)];
}

std::vector<long double> SecularForm::normalized_ld() const {
  std::vector<long double> out;
  out.reserve(normalized_.size());
  for (const auto& c : normalized_) out.push_back(to_long_double(c));
  return out;
}

SecularForm to_secular_form(const CharPoly& poly, int dimension) {
  require_supported_dimension(dimension);
  if (poly.coefficients.degree() != dimension) {
    throw InternalInconsistency("characteristic polynomial has degree " +
                                std::to_string(poly.coefficients.degree()) + ", expected " +
                                std::to_string(dimension));
  }
  const bool odd = dimension % 2 == 1;
  if (odd && poly.coefficients.coefficient(0) != 0) {
    throw InternalInconsistency("odd-N characteristic polynomial is not divisible by E");
  }
  const int shift = odd ? 1 : 0;
  const int order = dimension / 2;
  // det(H - E) = (-1)^N E^shift q(E^2) with q monic.
  const Rational sign_fix = odd ? Rational(-1) : Rational(1);
  std::vector<Rational> in_s(static_cast<std::size_t>(order) + 1);
  for (int e = shift; e <= dimension; ++e) {
    const Rational& c = poly.coefficients.coefficients()[static_cast<std::size_t>(e)];
    if ((e - shift) % 2 == 1) {
      if (c != 0) {
        throw InternalInconsistency("characteristic polynomial has a non-zero coefficient at E^" +
                                    std::to_string(e));
      }
      continue;
    }
    in_s[static_cast<std::size_t>((e - shift) / 2)] = c * sign_fix;
  }
  return SecularForm::from_monic(RationalPoly(std::move(in_s)));
}

SecularForm secular_form(const CouplingVector& couplings) {
  return to_secular_form(char_poly(build_chain(couplings)), couplings.dimension());
}

std::string coefficient_name(int k) {
  static const char* const names[] = {"P", "Q", "R", "S", "T"};
  if (k < 1 || k > 5) throw InvalidInput("coefficient index out of range");
  return names[k - 1];
}

std::vector<NecessaryCondition> necessary_conditions(const SecularForm& form) {
  std::vector<NecessaryCondition> out;
  for (int k = 1; k <= form.order(); ++k) {
    const Rational& c = form.normalized()[static_cast<std::size_t>(k - 1)];
    out.push_back({coefficient_name(k) + " >= 0", c.get_d(), c >= 0});
  }
  return out;
}

}  // namespace ptdomain
