#include "ptdomain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptdomain/errors.hpp"
#include "ptdomain/roots.hpp"

namespace ptdomain {

namespace {

enum class Point { MinusInfinity, Zero, PlusInfinity };

std::vector<RationalPoly> sturm_chain(const RationalPoly& p) {
  std::vector<RationalPoly> chain{p};
  if (p.degree() < 1) return chain;
  chain.push_back(p.derivative());
  while (chain.back().degree() > 0) {
    const auto& a = chain[chain.size() - 2];
    const auto& b = chain.back();
    RationalPoly rem = a.divmod(b).second;
    if (rem.is_zero()) break;
    // Positive rescaling keeps every sign; it only tames coefficient growth.
    Rational scale = rem.leading();
    if (scale < 0) scale = -scale;
    rem *= Rational(-1) / scale;
    chain.push_back(std::move(rem));
  }
  return chain;
}

int sign_at(const RationalPoly& p, Point at) {
  if (p.is_zero()) return 0;
  switch (at) {
    case Point::Zero:
      return sign(p.coefficient(0));
    case Point::PlusInfinity:
      return sign(p.leading());
    case Point::MinusInfinity:
      return (p.degree() % 2 == 0) ? sign(p.leading()) : -sign(p.leading());
  }
  return 0;
}

int variations(const std::vector<RationalPoly>& chain, Point at) {
  int count = 0;
  int last = 0;
  for (const auto& p : chain) {
    const int s = sign_at(p, at);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

RationalPoly exact_quotient(const RationalPoly& a, const RationalPoly& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero()) throw InternalInconsistency("inexact polynomial division");
  return q;
}

// Distinct real roots of a squarefree polynomial.
int real_root_count(const RationalPoly& p) {
  const auto chain = sturm_chain(p);
  return variations(chain, Point::MinusInfinity) - variations(chain, Point::PlusInfinity);
}

// Yun/Musser squarefree factorization: f = prod factor_i^i (up to a constant).
std::vector<std::pair<RationalPoly, int>> squarefree_factors(const RationalPoly& f) {
  std::vector<std::pair<RationalPoly, int>> out;
  RationalPoly c = gcd(f, f.derivative());
  RationalPoly w = exact_quotient(f.monic(), c);
  for (int i = 1; w.degree() > 0; ++i) {
    RationalPoly y = gcd(w, c);
    RationalPoly z = exact_quotient(w, y);
    if (z.degree() > 0) out.emplace_back(std::move(z), i);
    w = std::move(y);
    c = exact_quotient(c, w);
  }
  return out;
}

bool energy_less(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

SturmCertificate sturm_classify(const RationalPoly& polynomial) {
  if (polynomial.is_zero()) throw InvalidInput("Sturm classification of the zero polynomial");
  SturmCertificate cert;
  const RationalPoly common = gcd(polynomial, polynomial.derivative());
  cert.has_multiple_root = common.degree() > 0;
  cert.squarefree_part = exact_quotient(polynomial.monic(), common);
  cert.has_root_at_zero = sign(polynomial.coefficient(0)) == 0 && polynomial.degree() > 0;

  RationalPoly reduced = cert.squarefree_part;
  if (cert.has_root_at_zero) reduced = exact_quotient(reduced, RationalPoly{Rational(0), Rational(1)});
  const auto chain = sturm_chain(reduced);
  cert.variations_at_zero = variations(chain, Point::Zero);
  cert.variations_at_infinity = variations(chain, Point::PlusInfinity);
  cert.nonneg_real_roots =
      cert.variations_at_zero - cert.variations_at_infinity + (cert.has_root_at_zero ? 1 : 0);
  return cert;
}

SturmCertificate sturm_classify(const SecularForm& form) { return sturm_classify(form.polynomial()); }

Verdict oracle_verdict(const SecularForm& form) {
  const SturmCertificate cert = sturm_classify(form);
  Verdict out;
  if (!cert.all_roots_real_nonneg()) {
    out.state = Membership::Outside;
    const int real = real_root_count(cert.squarefree_part);
    out.witness = real < cert.squarefree_part.degree() ? "non-real root" : "negative root";
  } else if (cert.has_multiple_root || cert.has_root_at_zero) {
    out.state = Membership::BoundaryBand;
    out.witness = cert.has_root_at_zero ? "root at s = 0" : "multiple root";
  } else {
    out.state = Membership::Inside;
  }
  out.notes.push_back("exact Sturm count: " + std::to_string(cert.nonneg_real_roots) + " distinct root(s) in [0, inf)");

  if (out.state == Membership::BoundaryBand) return out;
  try {
    const SpectrumReport report = numeric_spectrum(form, false);
    if (out.state == Membership::Inside) {
      out.margin = std::min(report.min_root, report.min_root_gap);
    } else {
      double depth = 0.0;
      for (const auto& s : report.s_roots) {
        depth = std::max({depth, std::abs(s.imag()), -s.real()});
      }
      out.margin = -depth;
    }
  } catch (const ConvergenceError& e) {
    out.notes.push_back(std::string("margin unavailable: ") + e.what());
  }
  return out;
}

Verdict oracle_verdict(const CouplingVector& couplings) { return oracle_verdict(secular_form(couplings)); }

const char* to_string(SpectrumClass value) noexcept {
  switch (value) {
    case SpectrumClass::AllRealSimple:
      return "AllRealSimple";
    case SpectrumClass::DegenerateReal:
      return "DegenerateReal";
    case SpectrumClass::ComplexPairs:
      return "ComplexPairs";
  }
  return "?";
}

SpectrumReport numeric_spectrum(const SecularForm& form, bool odd_dimension) {
  using Complex = std::complex<double>;
  const RationalPoly& f = form.polynomial();
  SpectrumReport report;

  // Roots per squarefree factor, each carried with its exact multiplicity.
  struct Root {
    Complex s;
    int multiplicity;
  };
  std::vector<Root> roots;
  for (const auto& [factor, multiplicity] : squarefree_factors(f)) {
    RationalPoly rest = factor;
    if (sign(rest.coefficient(0)) == 0) {
      roots.push_back({Complex(0.0, 0.0), multiplicity});
      rest = exact_quotient(rest, RationalPoly{Rational(0), Rational(1)});
    }
    if (rest.degree() < 1) continue;
    const bool all_real = real_root_count(rest) == rest.degree();
    std::vector<long double> coeffs;
    for (const auto& c : rest.coefficients()) coeffs.push_back(to_long_double(c));
    std::vector<std::complex<long double>> found;
    try {
      found = polynomial_roots(coeffs);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(std::string(e.what()) + " for " + f.to_string("s"));
    }
    for (const auto& z : found) {
      Complex s(static_cast<double>(z.real()), all_real ? 0.0 : static_cast<double>(z.imag()));
      roots.push_back({s, multiplicity});
    }
  }

  // Residual against the full polynomial, relative to its coefficient scale.
  for (const auto& r : roots) {
    std::complex<long double> value(0.0L, 0.0L);
    long double magnitude = 0.0L;
    const std::complex<long double> s(r.s.real(), r.s.imag());
    const auto& coeffs = f.coefficients();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      const long double c = to_long_double(*it);
      value = value * s + c;
      magnitude = magnitude * std::abs(s) + std::abs(c);
    }
    const double residual = magnitude > 0 ? static_cast<double>(std::abs(value) / magnitude) : 0.0;
    report.max_residual = std::max(report.max_residual, residual);
  }

  int zero_multiplicity = odd_dimension ? 1 : 0;
  for (const auto& r : roots) {
    for (int k = 0; k < r.multiplicity; ++k) report.s_roots.push_back(r.s);
    if (r.s == Complex(0.0, 0.0)) {
      zero_multiplicity += 2 * r.multiplicity;
      continue;
    }
    const Complex e = std::sqrt(r.s);
    for (int k = 0; k < r.multiplicity; ++k) {
      report.energies.push_back(e);
      report.energies.push_back(-e);
    }
  }
  for (int k = 0; k < zero_multiplicity; ++k) report.energies.push_back(Complex(0.0, 0.0));
  std::sort(report.energies.begin(), report.energies.end(), energy_less);

  // Energies closer than the relative cluster tolerance count as one level.
  const auto& e = report.energies;
  std::vector<int> cluster(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    cluster[i] = static_cast<int>(i);
    for (std::size_t j = 0; j < i; ++j) {
      const double scale = std::max({1.0, std::abs(e[i]), std::abs(e[j])});
      if (std::abs(e[i] - e[j]) <= kClusterTolerance * scale) {
        cluster[i] = cluster[j];
        break;
      }
    }
  }
  std::vector<int> pattern;
  bool complex_energy = false;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i].imag() != 0.0) complex_energy = true;
    if (cluster[i] != static_cast<int>(i)) continue;
    pattern.push_back(static_cast<int>(std::count(cluster.begin(), cluster.end(), cluster[i])));
  }
  std::sort(pattern.rbegin(), pattern.rend());
  const bool degenerate = !pattern.empty() && pattern.front() > 1;
  report.degeneracy_pattern = pattern;

  report.classification = complex_energy ? SpectrumClass::ComplexPairs
                          : degenerate   ? SpectrumClass::DegenerateReal
                                         : SpectrumClass::AllRealSimple;

  report.min_root = std::numeric_limits<double>::infinity();
  report.min_root_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < report.s_roots.size(); ++i) {
    report.min_root = std::min(report.min_root, std::abs(report.s_roots[i]));
    for (std::size_t j = i + 1; j < report.s_roots.size(); ++j) {
      report.min_root_gap = std::min(report.min_root_gap, std::abs(report.s_roots[i] - report.s_roots[j]));
    }
  }
  std::sort(report.s_roots.begin(), report.s_roots.end(), energy_less);
  return report;
}

SpectrumReport numeric_spectrum(const CouplingVector& couplings) {
  return numeric_spectrum(secular_form(couplings), couplings.dimension() % 2 == 1);
}

}  // namespace ptdomain
