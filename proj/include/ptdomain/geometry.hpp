#pragma once

// Geometry of the domain boundary: the extreme exceptional point (EEP) at the
// corner, the strong-coupling chart around it, the J = 3 window for R, the
// N = 6 double-degeneracy curve and pairwise-confluence surface, and ray
// bisection towards the boundary.

#include <optional>
#include <string>
#include <vector>

#include "ptdomain/chain_model.hpp"
#include "ptdomain/oracle.hpp"
#include "ptdomain/polynomial.hpp"
#include "ptdomain/secular.hpp"

namespace ptdomain {

struct EepPoint {
  int dimension = 0;
  CouplingVector couplings;          // g_k^2 = (N-k) k
  std::vector<long> literal_values;  // (N-k) k itself, for comparison
};

/// Verifies exactly that the secular form is s^J; throws InternalInconsistency otherwise.
EepPoint eep_point(int dimension);

/// gamma_n(t) = t + t^2 + ... + t^{J-1} + G_n t^J, evaluated exactly.
Rational ansatz_gamma(int half_dimension, double t, double g_coefficient);

/// g_n = g_n^max sqrt(1 - gamma_n(t)); DomainError unless every gamma_n is in [0, 1].
CouplingVector ansatz_to_couplings(int dimension, double t, const std::vector<double>& g_coefficients);

struct J3Window {
  double B = 0.0;
  double q = 0.0;
  double lower = 0.0;  // bounds on R / (2 B^{3/2})
  double upper = 0.0;
  double value = 0.0;  // R / (2 B^{3/2})
  bool contains = false;
};

/// Window for R at fixed (P, Q), assuming P >= 0.  DomainError when B <= 0 or Q < 0.
J3Window reparam_j3(double P, double Q, double R);

/// Upper window bound 1 + (q/2 - 1) sqrt(1 + q) as a function of q alone.
double j3_upper_bound(double q);
/// max(0, (q/2 - 1) sqrt(1 + q) - 1).
double j3_lower_bound(double q);

/// Exact Taylor coefficients c_0..c_order of j3_upper_bound at q = 0.
std::vector<Rational> j3_upper_series(int order);

/// s^3 - (32x^2 + 25y^2) s^2 + (256x^4 + 800x^2y^2) s - 6400x^4y^2, checked
/// exactly against (s - 16x^2)^2 (s - 25y^2).
SecularForm confluence_surface_n6(const Rational& x, const Rational& y);
SecularForm confluence_surface_n6(double x, double y);

struct DepPoint {
  // N = 6 couplings (g1, g2, g3) = (c, b, a).
  double c = 0.0;
  double b = 0.0;
  double a = 0.0;
  Rational c_squared{};
  Rational b_squared{};
  Rational a_exact{};
  CouplingVector couplings;
  double s_double = 0.0;  // doubly degenerate root of the secular cubic
  double z = 0.0;         // s_double = 16 z^2
  // Residuals of the defining relations.
  double fei_residual = 0.0;        // b^2 - (c^2 + 15)(a - 1)/5
  double second_residual = 0.0;     // -66a^2 - 36b^2 + 4c^2a^2 - 189 + 252c^2 - 4b^2a^2 - a^4
  double inequality_slack = 0.0;    // 84c^2 - 63 - (12/5)(a - 1)(15 + c^2)
  bool r_vanishes_exactly = false;
  SpectrumReport spectrum{};
  std::vector<std::string> notes{};
};

/// Value of the second double-degeneracy condition at (a, b^2, c^2).
Rational dep_second_condition(const Rational& a, const Rational& b_squared, const Rational& c_squared);

/// Solves the N = 6 double-degeneracy system for a in [1, 3] at fixed c > 0.
/// Returns nothing when no admissible root exists; `reason` receives why.
std::optional<DepPoint> dep_solve_n6(double c, std::string* reason = nullptr);

struct BoundaryPoint {
  CouplingVector point;
  double radius = 0.0;
  double inside_radius = 0.0;   // last radius certified Inside
  double outside_radius = 0.0;  // first radius not Inside
  double root_gap = 0.0;        // min(|s|, min |s_i - s_j|) at the returned point
};

/// Walks from the origin along `direction` with the exact oracle and bisects
/// the first exit from the domain to width `tol`.  NoBoundaryFound when the
/// ray stays Inside up to the box g_k^2 <= 1.2 (N-k) k.
BoundaryPoint boundary_bisect(int dimension, const std::vector<double>& direction, double tol = 1e-10);

}  // namespace ptdomain
