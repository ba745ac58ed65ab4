#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ptdomain {

enum class Membership { Inside, Outside, BoundaryBand };

std::string_view to_string(Membership state) noexcept;

/// Derived quantities of the J >= 2 criteria: B = P^2 - Q, q = Q/B,
/// 2 B^{3/2} C = PQ - R, 3 B^2 D = PR - S, 4 B^{5/2} G = PS - T.
/// q, C, D, G are only set when B > 0 and the order provides their inputs.
struct AuxInvariants {
  std::optional<double> B;
  std::optional<double> q;
  std::optional<double> C;
  std::optional<double> D;
  std::optional<double> G;
};

/// Auxiliary roots of the J = 4, 5 interlacing tests.
struct AuxRoots {
  std::vector<double> x;  // roots of the derivative polynomial, ascending
  std::vector<double> Y;  // x / sqrt(B)
  std::optional<std::pair<double, double>> y_minus_plus;  // (Y-, Y+), J = 4
  std::vector<double> y_greek;                             // (Y_alpha, Y_beta, Y_gamma), J = 5
};

struct Verdict {
  Membership state = Membership::Outside;
  /// First failed (Outside) or marginal (BoundaryBand) condition; empty when Inside.
  std::string witness;
  /// Signed value of the binding condition.
  double margin = 0.0;
  std::optional<AuxInvariants> aux;
  std::optional<AuxRoots> roots;
  std::vector<std::string> notes;
  /// Set when the closed form was bypassed in favour of the exact oracle.
  bool delegated = false;
};

}  // namespace ptdomain
