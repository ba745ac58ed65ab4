#pragma once

// Closed-form membership tests for the physical domains D(N), N = 2..11.
//
// Every test is a chain of inequalities.  Each inequality carries a natural
// scale built from rho = max(1, |P|, |Q|^{1/2}, |R|^{1/3}, |S|^{1/4}, |T|^{1/5});
// values within epsilon * scale of zero put the point into the boundary band.

#include "ptdomain/chain_model.hpp"
#include "ptdomain/secular.hpp"
#include "ptdomain/verdict.hpp"

namespace ptdomain {

struct Tolerance {
  double epsilon = 1e-9;
};

/// Root scale rho of a secular form (see above).
long double root_scale(const SecularForm& form);

AuxInvariants aux_invariants(const SecularForm& form);

/// J = 1: the single root s = P.
Verdict inside_j1(const SecularForm& form, const Tolerance& tol = {});
/// J = 2: P >= 0, Q >= 0, P^2 >= Q.
Verdict inside_j2(const SecularForm& form, const Tolerance& tol = {});
/// J = 3: P, Q, R >= 0 and 3P^2Q^2 + 6RPQ >= 4Q^3 + R^2 + 4RP^3, cross-checked
/// against the two-sided form 2B s- <= PQ - R <= 2B s+.
Verdict inside_j3(const SecularForm& form, const Tolerance& tol = {});
/// J = 4: interlacing Y1 <= Y- <= Y2 <= Y+ <= Y3 of the derivative-cubic roots.
Verdict inside_j4(const SecularForm& form, const Tolerance& tol = {});
/// J = 5: interlacing Y1 <= Ya <= Y2 <= Yb <= Y3 <= Yc <= Y4 with the roots of
/// w(Y) = Y^3 - 3CY^2 + 3DY - G.
Verdict inside_j5(const SecularForm& form, const Tolerance& tol = {});

/// Routes a secular form to inside_j{1..5} by its order.
Verdict classify(const SecularForm& form, const Tolerance& tol = {});

/// build_chain -> secular form -> classify, with the AuxInvariants attached.
Verdict dispatch(const CouplingVector& couplings, const Tolerance& tol = {});

/// Witness name used when the J = 4 derivative cubic has fewer than three real roots.
inline constexpr const char* kDerivativeCubicWitness = "derivative-cubic reality";
inline constexpr const char* kDerivativeQuarticWitness = "derivative-quartic reality";
inline constexpr const char* kWRootWitness = "w-root reality";

}  // namespace ptdomain
