#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ptdomain {

/// Real roots of x^2 + p1 x + p0, ascending, with multiplicity.
std::vector<long double> solve_quadratic_real(long double p1, long double p0);

/// Real roots of x^3 + p2 x^2 + p1 x + p0, ascending, with multiplicity.
/// Three-real-root cases go through the trigonometric form; every root is
/// Newton-polished afterwards.
std::vector<long double> solve_cubic_real(long double p2, long double p1, long double p0);

/// Real roots of x^4 + p3 x^3 + p2 x^2 + p1 x + p0, ascending, with
/// multiplicity, via the resolvent cubic.
std::vector<long double> solve_quartic_real(long double p3, long double p2, long double p1,
                                            long double p0);

/// All complex roots of a polynomial given low-to-high coefficients
/// (Aberth-Ehrlich simultaneous iteration).  Throws ConvergenceError when the
/// iteration stalls.
std::vector<std::complex<long double>> polynomial_roots(std::span<const long double> coefficients);

}  // namespace ptdomain
