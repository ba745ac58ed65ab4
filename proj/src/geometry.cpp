#include "ptdomain/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptdomain/errors.hpp"

namespace ptdomain {

namespace {

Rational finite(double value, const char* what) {
  if (!std::isfinite(value)) throw InvalidInput(std::string(what) + " must be finite");
  return exact_rational(value);
}

// Largest scale such that (r d_k)^2 <= 1.2 (N-k) k on every active axis.
double box_radius(int dimension, const std::vector<double>& unit) {
  double radius = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < unit.size(); ++k) {
    if (unit[k] == 0.0) continue;
    const double n = dimension - static_cast<double>(k + 1);
    const double bound = std::sqrt(1.2 * n * static_cast<double>(k + 1));
    radius = std::min(radius, bound / std::abs(unit[k]));
  }
  return radius;
}

CouplingVector on_ray(int dimension, const std::vector<double>& unit, double r) {
  std::vector<double> g;
  for (double d : unit) g.push_back(r * d);
  return CouplingVector::from_couplings(dimension, g);
}

}  // namespace

EepPoint eep_point(int dimension) {
  require_supported_dimension(dimension);
  const int half = dimension / 2;
  std::vector<Rational> squares;
  std::vector<long> literal;
  for (int k = 1; k <= half; ++k) {
    literal.push_back(static_cast<long>(dimension - k) * k);
    squares.emplace_back(literal.back());
  }
  auto couplings = CouplingVector::from_squares(dimension, squares);
  const SecularForm form = secular_form(couplings);
  for (const auto& c : form.normalized()) {
    if (sign(c) != 0) {
      throw InternalInconsistency("secular form at the EEP of N=" + std::to_string(dimension) +
                                  " is not s^J: " + form.polynomial().to_string("s"));
    }
  }
  return EepPoint{dimension, std::move(couplings), std::move(literal)};
}

Rational ansatz_gamma(int half_dimension, double t, double g_coefficient) {
  const Rational tt = finite(t, "t");
  const Rational G = finite(g_coefficient, "G");
  Rational gamma = 0;
  Rational power = 1;
  for (int k = 1; k < half_dimension; ++k) {
    power *= tt;
    gamma += power;
  }
  power *= tt;
  gamma += G * power;
  return gamma;
}

CouplingVector ansatz_to_couplings(int dimension, double t, const std::vector<double>& g_coefficients) {
  require_supported_dimension(dimension);
  const int half = dimension / 2;
  if (static_cast<int>(g_coefficients.size()) != half) {
    throw InvalidInput("ansatz needs " + std::to_string(half) + " coefficients, got " +
                       std::to_string(g_coefficients.size()));
  }
  std::vector<Rational> squares;
  for (int k = 1; k <= half; ++k) {
    const Rational gamma = ansatz_gamma(half, t, g_coefficients[static_cast<std::size_t>(k - 1)]);
    if (gamma < 0 || gamma > 1) {
      throw DomainError("ansatz gamma_" + std::to_string(k) + " = " + std::to_string(gamma.get_d()) +
                        " outside [0, 1]");
    }
    squares.push_back(Rational(static_cast<long>(dimension - k) * k) * (1 - gamma));
  }
  return CouplingVector::from_squares(dimension, squares);
}

double j3_upper_bound(double q) { return 1.0 + (0.5 * q - 1.0) * std::sqrt(1.0 + q); }

double j3_lower_bound(double q) { return std::max(0.0, (0.5 * q - 1.0) * std::sqrt(1.0 + q) - 1.0); }

J3Window reparam_j3(double P, double Q, double R) {
  if (!std::isfinite(P) || !std::isfinite(Q) || !std::isfinite(R)) {
    throw InvalidInput("reparametrization needs finite P, Q, R");
  }
  const double B = P * P - Q;
  if (!(B > 0.0)) throw DomainError("reparametrization undefined for B = P^2 - Q <= 0");
  if (Q < 0.0) throw DomainError("reparametrization needs Q >= 0");
  J3Window w;
  w.B = B;
  w.q = Q / B;
  w.lower = j3_lower_bound(w.q);
  w.upper = j3_upper_bound(w.q);
  w.value = R / (2.0 * B * std::sqrt(B));
  w.contains = w.lower <= w.value && w.value <= w.upper;
  return w;
}

std::vector<Rational> j3_upper_series(int order) {
  if (order < 0) throw InvalidInput("series order must be non-negative");
  // sqrt(1+q) = sum binom(1/2, n) q^n
  std::vector<Rational> root(static_cast<std::size_t>(order) + 1);
  root[0] = 1;
  for (int n = 1; n <= order; ++n) {
    root[static_cast<std::size_t>(n)] = root[static_cast<std::size_t>(n - 1)] * (Rational(1, 2) - (n - 1)) / n;
  }
  std::vector<Rational> out(static_cast<std::size_t>(order) + 1);
  out[0] = 1;
  for (int n = 0; n <= order; ++n) {
    Rational c = -root[static_cast<std::size_t>(n)];
    if (n > 0) c += root[static_cast<std::size_t>(n - 1)] / 2;
    out[static_cast<std::size_t>(n)] += c;
  }
  return out;
}

SecularForm confluence_surface_n6(const Rational& x, const Rational& y) {
  const Rational x2 = x * x;
  const Rational y2 = y * y;
  const RationalPoly displayed{-6400 * x2 * x2 * y2, 256 * x2 * x2 + 800 * x2 * y2, -(32 * x2 + 25 * y2),
                               Rational(1)};
  const RationalPoly pair{-16 * x2, Rational(1)};
  const RationalPoly single{-25 * y2, Rational(1)};
  if (!(pair * pair * single == displayed)) {
    throw InternalInconsistency("confluence cubic does not factor as (s - 16x^2)^2 (s - 25y^2)");
  }
  return SecularForm::from_monic(displayed);
}

SecularForm confluence_surface_n6(double x, double y) {
  return confluence_surface_n6(finite(x, "x"), finite(y, "y"));
}

Rational dep_second_condition(const Rational& a, const Rational& b_squared, const Rational& c_squared) {
  const Rational a2 = a * a;
  return -66 * a2 - 36 * b_squared + 4 * c_squared * a2 - 189 + 252 * c_squared - 4 * b_squared * a2 - a2 * a2;
}

std::optional<DepPoint> dep_solve_n6(double c, std::string* reason) {
  auto decline = [&](std::string why) -> std::optional<DepPoint> {
    if (reason) *reason = std::move(why);
    return std::nullopt;
  };
  if (!std::isfinite(c) || c <= 0.0) throw InvalidInput("dep_solve_n6 needs a finite c > 0");
  const Rational c2 = exact_rational(c) * exact_rational(c);
  const Rational slope = (c2 + 15) / 5;  // b^2 = slope (a - 1)
  auto b2_of = [&](const Rational& a) -> Rational { return slope * (a - 1); };
  auto f = [&](const Rational& a) -> Rational { return dep_second_condition(a, b2_of(a), c2); };
  // With R = 0 the cubic is s (s^2 - 3P s + 3Q); the double root is 3P/2.
  auto double_root = [&](const Rational& a) -> Rational {
    const Rational P = (35 - a * a - 2 * b2_of(a) - 2 * c2) / 3;
    return 3 * P / 2;
  };

  constexpr int kPieces = 64;
  constexpr int kBisections = 110;
  std::vector<Rational> candidates;
  Rational lo = 1;
  Rational f_lo = f(lo);
  for (int i = 1; i <= kPieces; ++i) {
    Rational hi = 1 + Rational(2 * i) / kPieces;
    Rational f_hi = f(hi);
    if (sign(f_lo) == 0) {
      candidates.push_back(lo);
    } else if (sign(f_lo) * sign(f_hi) < 0) {
      Rational left = lo, right = hi, f_left = f_lo;
      for (int it = 0; it < kBisections; ++it) {
        Rational mid = (left + right) / 2;
        const Rational f_mid = f(mid);
        if (sign(f_mid) == 0) {
          left = right = mid;
          break;
        }
        if (sign(f_mid) == sign(f_left)) {
          left = mid;
          f_left = f_mid;
        } else {
          right = mid;
        }
      }
      candidates.push_back((left + right) / 2);
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (sign(f_lo) == 0) candidates.push_back(lo);
  if (candidates.empty()) return decline("second condition has no root with a in [1, 3]");

  std::string last_reason;
  for (const Rational& a : candidates) {
    const Rational sigma = double_root(a);
    const Rational slack = 84 * c2 - 63 - Rational(12, 5) * (a - 1) * (15 + c2);
    if (sign(sigma) <= 0) {
      last_reason = "root a = " + std::to_string(a.get_d()) + " gives a non-positive double root";
      continue;
    }
    if (sign(slack) < 0) {
      last_reason = "root a = " + std::to_string(a.get_d()) + " violates 84c^2 >= 63 + (12/5)(a-1)(15+c^2)";
      continue;
    }
    const Rational b2 = b2_of(a);
    DepPoint point{.couplings = CouplingVector::from_squares(6, {c2, b2, a * a})};
    point.c = c;
    point.b = std::sqrt(b2.get_d());
    point.a = a.get_d();
    point.c_squared = c2;
    point.b_squared = b2;
    point.a_exact = a;
    point.fei_residual = to_long_double(b2 - (c2 + 15) * (a - 1) / 5);
    point.second_residual = to_long_double(f(a));
    point.inequality_slack = to_long_double(slack);

    const SecularForm form = secular_form(point.couplings);
    point.r_vanishes_exactly = sign(form.coefficient(3)) == 0;
    const Rational outer = a * (c2 + 15);
    const Rational inner = 15 + c2 + 5 * b2;
    if (!point.r_vanishes_exactly || outer * outer - inner * inner != -form.coefficient(3)) {
      throw InternalInconsistency("R does not vanish through its factorized form at the DEP");
    }
    const double f_scale = std::max(1.0, static_cast<double>(to_long_double(a * a * a * a + 4 * b2 * a * a + 252 * c2)));
    if (std::abs(point.second_residual) > 1e-12 * f_scale) {
      throw ConvergenceError("DEP solve left residual " + std::to_string(point.second_residual) +
                             " in bracket around a = " + std::to_string(point.a));
    }

    point.spectrum = numeric_spectrum(point.couplings);
    double sum = 0.0;
    int count = 0;
    for (const auto& s : point.spectrum.s_roots) {
      if (std::abs(s) > 1e-6 * std::max(1.0, sigma.get_d())) {
        sum += s.real();
        ++count;
      }
    }
    point.s_double = count > 0 ? sum / count : 0.0;
    point.z = std::sqrt(std::max(point.s_double, 0.0)) / 4.0;

    const double P = to_long_double(form.coefficient(1));
    const double Q = to_long_double(form.coefficient(2));
    point.notes.push_back("double root from 3P/2: " + std::to_string(sigma.get_d()));
    point.notes.push_back("printed relation 3Q = 32z^2 would give z = " + std::to_string(std::sqrt(3.0 * Q / 32.0)) +
                          "; 3P = 32z^2 would give z = " + std::to_string(std::sqrt(3.0 * P / 32.0)));
    if (reason) reason->clear();
    return point;
  }
  return decline(last_reason);
}

BoundaryPoint boundary_bisect(int dimension, const std::vector<double>& direction, double tol) {
  require_supported_dimension(dimension);
  const int half = dimension / 2;
  if (static_cast<int>(direction.size()) != half) {
    throw InvalidInput("direction needs " + std::to_string(half) + " components");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidInput("tolerance must be positive");
  double norm = 0.0;
  for (double d : direction) {
    if (!std::isfinite(d)) throw InvalidInput("direction must be finite");
    norm += d * d;
  }
  norm = std::sqrt(norm);
  if (norm == 0.0) throw InvalidInput("direction must be nonzero");
  std::vector<double> unit;
  for (double d : direction) unit.push_back(d / norm);

  auto inside = [&](double r) {
    return oracle_verdict(on_ray(dimension, unit, r)).state == Membership::Inside;
  };
  if (!inside(0.0)) throw DomainError("origin is not inside the domain");

  const double r_max = box_radius(dimension, unit);
  constexpr int kSteps = 256;
  double lo = 0.0;
  double hi = -1.0;
  for (int i = 1; i <= kSteps; ++i) {
    const double r = r_max * i / kSteps;
    if (!inside(r)) {
      hi = r;
      break;
    }
    lo = r;
  }
  if (hi < 0.0) {
    throw NoBoundaryFound("ray stays inside up to the box radius " + std::to_string(r_max));
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (inside(mid) ? lo : hi) = mid;
  }
  const double r = 0.5 * (lo + hi);
  BoundaryPoint out{.point = on_ray(dimension, unit, r)};
  out.radius = r;
  out.inside_radius = lo;
  out.outside_radius = hi;
  try {
    const auto report = numeric_spectrum(out.point);
    out.root_gap = std::min(report.min_root, report.min_root_gap);
  } catch (const ConvergenceError&) {
    out.root_gap = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace ptdomain
