#include "ptdomain/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "ptdomain/errors.hpp"
#include "ptdomain/oracle.hpp"
#include "ptdomain/roots.hpp"

namespace ptdomain {

std::string_view to_string(Membership state) noexcept {
  switch (state) {
    case Membership::Inside:
      return "inside";
    case Membership::Outside:
      return "outside";
    case Membership::BoundaryBand:
      return "boundary";
  }
  return "?";
}

namespace {

constexpr const char* kSideConditionTag = "C - sqrt(1+Q/B)";

// Sequential evaluation of an inequality chain value >= 0.
class ConditionChain {
 public:
  explicit ConditionChain(double epsilon) : epsilon_(epsilon) {}

  /// False when the condition fails beyond the band; evaluation stops there.
  bool require(const std::string& name, long double value, long double scale) {
    const long double normalized = value / scale;
    if (!(normalized >= -epsilon_)) {  // NaN counts as a failure
      failure_ = Hit{name, value, normalized};
      return false;
    }
    if (normalized <= epsilon_) {
      if (!marginal_) marginal_ = Hit{name, value, normalized};
    } else if (!binding_ || normalized < binding_->normalized) {
      binding_ = Hit{name, value, normalized};
    }
    return true;
  }

  bool marginal() const noexcept { return marginal_.has_value(); }

  Verdict verdict() const {
    Verdict out;
    if (failure_) {
      out.state = Membership::Outside;
      out.witness = failure_->name;
      out.margin = static_cast<double>(failure_->value);
    } else if (marginal_) {
      out.state = Membership::BoundaryBand;
      out.witness = marginal_->name;
      out.margin = static_cast<double>(marginal_->value);
    } else {
      out.state = Membership::Inside;
      if (binding_) {
        out.margin = static_cast<double>(binding_->value);
        out.notes.push_back("binding: " + binding_->name);
      }
    }
    const auto& decisive = failure_ ? failure_ : (marginal_ ? marginal_ : binding_);
    if (decisive && decisive->name.find(kSideConditionTag) != std::string::npos) {
      out.notes.push_back("side condition -1 <= C - sqrt(1+Q/B) <= 1 is the binding condition");
    }
    return out;
  }

 private:
  struct Hit {
    std::string name;
    long double value;
    long double normalized;
  };
  double epsilon_;
  std::optional<Hit> failure_;
  std::optional<Hit> marginal_;
  std::optional<Hit> binding_;
};

// Exact normalized coefficients and the combinations entering B, C, D, G.
struct Coefficients {
  explicit Coefficients(const SecularForm& form) {
    const int order = form.order();
    exact.resize(6, Rational(0));
    for (int k = 1; k <= order; ++k) exact[static_cast<std::size_t>(k)] = form.coefficient(k);
    const Rational& P = exact[1];
    const Rational& Q = exact[2];
    const Rational& R = exact[3];
    const Rational& S = exact[4];
    const Rational& T = exact[5];
    B = P * P - Q;
    pq_minus_r = P * Q - R;
    pr_minus_s = P * R - S;
    ps_minus_t = P * S - T;
    for (const auto& c : exact) value.push_back(to_long_double(c));
    rho = root_scale(form);
  }

  long double operator[](int k) const { return value[static_cast<std::size_t>(k)]; }

  std::vector<Rational> exact;  // index 1..5 = P..T
  std::vector<long double> value;
  Rational B, pq_minus_r, pr_minus_s, ps_minus_t;
  long double rho = 1.0L;
};

void require_order(const SecularForm& form, int order) {
  if (form.order() != order) {
    throw InvalidInput("criterion for J=" + std::to_string(order) + " applied to J=" +
                       std::to_string(form.order()));
  }
}

// Necessary sign conditions P, Q, ... >= 0; false on a definite failure.
bool require_coefficients(ConditionChain& chain, const Coefficients& c, int order) {
  long double scale = 1.0L;
  for (int k = 1; k <= order; ++k) {
    scale *= c.rho;
    if (!chain.require(coefficient_name(k) + " >= 0", c[k], scale)) return false;
  }
  return true;
}

Verdict delegate(const SecularForm& form, const char* reason) {
  Verdict out = oracle_verdict(form);
  out.delegated = true;
  out.notes.push_back(std::string("closed form bypassed: ") + reason + "; exact oracle used");
  return out;
}

// Interlacing of the derivative-cubic roots for x^4 - 4Px^3 + 6Qx^2 - 4Rx + S.
// Assumes P..S >= 0 and B > 0 were established.  Returns the roots x1..x3,
// or nothing when the chain stopped.
std::optional<std::vector<long double>> quartic_interlacing(ConditionChain& chain, const Coefficients& c,
                                                            const std::string& prefix, AuxRoots& roots) {
  const long double P = c[1], Q = c[2], R = c[3];
  const long double B = to_long_double(c.B);
  const long double sqrt_b = std::sqrt(B);
  const long double C = to_long_double(c.pq_minus_r) / (2.0L * B * sqrt_b);
  const long double D = to_long_double(c.pr_minus_s) / (3.0L * B * B);
  const long double y_scale = c.rho / sqrt_b;

  const long double side = C - std::sqrt(1.0L + Q / B);
  if (!chain.require(prefix + std::string(kDerivativeCubicWitness) + ": -1 <= " + kSideConditionTag, side + 1.0L,
                     y_scale)) {
    return std::nullopt;
  }
  if (!chain.require(prefix + std::string(kDerivativeCubicWitness) + ": " + kSideConditionTag + " <= 1",
                     1.0L - side, y_scale)) {
    return std::nullopt;
  }
  const auto x = solve_cubic_real(-3.0L * P, 3.0L * Q, -R);
  if (x.size() < 3) {
    if (chain.marginal()) return std::nullopt;
    throw InternalInconsistency("derivative cubic has one real root although the side condition holds");
  }
  std::vector<long double> Y;
  for (long double xi : x) Y.push_back(xi / sqrt_b);
  roots.x.assign(x.begin(), x.end());
  roots.Y.assign(Y.begin(), Y.end());

  if (!chain.require(prefix + "D >= 0", D, y_scale * y_scale)) return std::nullopt;
  if (!chain.require(prefix + "C^2 >= D", C * C - D, y_scale * y_scale)) return std::nullopt;
  const long double root = std::sqrt(std::max(C * C - D, 0.0L));
  const long double y_plus = C + root;
  const long double y_minus = (C > 0.0L && y_plus != 0.0L) ? D / y_plus : C - root;
  roots.y_minus_plus = std::make_pair(static_cast<double>(y_minus), static_cast<double>(y_plus));

  const bool ok = chain.require(prefix + "Y1 <= Y-", y_minus - Y[0], y_scale) &&
                  chain.require(prefix + "Y- <= Y2", Y[1] - y_minus, y_scale) &&
                  chain.require(prefix + "Y2 <= Y+", y_plus - Y[1], y_scale) &&
                  chain.require(prefix + "Y+ <= Y3", Y[2] - y_plus, y_scale);
  if (!ok) return std::nullopt;
  return x;
}

Verdict with_roots(Verdict verdict, const AuxRoots& roots) {
  if (!roots.x.empty()) verdict.roots = roots;
  return verdict;
}

}  // namespace

long double root_scale(const SecularForm& form) {
  long double rho = 1.0L;
  const auto values = form.normalized_ld();
  for (std::size_t k = 0; k < values.size(); ++k) {
    rho = std::max(rho, std::pow(std::abs(values[k]), 1.0L / static_cast<long double>(k + 1)));
  }
  return rho;
}

AuxInvariants aux_invariants(const SecularForm& form) {
  AuxInvariants aux;
  const int order = form.order();
  if (order < 2) return aux;
  const Coefficients c(form);
  const long double B = to_long_double(c.B);
  aux.B = static_cast<double>(B);
  if (!(B > 0.0L)) return aux;
  const long double sqrt_b = std::sqrt(B);
  aux.q = static_cast<double>(c[2] / B);
  if (order >= 3) aux.C = static_cast<double>(to_long_double(c.pq_minus_r) / (2.0L * B * sqrt_b));
  if (order >= 4) aux.D = static_cast<double>(to_long_double(c.pr_minus_s) / (3.0L * B * B));
  if (order >= 5) aux.G = static_cast<double>(to_long_double(c.ps_minus_t) / (4.0L * B * B * sqrt_b));
  return aux;
}

Verdict inside_j1(const SecularForm& form, const Tolerance& tol) {
  require_order(form, 1);
  const Coefficients c(form);
  ConditionChain chain(tol.epsilon);
  require_coefficients(chain, c, 1);
  return chain.verdict();
}

Verdict inside_j2(const SecularForm& form, const Tolerance& tol) {
  require_order(form, 2);
  const Coefficients c(form);
  ConditionChain chain(tol.epsilon);
  if (require_coefficients(chain, c, 2)) {
    chain.require("P^2 >= Q", to_long_double(c.B), c.rho * c.rho);
  }
  return chain.verdict();
}

Verdict inside_j3(const SecularForm& form, const Tolerance& tol) {
  require_order(form, 3);
  const Coefficients c(form);
  const Rational& P = c.exact[1];
  const Rational& Q = c.exact[2];
  const Rational& R = c.exact[3];
  const Rational compact = 3 * P * P * Q * Q + 6 * R * P * Q - 4 * Q * Q * Q - R * R - 4 * R * P * P * P;
  const long double rho3 = c.rho * c.rho * c.rho;
  const long double compact_n = to_long_double(compact) / (rho3 * rho3);

  // Two-sided form: 2B s- <= PQ - R <= 2B s+ with s+- = P +- sqrt(B).
  const long double B = to_long_double(c.B);
  const Rational shift = R - 3 * P * Q + 2 * P * P * P;
  if (B >= 0.0L) {
    const long double width = 2.0L * B * std::sqrt(B);
    const long double x = to_long_double(shift);
    const long double two_sided_n = std::min(width - x, width + x) / rho3;
    const bool disagree = (compact_n > tol.epsilon && two_sided_n < -tol.epsilon) ||
                          (compact_n < -tol.epsilon && two_sided_n > tol.epsilon);
    if (disagree) {
      throw InternalInconsistency("J=3 compact and two-sided criteria disagree");
    }
  } else if (B < -tol.epsilon * c.rho * c.rho && compact_n > tol.epsilon) {
    throw InternalInconsistency("J=3 compact criterion holds although P^2 < Q");
  }

  ConditionChain chain(tol.epsilon);
  if (require_coefficients(chain, c, 3)) {
    chain.require("3P^2Q^2 + 6RPQ >= 4Q^3 + R^2 + 4RP^3", to_long_double(compact), rho3 * rho3);
  }
  return chain.verdict();
}

Verdict inside_j4(const SecularForm& form, const Tolerance& tol) {
  require_order(form, 4);
  const Coefficients c(form);
  ConditionChain chain(tol.epsilon);
  if (!require_coefficients(chain, c, 4)) return chain.verdict();
  const long double B = to_long_double(c.B);
  if (!chain.require("B >= 0", B, c.rho * c.rho)) return chain.verdict();
  if (B <= tol.epsilon * c.rho * c.rho) return delegate(form, "B = P^2 - Q within the boundary band");

  AuxRoots roots;
  quartic_interlacing(chain, c, "", roots);
  return with_roots(chain.verdict(), roots);
}

Verdict inside_j5(const SecularForm& form, const Tolerance& tol) {
  require_order(form, 5);
  const Coefficients c(form);
  ConditionChain chain(tol.epsilon);
  if (!require_coefficients(chain, c, 5)) return chain.verdict();
  const long double B = to_long_double(c.B);
  if (!chain.require("B >= 0", B, c.rho * c.rho)) return chain.verdict();
  if (B <= tol.epsilon * c.rho * c.rho) return delegate(form, "B = P^2 - Q within the boundary band");

  // The derivative y'/5 = x^4 - 4Px^3 + 6Qx^2 - 4Rx + S must have four real
  // roots: the J = 4 machinery applied to (P, Q, R, S).
  AuxRoots inner;
  const std::string prefix = std::string(kDerivativeQuarticWitness) + ": ";
  if (!quartic_interlacing(chain, c, prefix, inner)) return chain.verdict();

  const auto x = solve_quartic_real(-4.0L * c[1], 6.0L * c[2], -4.0L * c[3], c[4]);
  if (x.size() < 4) {
    if (chain.marginal()) return chain.verdict();
    throw InternalInconsistency("derivative quartic lost real roots although its interlacing test holds");
  }
  const long double sqrt_b = std::sqrt(B);
  const long double C = to_long_double(c.pq_minus_r) / (2.0L * B * sqrt_b);
  const long double D = to_long_double(c.pr_minus_s) / (3.0L * B * B);
  const long double G = to_long_double(c.ps_minus_t) / (4.0L * B * B * sqrt_b);
  const long double y_scale = c.rho / sqrt_b;

  AuxRoots roots;
  roots.x.assign(x.begin(), x.end());
  std::vector<long double> Y;
  for (long double xi : x) {
    Y.push_back(xi / sqrt_b);
    roots.Y.push_back(static_cast<double>(Y.back()));
  }

  const long double shifted = G - 3.0L * C * D + 2.0L * C * C * C;
  const long double spread = C * C - D;
  const long double disc = 4.0L * spread * spread * spread - shifted * shifted;
  const long double y6 = std::pow(y_scale, 6);
  if (!chain.require(kWRootWitness, disc, y6)) return with_roots(chain.verdict(), roots);
  const auto greek = solve_cubic_real(-3.0L * C, 3.0L * D, -G);
  if (greek.size() < 3) {
    if (chain.marginal()) return with_roots(chain.verdict(), roots);
    throw InternalInconsistency("w(Y) lost real roots although its discriminant is positive");
  }
  roots.y_greek.assign(greek.begin(), greek.end());

  const long double links[][2] = {{Y[0], greek[0]}, {greek[0], Y[1]}, {Y[1], greek[1]},
                                  {greek[1], Y[2]}, {Y[2], greek[2]}, {greek[2], Y[3]}};
  const char* names[] = {"Y1 <= Ya", "Ya <= Y2", "Y2 <= Yb", "Yb <= Y3", "Y3 <= Yc", "Yc <= Y4"};
  for (int k = 0; k < 6; ++k) {
    if (!chain.require(names[k], links[k][1] - links[k][0], y_scale)) break;
  }
  return with_roots(chain.verdict(), roots);
}

Verdict classify(const SecularForm& form, const Tolerance& tol) {
  switch (form.order()) {
    case 1:
      return inside_j1(form, tol);
    case 2:
      return inside_j2(form, tol);
    case 3:
      return inside_j3(form, tol);
    case 4:
      return inside_j4(form, tol);
    case 5:
      return inside_j5(form, tol);
    default:
      throw UnsupportedDimension(2 * form.order());
  }
}

Verdict dispatch(const CouplingVector& couplings, const Tolerance& tol) {
  const SecularForm form = secular_form(couplings);
  Verdict verdict = classify(form, tol);
  verdict.aux = aux_invariants(form);
  return verdict;
}

}  // namespace ptdomain
