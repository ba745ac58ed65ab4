#include <doctest.h>

#include <cmath>
#include <random>

#include "ptdomain/criteria.hpp"
#include "ptdomain/errors.hpp"
#include "ptdomain/geometry.hpp"
#include "support.hpp"

using namespace ptdomain;
using testing_support::random_rational;

TEST_CASE("EEP corners vanish exactly for every N") {
  for (int n = 2; n <= 11; ++n) {
    const auto eep = eep_point(n);
    const auto f = secular_form(eep.couplings);
    CHECK(f.polynomial() == RationalPoly::monomial(Rational(1), n / 2));
    for (int k = 1; k <= n / 2; ++k) {
      CHECK(eep.couplings.squares()[static_cast<std::size_t>(k - 1)] == (n - k) * k);
      CHECK(eep.literal_values[static_cast<std::size_t>(k - 1)] == (n - k) * k);
    }
  }
  const auto six = eep_point(6);
  CHECK(six.couplings.couplings()[0] == doctest::Approx(std::sqrt(5.0)));
  CHECK(six.couplings.couplings()[1] == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(six.couplings.couplings()[2] == doctest::Approx(3.0));
  CHECK_THROWS_AS(eep_point(12), UnsupportedDimension);
}

TEST_CASE("the literal reading of the corner values does not vanish") {
  std::vector<Rational> literal{Rational(5), Rational(8), Rational(9)};
  for (auto& x : literal) x *= x;
  const auto f = secular_form(CouplingVector::from_squares(6, literal));
  CHECK(f.coefficient(1) != 0);
}

TEST_CASE("ansatz chart") {
  const auto at_zero = ansatz_to_couplings(6, 0.0, {1.3, -0.4, 2.0});
  CHECK(at_zero.squares() == eep_point(6).couplings.squares());

  const auto c = ansatz_to_couplings(6, 0.1, {1.0, 1.0, 1.0});
  const double gamma = 0.1 + 0.01 + 0.001;
  for (int k = 1; k <= 3; ++k) {
    CHECK(c.squares()[static_cast<std::size_t>(k - 1)].get_d() == doctest::Approx((6 - k) * k * (1 - gamma)));
  }

  const auto endpoint = ansatz_to_couplings(2, 1.0, {1.0});
  CHECK(endpoint.squares()[0] == 0);
  CHECK(dispatch(endpoint).state == Membership::Inside);

  CHECK_THROWS_AS(ansatz_to_couplings(2, 1.0, {2.0}), DomainError);
  CHECK_THROWS_AS(ansatz_to_couplings(4, 0.1, {-50.0, 0.0}), DomainError);
  CHECK_THROWS_AS(ansatz_to_couplings(4, 0.1, {1.0}), InvalidInput);
}

TEST_CASE("ansatz with equal coefficients retreats along the corner ray") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> t_dist(0.0, 0.05), g_dist(-2.0, 2.0);
  int deep_outside = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + trial % 10;
    const double g = g_dist(rng);
    const double t = t_dist(rng);
    std::vector<double> coeffs(static_cast<std::size_t>(n / 2), g);
    CouplingVector c = CouplingVector::from_couplings(2, {0.0});
    try {
      c = ansatz_to_couplings(n, t, coeffs);
    } catch (const DomainError&) {
      continue;
    }
    const auto v = dispatch(c);
    if (v.state == Membership::Outside) ++deep_outside;
  }
  CHECK(deep_outside == 0);
}

TEST_CASE("ansatz with unequal coefficients can leave the domain") {
  const auto c = ansatz_to_couplings(4, 0.05, {2.0, 0.0});
  const auto v = dispatch(c);
  CHECK(v.state == Membership::Outside);
  CHECK(v.margin < -10 * 1e-9);
}

TEST_CASE("J=3 window") {
  CHECK(j3_upper_bound(3.0) == doctest::Approx(2.0));
  CHECK(j3_lower_bound(3.0) == doctest::Approx(0.0));
  CHECK(j3_lower_bound(8.0) == doctest::Approx(3.0 * 3.0 - 1.0));
  CHECK(j3_lower_bound(1.0) == 0.0);

  const auto w = reparam_j3(35.0 / 3, 259.0 / 3, 225.0);
  CHECK(w.B == doctest::Approx(448.0 / 9));
  CHECK(w.q == doctest::Approx(777.0 / 448));
  CHECK(w.contains);

  CHECK_THROWS_AS(reparam_j3(1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(reparam_j3(1.0, -1.0, 0.0), DomainError);
}

TEST_CASE("J=3 window agrees with the compact criterion") {
  std::mt19937_64 rng(79);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Rational P = random_rational(rng, 0, 10), Q = random_rational(rng, 0, 100), R = random_rational(rng, 0, 1000);
    if (P * P - Q <= Rational(1, 1000)) continue;
    const auto form = SecularForm::from_normalized({P, Q, R});
    const auto v = inside_j3(form);
    if (v.state == Membership::BoundaryBand) continue;
    const auto w = reparam_j3(P.get_d(), Q.get_d(), R.get_d());
    CHECK(w.contains == (v.state == Membership::Inside));
    ++checked;
  }
  CHECK(checked > 500);
}

TEST_CASE("upper window bound series") {
  const auto c = j3_upper_series(6);
  CHECK(c[0] == 0);
  CHECK(c[1] == 0);
  CHECK(c[2] == Rational(3, 8));
  CHECK(c[3] == Rational(-1, 8));
  CHECK(c[4] == Rational(9, 128));
  CHECK(c[5] == Rational(-3, 64));
  CHECK(c[6] == Rational(35, 1024));
  const double q = 1e-2;
  double sum = 0;
  for (int k = 6; k >= 0; --k) sum = sum * q + c[static_cast<std::size_t>(k)].get_d();
  CHECK(std::abs(sum - j3_upper_bound(q)) < 1e-14);
}

TEST_CASE("confluence surface") {
  const auto f = confluence_surface_n6(Rational(1, 2), Rational(1, 2));
  CHECK(f.polynomial() == from_roots({4, 4, Rational(25, 4)}));
  const auto diag = confluence_surface_n6(Rational(1, 3), Rational(1, 3));
  CHECK(diag.polynomial() == from_roots({Rational(16, 9), Rational(16, 9), Rational(25, 9)}));
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational x = random_rational(rng, 0, 1), y = random_rational(rng, 0, 1);
    const auto g = confluence_surface_n6(x, y);
    CHECK(g.polynomial().coefficient(0) == -6400 * x * x * x * x * y * y);
  }
  CHECK(confluence_surface_n6(0.5, 0.25).order() == 3);
}

TEST_CASE("double-degeneracy points on the physical branch") {
  const auto one = dep_solve_n6(1.0);
  REQUIRE(one);
  CHECK(one->a == 1.0);
  CHECK(one->b == 0.0);
  CHECK(one->s_double == doctest::Approx(16.0));
  CHECK(one->z == doctest::Approx(1.0));

  for (double c : {1.2, 1.5, 2.0, 2.2}) {
    const auto p = dep_solve_n6(c);
    REQUIRE_MESSAGE(p, "c=" << c);
    CHECK(p->a >= 1.0);
    CHECK(p->a <= 3.0);
    CHECK(p->r_vanishes_exactly);
    CHECK(std::abs(p->fei_residual) <= 1e-10);
    CHECK(std::abs(p->second_residual) <= 1e-10);
    CHECK(p->inequality_slack >= 0.0);
    CHECK(p->spectrum.degeneracy_pattern == std::vector<int>{2, 2, 2});
    const double e = 4 * p->z;
    const double want[] = {-e, -e, 0, 0, e, e};
    for (int k = 0; k < 6; ++k) {
      CHECK(std::abs(p->spectrum.energies[static_cast<std::size_t>(k)] - want[k]) <= 1e-8 * e);
    }
  }
  const auto two = dep_solve_n6(2.0);
  CHECK(two->a == doctest::Approx(2.6732).epsilon(1e-4));
}

TEST_CASE("large c gives no admissible double-degeneracy point") {
  std::string reason;
  CHECK_FALSE(dep_solve_n6(4.0, &reason));
  CHECK_FALSE(reason.empty());
  CHECK_THROWS_AS(dep_solve_n6(0.0), InvalidInput);
  const Rational c2(16);
  CHECK(dep_second_condition(Rational(3), (c2 + 15) * 2 / 5, c2) > 0);
}

TEST_CASE("boundary bisection") {
  const auto two = boundary_bisect(2, {1.0}, 1e-12);
  CHECK(std::abs(two.radius - 1.0) <= 1e-10);
  const auto three = boundary_bisect(3, {1.0}, 1e-12);
  CHECK(std::abs(three.radius - std::sqrt(2.0)) <= 1e-10);
  const auto four = boundary_bisect(4, {std::sqrt(3.0), 2.0}, 1e-10);
  CHECK(four.radius == doctest::Approx(std::sqrt(7.0)).epsilon(1e-8));
  CHECK(four.inside_radius < four.outside_radius);
  const auto ten = boundary_bisect(10, {1.0, 0.0, 0.0, 0.0, 0.0}, 1e-9);
  CHECK(std::isfinite(ten.radius));
  CHECK_THROWS_AS(boundary_bisect(4, {0.0, 0.0}), InvalidInput);
  CHECK_THROWS_AS(boundary_bisect(4, {1.0}), InvalidInput);
}
