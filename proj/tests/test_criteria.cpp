#include <doctest.h>

#include <cmath>
#include <random>

#include "ptdomain/criteria.hpp"
#include "ptdomain/errors.hpp"
#include "ptdomain/oracle.hpp"
#include "support.hpp"

using namespace ptdomain;
using testing_support::random_rational;

namespace {

Verdict check_couplings(int n, std::vector<double> g) { return dispatch(CouplingVector::from_couplings(n, g)); }

Verdict check_squares(int n, std::vector<Rational> sq) { return dispatch(CouplingVector::from_squares(n, sq)); }

SecularForm from_root_list(const std::vector<Rational>& roots) { return SecularForm::from_monic(from_roots(roots)); }

CouplingVector random_box_point(std::mt19937_64& rng, int n) {
  std::vector<Rational> sq;
  for (int k = 1; k <= n / 2; ++k) sq.push_back(random_rational(rng, 0, Rational(6, 5) * (n - k) * k));
  return CouplingVector::from_squares(n, sq);
}

}  // namespace

TEST_CASE("J=1") {
  CHECK(check_couplings(2, {0.0}).state == Membership::Inside);
  CHECK(check_couplings(2, {1.0}).state == Membership::BoundaryBand);
  CHECK(check_couplings(2, {-1.0}).state == Membership::BoundaryBand);
  CHECK(check_couplings(3, {std::sqrt(2.0)}).state == Membership::BoundaryBand);
  const auto v = check_couplings(3, {2.0});
  CHECK(v.state == Membership::Outside);
  CHECK(v.witness == "P >= 0");
  CHECK(v.margin == -4.0);
  const auto half = check_couplings(2, {0.5});
  CHECK(half.state == Membership::Inside);
  CHECK(half.margin == doctest::Approx(0.75));
  CHECK(half.witness.empty());
}

TEST_CASE("J=2") {
  const auto diag = check_couplings(4, {0.0, 0.0});
  CHECK(diag.state == Membership::Inside);
  REQUIRE(diag.aux);
  CHECK(*diag.aux->B == doctest::Approx(16.0));
  CHECK(check_squares(4, {3, 4}).state == Membership::BoundaryBand);
  const auto out = check_couplings(4, {2.0, 0.0});
  CHECK(out.state == Membership::Outside);
  CHECK(out.witness == "P^2 >= Q");
  CHECK(out.margin == doctest::Approx(1.0 - 49.0));
}

TEST_CASE("J=2 reality identity") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational s1 = random_rational(rng, -5, 5), s2 = random_rational(rng, -5, 5);
    const auto f = from_root_list({s1, s2});
    const Rational P = f.coefficient(1), Q = f.coefficient(2);
    CHECK(P * P - Q == (s1 - s2) * (s1 - s2) / 4);
  }
}

TEST_CASE("J=3 identities on root triples") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational s1 = random_rational(rng, -5, 9), s2 = random_rational(rng, -5, 9), s3 = random_rational(rng, -5, 9);
    const auto f = from_root_list({s1, s2, s3});
    const Rational P = f.coefficient(1), Q = f.coefficient(2), R = f.coefficient(3);
    auto sq = [](const Rational& x) -> Rational { return x * x; };
    CHECK(54 * (P * P - Q) == sq(s1 + s2 - 2 * s3) + sq(s2 + s3 - 2 * s1) + sq(s3 + s1 - 2 * s2));
    CHECK(9 * (P * Q - R) ==
          s1 * s2 * (s1 + s2 - 2 * s3) + s2 * s3 * (s2 + s3 - 2 * s1) + s3 * s1 * (s3 + s1 - 2 * s2));
  }
}

TEST_CASE("J=3 compact form equals the discriminant-like dual form") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational P = random_rational(rng, -10, 10), Q = random_rational(rng, -10, 10), R = random_rational(rng, -10, 10);
    const Rational compact = 3 * P * P * Q * Q + 6 * R * P * Q - 4 * Q * Q * Q - R * R - 4 * R * P * P * P;
    const Rational B = P * P - Q;
    const Rational X = R - 3 * P * Q + 2 * P * P * P;
    CHECK(compact == 4 * B * B * B - X * X);
  }
}

TEST_CASE("J=3 examples") {
  CHECK(check_squares(6, {0, 0, 0}).state == Membership::Inside);
  CHECK(check_squares(6, {5, 8, 9}).state == Membership::BoundaryBand);
  const auto complex_pair = SecularForm::from_normalized({Rational(5, 3), Rational(3), Rational(5)});
  const auto v = inside_j3(complex_pair);
  CHECK(v.state == Membership::Outside);
  CHECK(v.margin == doctest::Approx(225.0 - (4 * 27 + 25 + 20 * 125.0 / 27)));
  CHECK_THROWS_AS(inside_j3(SecularForm::from_normalized({Rational(1)})), InvalidInput);
}

TEST_CASE("J=4 examples") {
  const auto diag = check_squares(8, {0, 0, 0, 0});
  CHECK(diag.state == Membership::Inside);
  REQUIRE(diag.roots);
  CHECK(diag.roots->x.size() == 3);
  CHECK(check_squares(8, {7, 12, 15, 16}).state == Membership::BoundaryBand);
  const auto v = check_couplings(8, {3.0, 0.0, 0.0, 0.0});
  CHECK(v.state == oracle_verdict(CouplingVector::from_couplings(8, {3.0, 0.0, 0.0, 0.0})).state);
}

TEST_CASE("J=4 derivative-cubic witness") {
  // Roots 1, 2, 3 + i, 3 - i: the derivative cubic has one real root but all
  // necessary sign conditions hold.
  const RationalPoly f = from_roots({Rational(1), Rational(2)}) *
                         RationalPoly{Rational(10), Rational(-6), Rational(1)};
  const auto form = SecularForm::from_monic(f);
  const auto v = inside_j4(form);
  CHECK(v.state == Membership::Outside);
  CHECK(v.state == oracle_verdict(form).state);
}

TEST_CASE("J=5 examples") {
  CHECK(check_squares(10, {0, 0, 0, 0, 0}).state == Membership::Inside);
  CHECK(check_squares(10, {9, 16, 21, 24, 25}).state == Membership::BoundaryBand);
  const auto odd = check_squares(11, {0, 0, 0, 0, 0});
  CHECK(odd.state == Membership::Inside);
  const auto f = secular_form(CouplingVector::from_squares(11, {0, 0, 0, 0, 0}));
  CHECK(f.polynomial() == from_roots({4, 16, 36, 64, 100}));
  CHECK(check_couplings(7, {3.0, 3.0, 3.0}).state ==
        oracle_verdict(CouplingVector::from_couplings(7, {3.0, 3.0, 3.0})).state);
}

TEST_CASE("constructed J=4, 5 root sets") {
  std::mt19937_64 rng(59);
  for (int j = 4; j <= 5; ++j) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Rational> roots;
      for (int k = 0; k < j; ++k) roots.push_back(random_rational(rng, Rational(1, 10), 10));
      const auto f = from_root_list(roots);
      const auto v = classify(f);
      CHECK(v.state != Membership::Outside);
      const auto oracle = oracle_verdict(f);
      if (v.state != Membership::BoundaryBand) CHECK(v.state == oracle.state);
    }
    for (int trial = 0; trial < 200; ++trial) {
      // One complex pair with a small imaginary part among positive roots.
      std::vector<Rational> roots;
      for (int k = 0; k < j - 2; ++k) roots.push_back(random_rational(rng, Rational(1, 10), 10));
      const Rational re = random_rational(rng, 1, 10), im = random_rational(rng, Rational(1, 100), 1);
      const RationalPoly pair{re * re + im * im, -2 * re, Rational(1)};
      const auto f = SecularForm::from_monic(from_roots(roots) * pair);
      const auto v = classify(f);
      CHECK(v.state != Membership::Inside);
    }
  }
}

TEST_CASE("criteria agree with the exact oracle outside the band") {
  std::mt19937_64 rng(61);
  for (int n = 2; n <= 11; ++n) {
    int mismatches = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const auto c = random_box_point(rng, n);
      const auto v = dispatch(c);
      if (v.state == Membership::BoundaryBand) continue;
      if (v.state != oracle_verdict(c).state) ++mismatches;
    }
    CHECK_MESSAGE(mismatches == 0, "N=" << n);
  }
}

TEST_CASE("origin is inside for every N") {
  for (int n = 2; n <= 11; ++n) {
    CHECK(dispatch(CouplingVector::from_couplings(n, std::vector<double>(static_cast<std::size_t>(n / 2), 0.0))).state ==
          Membership::Inside);
  }
}

TEST_CASE("B near zero is delegated to the oracle") {
  // Roots {1, 1, 1, 1 + tiny}: B is tiny but positive.
  const Rational tiny("1/1000000000000");
  const auto f = from_root_list({Rational(1), Rational(1), Rational(1), 1 + tiny});
  const auto v = inside_j4(f);
  CHECK(v.delegated);
  CHECK(v.state == Membership::BoundaryBand);
  const auto eep = check_squares(10, {9, 16, 21, 24, 25});
  CHECK_FALSE(eep.witness.empty());
}

TEST_CASE("band width follows epsilon") {
  // N=2 at g^2 = 1 - 1e-12: P = 1e-12.
  const auto c = CouplingVector::from_squares(2, {1 - Rational("1/1000000000000")});
  CHECK(dispatch(c).state == Membership::BoundaryBand);
  CHECK(dispatch(c, Tolerance{1e-15}).state == Membership::Inside);
}

TEST_CASE("aux invariants") {
  const auto f = from_root_list({1, 4, 9, 16, 25});
  const auto aux = aux_invariants(f);
  REQUIRE(aux.B);
  const double P = 11.0, Q = f.coefficient(2).get_d();
  CHECK(*aux.B == doctest::Approx(P * P - Q));
  CHECK(*aux.q == doctest::Approx(Q / (P * P - Q)));
  REQUIRE(aux.G);
  CHECK(aux_invariants(from_root_list({2})).B == std::nullopt);
  CHECK(root_scale(from_root_list({100})) == doctest::Approx(100.0));
  CHECK(to_string(Membership::BoundaryBand) == "boundary");
}
