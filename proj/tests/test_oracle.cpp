#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ptdomain/errors.hpp"
#include "ptdomain/oracle.hpp"
#include "support.hpp"

using namespace ptdomain;
using testing_support::random_rational;

namespace {

bool negation_symmetric(const std::vector<std::complex<double>>& e, double tol) {
  std::vector<std::complex<double>> pool;
  for (auto z : e) pool.push_back(-z);
  for (const auto& z : e) {
    auto it = std::min_element(pool.begin(), pool.end(),
                               [&](auto a, auto b) { return std::abs(a - z) < std::abs(b - z); });
    if (std::abs(*it - z) > tol * std::max(1.0, std::abs(z))) return false;
    pool.erase(it);
  }
  return true;
}

}  // namespace

TEST_CASE("Sturm certificates") {
  const auto simple = sturm_classify(RationalPoly{Rational(-1), Rational(1)});
  CHECK(simple.nonneg_real_roots == 1);
  CHECK_FALSE(simple.has_multiple_root);
  CHECK(simple.all_roots_real_nonneg());

  // (s^2 + 1)(s - 2)
  const auto mixed = sturm_classify(RationalPoly{Rational(-2), Rational(1), Rational(-2), Rational(1)});
  CHECK(mixed.nonneg_real_roots == 1);
  CHECK_FALSE(mixed.all_roots_real_nonneg());

  // s (s - 16)^2
  const auto dep = sturm_classify(RationalPoly{Rational(0), Rational(256), Rational(-32), Rational(1)});
  CHECK(dep.nonneg_real_roots == 2);
  CHECK(dep.has_multiple_root);
  CHECK(dep.has_root_at_zero);
  CHECK(dep.all_roots_real_nonneg());

  const auto negative = sturm_classify(from_roots({-1, 2}));
  CHECK(negative.nonneg_real_roots == 1);
  CHECK_THROWS_AS(sturm_classify(RationalPoly{}), InvalidInput);
}

TEST_CASE("oracle verdict examples") {
  CHECK(oracle_verdict(CouplingVector::from_squares(2, {1})).state == Membership::BoundaryBand);
  const auto eep4 = oracle_verdict(CouplingVector::from_squares(4, {3, 4}));
  CHECK(eep4.state == Membership::BoundaryBand);
  CHECK(secular_form(CouplingVector::from_squares(4, {3, 4})).polynomial() ==
        RationalPoly::monomial(Rational(1), 2));
  const auto inside = oracle_verdict(CouplingVector::from_squares(6, {1, 1, 1}));
  CHECK(inside.state == Membership::Inside);
  CHECK(inside.margin > 0.0);
  const auto outside = oracle_verdict(CouplingVector::from_couplings(4, {2.0, 0.0}));
  CHECK(outside.state == Membership::Outside);
  CHECK(outside.witness == "non-real root");
  CHECK(outside.margin < 0.0);
  CHECK(oracle_verdict(CouplingVector::from_couplings(3, {2.0})).witness == "negative root");
}

TEST_CASE("spectrum examples") {
  const auto diag = numeric_spectrum(CouplingVector::from_squares(6, {0, 0, 0}));
  REQUIRE(diag.energies.size() == 6);
  const double want[] = {-5, -3, -1, 1, 3, 5};
  for (int k = 0; k < 6; ++k) CHECK(diag.energies[static_cast<std::size_t>(k)].real() == doctest::Approx(want[k]));
  CHECK(diag.classification == SpectrumClass::AllRealSimple);
  CHECK(diag.s_roots.size() == 3);

  const auto eep2 = numeric_spectrum(CouplingVector::from_squares(2, {1}));
  REQUIRE(eep2.energies.size() == 2);
  CHECK(std::abs(eep2.energies[0]) == 0.0);
  CHECK(eep2.degeneracy_pattern == std::vector<int>{2});
  CHECK(eep2.classification == SpectrumClass::DegenerateReal);

  const auto odd = numeric_spectrum(CouplingVector::from_squares(5, {0, 0}));
  CHECK(odd.energies.size() == 5);
  CHECK(odd.s_roots.size() == 2);

  const auto broken = numeric_spectrum(CouplingVector::from_couplings(4, {2.0, 0.0}));
  CHECK(broken.classification == SpectrumClass::ComplexPairs);
  CHECK(std::string(to_string(broken.classification)) == "ComplexPairs");

  const auto dep = numeric_spectrum(SecularForm::from_monic(RationalPoly{Rational(0), Rational(256), Rational(-32), Rational(1)}), false);
  CHECK(dep.degeneracy_pattern == std::vector<int>{2, 2, 2});
  CHECK(dep.energies[0].real() == doctest::Approx(-4.0));
  CHECK(dep.energies[1].real() == doctest::Approx(-4.0));
}

TEST_CASE("exactness and sign-flip invariance") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 10;
    std::vector<double> g(static_cast<std::size_t>(n / 2));
    for (auto& x : g) x = std::uniform_real_distribution<double>(-2.5, 2.5)(rng);
    const auto base = CouplingVector::from_couplings(n, g);
    const auto v1 = oracle_verdict(base);
    const auto v2 = oracle_verdict(base);
    CHECK(v1.state == v2.state);
    CHECK(v1.margin == v2.margin);
    auto flipped = g;
    flipped[static_cast<std::size_t>(trial) % flipped.size()] *= -1;
    CHECK(oracle_verdict(CouplingVector::from_couplings(n, flipped)).state == v1.state);
  }
}

TEST_CASE("Sturm and numeric classification agree away from degeneracy") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 10;
    std::vector<Rational> sq;
    for (int k = 1; k <= n / 2; ++k) sq.push_back(random_rational(rng, 0, Rational(6, 5) * (n - k) * k));
    const auto c = CouplingVector::from_squares(n, sq);
    const auto report = numeric_spectrum(c);
    CHECK(report.s_roots.size() == static_cast<std::size_t>(n / 2));
    CHECK(report.energies.size() == static_cast<std::size_t>(n));
    CHECK(negation_symmetric(report.energies, 1e-10));
    CHECK(report.max_residual <= 1e-9);
    if (report.min_root_gap > 1e-6 && report.min_root > 1e-6) {
      const auto state = oracle_verdict(c).state;
      const auto want = report.classification == SpectrumClass::AllRealSimple ? Membership::Inside
                        : report.classification == SpectrumClass::ComplexPairs ? Membership::Outside
                                                                                : Membership::BoundaryBand;
      CHECK(state == want);
    }
  }
}
