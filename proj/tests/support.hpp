#pragma once

// Independent reference computations used only by the tests.

#include <cstdint>
#include <random>
#include <vector>

#include "ptdomain/polynomial.hpp"

namespace testing_support {

using ptdomain::Rational;
using Matrix = std::vector<std::vector<Rational>>;

// Cofactor expansion along the first row; fine for N <= 7.
inline Rational laplace_det(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Rational total = 0;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col] == 0) continue;
    Matrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rational> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      minor.push_back(std::move(row));
    }
    const Rational term = m[0][col] * laplace_det(minor);
    total += (col % 2 == 0) ? term : Rational(-term);
  }
  return total;
}

// H(N) written out entry by entry with rational couplings g (not squares).
inline Matrix chain_by_hand(int n, const std::vector<Rational>& g) {
  Matrix h(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
  for (int i = 0; i < n; ++i) h[i][i] = Rational(2 * i - (n - 1));
  for (int bond = 1; bond < n; ++bond) {
    const int m = bond < n - bond ? bond : n - bond;
    h[bond - 1][bond] = g[static_cast<std::size_t>(m - 1)];
    h[bond][bond - 1] = -g[static_cast<std::size_t>(m - 1)];
  }
  return h;
}

inline Matrix shifted(Matrix h, const Rational& e) {
  for (std::size_t i = 0; i < h.size(); ++i) h[i][i] -= e;
  return h;
}

// e_k of the given values, k = 0..size.
inline std::vector<Rational> elementary_symmetric(const std::vector<Rational>& values) {
  std::vector<Rational> e(values.size() + 1, Rational(0));
  e[0] = 1;
  for (const auto& v : values) {
    for (std::size_t k = values.size(); k >= 1; --k) e[k] += e[k - 1] * v;
  }
  return e;
}

// Uniform rational in [lo, hi] with 2^20 steps.
inline Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi) {
  std::uniform_int_distribution<std::int64_t> dist(0, 1 << 20);
  return lo + (hi - lo) * Rational(static_cast<long>(dist(rng))) / Rational(1L << 20);
}

}  // namespace testing_support
