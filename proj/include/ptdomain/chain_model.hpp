#pragma once

// PT-symmetric tridiagonal chain Hamiltonians H(N) and the 2x2 reference
// models.  H(N) has diagonal -(N-1), -(N-3), ..., N-1 and the antisymmetric
// coupling pair (+g, -g) on bond k, with g = g_{min(k, N-k)}.

#include <complex>
#include <utility>
#include <vector>

#include "ptdomain/polynomial.hpp"

namespace ptdomain {

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 11;

/// Throws UnsupportedDimension unless 2 <= N <= 11.
void require_supported_dimension(int dimension);

/// The J = floor(N/2) real couplings of H(N).
///
/// Every coupling vector carries the exact squares g_k^2 next to the
/// floating couplings.  Built from doubles, the squares are the exact squares
/// of the given doubles; built from rational squares, the couplings are the
/// non-negative square roots rounded to double.
class CouplingVector {
 public:
  static CouplingVector from_couplings(int dimension, std::vector<double> couplings);
  static CouplingVector from_squares(int dimension, std::vector<Rational> squares);

  int dimension() const noexcept { return dimension_; }
  int half_dimension() const noexcept { return static_cast<int>(couplings_.size()); }
  const std::vector<double>& couplings() const noexcept { return couplings_; }
  const std::vector<Rational>& squares() const noexcept { return squares_; }

 private:
  CouplingVector(int dimension, std::vector<double> couplings, std::vector<Rational> squares)
      : dimension_(dimension), couplings_(std::move(couplings)), squares_(std::move(squares)) {}

  int dimension_;
  std::vector<double> couplings_;
  std::vector<Rational> squares_;
};

/// Index m(k) = min(k, N-k) of the coupling sitting on bond k (1-based).
int bond_coupling_index(int dimension, int bond);

struct BandView {
  std::vector<double> diagonal;  // N entries
  std::vector<double> upper;     // (k, k+1), N-1 entries
  std::vector<double> lower;     // (k+1, k), N-1 entries
};

class ChainMatrix {
 public:
  ChainMatrix(int dimension, std::vector<double> dense, std::vector<Rational> diagonal,
              std::vector<Rational> bond_products);

  int dimension() const noexcept { return dimension_; }
  double operator()(int row, int col) const;
  void set(int row, int col, double value);

  BandView band() const;
  /// Exact diagonal entries.
  const std::vector<Rational>& exact_diagonal() const noexcept { return diagonal_; }
  /// Exact -upper*lower = g^2 on each of the N-1 bonds.
  const std::vector<Rational>& bond_products() const noexcept { return bond_products_; }

 private:
  int dimension_;
  std::vector<double> dense_;  // row-major
  std::vector<Rational> diagonal_;
  std::vector<Rational> bond_products_;
};

ChainMatrix build_chain(const CouplingVector& couplings);

/// Max-norm of R*H*R + H, R the index-reversal permutation.
double anti_persymmetry_defect(const ChainMatrix& matrix);

/// Eigenvalues of the dense matrix from a general real eigensolver
/// (independent of the secular polynomial route).
std::vector<std::complex<double>> chain_eigenvalues(const ChainMatrix& matrix);

enum class TwoLevelVariant { Hermitian, PTSymmetric };

struct TwoLevelModel {
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;
  TwoLevelVariant variant = TwoLevelVariant::Hermitian;
};

/// (E_-, E_+) of [[a, b], [b, d]] or [[a, b], [-b, d]].
std::pair<std::complex<double>, std::complex<double>> two_level_spectrum(const TwoLevelModel& model);

/// Admissible open interval of b for the PT-symmetric 2x2 model at fixed
/// (a, d); its endpoints form the horizon (a-d)^2 = 4 b^2.
struct HorizonInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool degenerate = false;  // a == d: empty interior

  bool contains(double b) const noexcept { return lower < b && b < upper; }
};

HorizonInterval two_level_horizon(double a, double d);

}  // namespace ptdomain
