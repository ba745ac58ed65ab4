#include "ptdomain/chain_model.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "ptdomain/errors.hpp"

namespace ptdomain {

void require_supported_dimension(int dimension) {
  if (dimension < kMinDimension || dimension > kMaxDimension) {
    throw UnsupportedDimension(dimension);
  }
}

CouplingVector CouplingVector::from_couplings(int dimension, std::vector<double> couplings) {
  require_supported_dimension(dimension);
  const auto half = static_cast<std::size_t>(dimension / 2);
  if (couplings.size() != half) {
    throw InvalidInput("N=" + std::to_string(dimension) + " needs " + std::to_string(half) +
                       " couplings, got " + std::to_string(couplings.size()));
  }
  std::vector<Rational> squares;
  squares.reserve(half);
  for (double g : couplings) {
    const Rational exact = exact_rational(g);
    squares.emplace_back(exact * exact);
  }
  return CouplingVector(dimension, std::move(couplings), std::move(squares));
}

CouplingVector CouplingVector::from_squares(int dimension, std::vector<Rational> squares) {
  require_supported_dimension(dimension);
  const auto half = static_cast<std::size_t>(dimension / 2);
  if (squares.size() != half) {
    throw InvalidInput("N=" + std::to_string(dimension) + " needs " + std::to_string(half) +
                       " squared couplings, got " + std::to_string(squares.size()));
  }
  std::vector<double> couplings;
  couplings.reserve(half);
  for (auto& sq : squares) {
    sq.canonicalize();
    if (sq < 0) throw InvalidInput("squared coupling must be non-negative: " + sq.get_str());
    couplings.push_back(static_cast<double>(std::sqrt(to_long_double(sq))));
  }
  return CouplingVector(dimension, std::move(couplings), std::move(squares));
}

int bond_coupling_index(int dimension, int bond) { return std::min(bond, dimension - bond); }

ChainMatrix::ChainMatrix(int dimension, std::vector<double> dense, std::vector<Rational> diagonal,
                         std::vector<Rational> bond_products)
    : dimension_(dimension),
      dense_(std::move(dense)),
      diagonal_(std::move(diagonal)),
      bond_products_(std::move(bond_products)) {}

double ChainMatrix::operator()(int row, int col) const {
  return dense_[static_cast<std::size_t>(row * dimension_ + col)];
}

void ChainMatrix::set(int row, int col, double value) {
  dense_[static_cast<std::size_t>(row * dimension_ + col)] = value;
}

BandView ChainMatrix::band() const {
  BandView view;
  for (int k = 0; k < dimension_; ++k) view.diagonal.push_back((*this)(k, k));
  for (int k = 0; k + 1 < dimension_; ++k) {
    view.upper.push_back((*this)(k, k + 1));
    view.lower.push_back((*this)(k + 1, k));
  }
  return view;
}

ChainMatrix build_chain(const CouplingVector& couplings) {
  const int n = couplings.dimension();
  require_supported_dimension(n);
  std::vector<double> dense(static_cast<std::size_t>(n * n), 0.0);
  std::vector<Rational> diagonal;
  std::vector<Rational> bonds;
  for (int k = 0; k < n; ++k) {
    const int d = -(n - 1) + 2 * k;
    dense[static_cast<std::size_t>(k * n + k)] = d;
    diagonal.emplace_back(d);
  }
  for (int bond = 1; bond < n; ++bond) {
    const int m = bond_coupling_index(n, bond);
    const auto idx = static_cast<std::size_t>(m - 1);
    const double g = couplings.couplings()[idx];
    const int row = bond - 1;
    dense[static_cast<std::size_t>(row * n + row + 1)] = g;
    dense[static_cast<std::size_t>((row + 1) * n + row)] = -g;
    bonds.push_back(couplings.squares()[idx]);
  }
  return ChainMatrix(n, std::move(dense), std::move(diagonal), std::move(bonds));
}

double anti_persymmetry_defect(const ChainMatrix& matrix) {
  const int n = matrix.dimension();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(matrix(n - 1 - i, n - 1 - j) + matrix(i, j)));
    }
  }
  return worst;
}

std::vector<std::complex<double>> chain_eigenvalues(const ChainMatrix& matrix) {
  const int n = matrix.dimension();
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> dense(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) dense(i, j) = matrix(i, j);
  }
  Eigen::EigenSolver<decltype(dense)> solver(dense, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("dense eigensolver failed for N=" + std::to_string(n));
  }
  std::vector<std::complex<double>> out;
  for (int k = 0; k < n; ++k) {
    const auto ev = solver.eigenvalues()(k);
    out.emplace_back(static_cast<double>(ev.real()), static_cast<double>(ev.imag()));
  }
  return out;
}

std::pair<std::complex<double>, std::complex<double>> two_level_spectrum(const TwoLevelModel& model) {
  const double diff = model.a - model.d;
  const double sign = model.variant == TwoLevelVariant::Hermitian ? 1.0 : -1.0;
  const std::complex<double> root = std::sqrt(std::complex<double>(diff * diff + sign * 4.0 * model.b * model.b, 0.0));
  const std::complex<double> mid(0.5 * (model.a + model.d), 0.0);
  return {mid - 0.5 * root, mid + 0.5 * root};
}

HorizonInterval two_level_horizon(double a, double d) {
  const double half_width = 0.5 * std::abs(a - d);
  return HorizonInterval{-half_width, half_width, half_width == 0.0};
}

}  // namespace ptdomain
