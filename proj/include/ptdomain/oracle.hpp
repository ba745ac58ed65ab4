#pragma once

// Ground truth independent of the closed-form criteria: exact Sturm counting
// of the non-negative roots of the secular polynomial, and a numerical
// spectrum reporter.

#include <complex>
#include <vector>

#include "ptdomain/chain_model.hpp"
#include "ptdomain/polynomial.hpp"
#include "ptdomain/secular.hpp"
#include "ptdomain/verdict.hpp"

namespace ptdomain {

struct SturmCertificate {
  RationalPoly squarefree_part;
  int variations_at_zero = 0;      // Sturm chain of the squarefree part, zero root removed
  int variations_at_infinity = 0;
  int nonneg_real_roots = 0;       // distinct roots in [0, inf)
  bool has_multiple_root = false;
  bool has_root_at_zero = false;

  /// Every root (with multiplicity) is real and >= 0.
  bool all_roots_real_nonneg() const noexcept {
    return nonneg_real_roots == squarefree_part.degree();
  }
};

/// Exact; throws InvalidInput on the zero polynomial.
SturmCertificate sturm_classify(const RationalPoly& polynomial);
SturmCertificate sturm_classify(const SecularForm& form);

/// Inside: J distinct roots, all > 0.  BoundaryBand: all roots real and >= 0
/// with a multiple root or a root at zero.  Outside otherwise.  No tolerance.
Verdict oracle_verdict(const SecularForm& form);
Verdict oracle_verdict(const CouplingVector& couplings);

enum class SpectrumClass { AllRealSimple, DegenerateReal, ComplexPairs };

const char* to_string(SpectrumClass value) noexcept;

struct SpectrumReport {
  std::vector<std::complex<double>> s_roots;   // J roots of the secular polynomial
  std::vector<std::complex<double>> energies;  // +-sqrt(s), plus 0 for odd N; ascending by (re, im)
  SpectrumClass classification = SpectrumClass::AllRealSimple;
  std::vector<int> degeneracy_pattern;         // cluster sizes, descending
  double min_root = 0.0;                       // min |s|
  double min_root_gap = 0.0;                   // min |s_i - s_j| (inf for J = 1)
  double max_residual = 0.0;                   // max |secular(s_i)| / coefficient scale
};

/// Relative clustering tolerance for the degeneracy pattern.
inline constexpr double kClusterTolerance = 1e-6;

SpectrumReport numeric_spectrum(const SecularForm& form, bool odd_dimension);
SpectrumReport numeric_spectrum(const CouplingVector& couplings);

}  // namespace ptdomain
