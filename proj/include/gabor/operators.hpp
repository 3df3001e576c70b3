#pragma once

// Coefficient (analysis) map C, synthesis map D, frame operator S = DC and
// Gramian G = CD of the Gabor system {pi(lam) g : lam in Lambda}.
//
// Windows are passed as raw sample vectors so the same routines serve
// normalized windows, canonical duals and test functions alike.

#include <vector>

#include "gabor/lattice.hpp"

namespace gabor {

/// Complex sequence on a lattice grid: values(k, l) is the entry at
/// (k a, l b). Serves both as coefficient sequence and as element of the
/// twisted-convolution algebra.
struct LatticeSequence {
  SeparableLattice lattice;
  cmat values;  // time_count() x freq_count()

  static LatticeSequence zeros(const SeparableLattice& lattice);
  /// 1 at (0, 0), 0 elsewhere.
  static LatticeSequence delta(const SeparableLattice& lattice);
  static LatticeSequence point_mass(const SeparableLattice& lattice, index_t k, index_t l,
                                    complex_t weight = 1.0);
  /// Row-major flattening, i = k * freq_count() + l.
  static LatticeSequence from_flat(const SeparableLattice& lattice, const cvec& flat);

  cvec flat() const;
  complex_t& at(index_t k, index_t l) { return values(k, l); }
  complex_t at(index_t k, index_t l) const { return values(k, l); }
};

using LatticeCoefficients = LatticeSequence;

/// Upper bound on entries of any explicit operator matrix built here.
inline constexpr index_t kMaxMatrixEntries = index_t{1} << 24;
inline constexpr index_t kMaxExplicitLength = 4096;

/// (Cf)(lam) = <f, pi(lam) g>, evaluated matrix-free with FFTs.
LatticeCoefficients coefficient_map(const cvec& g, const SeparableLattice& lattice, const cvec& f);

/// sum_lam c_lam pi(lam) g, evaluated matrix-free with FFTs.
cvec synthesis_map(const cvec& g, const LatticeCoefficients& c);

/// L x n matrix whose column i is pi(point(i)) g.
cmat synthesis_matrix(const cvec& g, const SeparableLattice& lattice);

/// n x L matrix, the conjugate transpose of synthesis_matrix.
cmat coefficient_matrix(const cvec& g, const SeparableLattice& lattice);

/// S = D C as an explicit Hermitian L x L matrix.
cmat frame_operator_matrix(const cvec& g, const SeparableLattice& lattice);

/// G(i, j) = <pi(lam_j) g, pi(lam_i) g>, n x n Hermitian.
cmat gramian_matrix(const cvec& g, const SeparableLattice& lattice);

/// sum_j S_{g_j, Lambda}. Throws ParameterError on an empty list.
cmat multiwindow_frame_operator(const std::vector<cvec>& windows, const SeparableLattice& lattice);

/// Measured operator norms of C, D, S, G. In exact arithmetic
/// ||S|| = ||G|| = ||C||^2 = ||D||^2.
struct OperatorNorms {
  double coefficient = 0.0;
  double synthesis = 0.0;
  double frame_operator = 0.0;
  double gramian = 0.0;
};
OperatorNorms operator_norms(const cvec& g, const SeparableLattice& lattice);

/// sum_lam |<g, pi(lam) g>| over the lattice.
double autocorrelation_l1(const cvec& g, const SeparableLattice& lattice);

/// Inner product <f, h> = sum f conj(h).
inline complex_t inner(const cvec& f, const cvec& h) { return h.dot(f); }

}  // namespace gabor
