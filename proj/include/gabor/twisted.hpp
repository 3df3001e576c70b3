#pragma once

// Finite twisted-convolution algebra on a separable lattice.
//
// The product is fixed by requiring pi(a) pi(b) = pi(a # b) for
// pi(c) = sum_lam c_lam pi(lam). With pi(x, xi) = M_xi T_x this gives
//
//   (a # b)(nu) = sum_lam a_lam b_{nu - lam} exp(-2 pi i lam.x (nu - lam).xi / L).
//
// Note the minus sign in the phase.

#include <vector>

#include "gabor/operators.hpp"
#include "gabor/tolerance.hpp"

namespace gabor {

using TwistedSequence = LatticeSequence;

/// a # b. Both sequences must live on the same lattice.
TwistedSequence twisted_convolve(const TwistedSequence& a, const TwistedSequence& b);

/// pi(c) = sum_lam c_lam pi(lam) as an L x L matrix.
cmat represent(const TwistedSequence& c);

/// a* with pi(a*) = pi(a)^H: a*_mu = conj(a_{-mu}) exp(-2 pi i mu.x mu.xi / L).
TwistedSequence algebra_adjoint(const TwistedSequence& a);

/// n x n matrix of the right multiplication c -> c # a in flat coordinates.
cmat right_multiplication_matrix(const TwistedSequence& a);

/// a_mu = s(Lambda)^{-1} <g, pi(mu) g> on the adjoint lattice, so that
/// S_{g,Lambda} = pi(a).
TwistedSequence janssen_coefficients(const cvec& g, const SeparableLattice& lattice);

/// b with a # b = b # a = delta. Throws SingularAlgebraError when the right
/// multiplication by `a` is singular at the shared tolerance.
TwistedSequence twisted_invert(const TwistedSequence& a, double tol_scale = kDefaultTolScale);

/// Orthonormal basis (flat coordinates) of ker D_{g, lattice}. Usually called
/// with the adjoint lattice. Empty when D is injective.
std::vector<TwistedSequence> kernel_basis(const cvec& g, const SeparableLattice& lattice,
                                          double tol_scale = kDefaultTolScale);

/// Number of characters e_(p,q)(k, l) = exp(2 pi i (p k / n1 + q l / n2))
/// lying in ker D_{g, lattice}. Requires a commutative lattice; throws
/// NonCommutativeLatticeError otherwise.
index_t index_commutative(const cvec& g, const SeparableLattice& lattice,
                          double tol_scale = kDefaultTolScale);

/// Character sequence e_(p,q) on the lattice grid.
TwistedSequence character(const SeparableLattice& lattice, index_t p, index_t q);

double l1_norm(const TwistedSequence& a);
double l2_norm(const TwistedSequence& a);

}  // namespace gabor
