#pragma once

// Window families and explicit kernel constructions for non-frames.

#include <cstdint>
#include <string>
#include <vector>

#include "gabor/twisted.hpp"
#include "gabor/window.hpp"

namespace gabor {

enum class WindowKind { periodized_gaussian, bspline, convolution_product, delta, random, file };

/// Textual form (CLI and config files):
///   delta | gaussian | periodized_gaussian
///   bspline:ORDER:WIDTH          ORDER-fold cyclic convolution of a width-WIDTH box
///   conv:W1,W2,...               convolution product of boxes of widths W1, W2, ...
///   random:SEED                  complex normal samples
///   file:PATH                    window file (see window_io.hpp)
struct WindowRecipe {
  WindowKind kind = WindowKind::periodized_gaussian;
  index_t order = 1;
  std::vector<index_t> widths;
  std::uint64_t seed = 0;
  std::string path;

  static WindowRecipe parse(const std::string& text);
  std::string to_string() const;
};

/// Builds a unit-norm window of length L. Box-based windows are centered at
/// 0 mod L; their unnormalized samples are integers, so partitions of unity
/// hold exactly.
Window make_window(const WindowRecipe& recipe, const FiniteModel& model);

/// g[n] = sum_j exp(-pi (n + jL)^2 / L), normalized. Real, positive and
/// symmetric, g[n] = g[L - n] bit for bit.
Window periodized_gaussian(index_t length);

/// Result of testing sum_k g[n - period k] = const for all n.
struct PartitionOfUnity {
  bool holds = false;
  complex_t value;       // the constant (mean of the periodized sums)
  double deviation = 0;  // max |sum - value|
};

PartitionOfUnity check_partition_of_unity(const cvec& g, index_t period, double tolerance = 1e-12);

/// D_{g, Lambda adjoint} applied to c_kl = (-1)^{k+l} at critical density
/// a = b = sqrt(L).
struct AlternatingProbe {
  index_t length = 0;
  index_t side = 0;          // sqrt(L)
  double ratio = 0.0;        // ||D c|| / ||c||
  double sigma_min = 0.0;    // smallest singular value of D
  double sigma_max = 0.0;
  index_t kernel_dimension = 0;
};

/// Throws ParameterError("L") unless L is a perfect square s^2 with s >= 2.
AlternatingProbe alternating_kernel_probe(index_t length, const cvec& g, double tol_scale = kDefaultTolScale);
AlternatingProbe gaussian_alternating_kernel_probe(index_t length, double tol_scale = kDefaultTolScale);

/// Sequence c_kl = (-1)^{k+l} on the lattice grid.
LatticeSequence alternating_sequence(const SeparableLattice& lattice);

/// Kernel element of D_{g, Lambda adjoint} built from a partition of unity
/// with period `period`. Lambda = alpha Z_L x (N L / period) Z_L, so the
/// adjoint lattice has time step period / N and frequency step L / alpha,
/// and c_{k,l} = m_{k mod N} delta_{l,0} with m = (1, -1, 0, ..., 0).
struct PartitionKernel {
  SeparableLattice lattice;       // Lambda
  TwistedSequence sequence;       // on the adjoint lattice
  complex_t partition_value;
  double residual = 0.0;          // ||D c|| / ||c||
};

PartitionKernel partition_of_unity_kernel(const cvec& g, index_t period, index_t n, index_t alpha);

}  // namespace gabor
