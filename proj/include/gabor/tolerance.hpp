#pragma once

#include <algorithm>
#include <limits>

#include "gabor/lattice.hpp"

namespace gabor {

inline constexpr double kDefaultTolScale = 1e3;

/// The one numerical-rank rule shared by every invertibility decision.
///
/// A positive semidefinite operator with spectrum in [lo, hi] counts as
/// invertible when lo > threshold() * hi. Singular values of C and D are
/// compared squared, i.e. on the spectrum of S = DC or G = CD, so that
/// every route to the same question sees the same number.
class RankTolerance {
public:
  RankTolerance(index_t dimension, double scale = kDefaultTolScale)
      : dimension_(dimension), scale_(scale) {}

  /// For the system G(g, Lambda) and its adjoint: max(n, n_adj, L).
  static RankTolerance for_lattice(const SeparableLattice& lattice, double scale = kDefaultTolScale) {
    const index_t adjoint_size = lattice.a() * lattice.b();
    return {std::max({lattice.size(), adjoint_size, lattice.length()}), scale};
  }

  double scale() const noexcept { return scale_; }
  index_t dimension() const noexcept { return dimension_; }

  double threshold() const noexcept {
    return scale_ * static_cast<double>(dimension_) * std::numeric_limits<double>::epsilon();
  }

  /// Relative spectral gap lo / hi (0 when hi == 0).
  static double relative(double lo, double hi) noexcept { return hi > 0.0 ? std::max(lo, 0.0) / hi : 0.0; }

  bool nonsingular(double lo, double hi) const noexcept { return relative(lo, hi) > threshold(); }

  /// Within a factor 10 of the threshold on either side.
  bool marginal(double lo, double hi) const noexcept {
    const double r = relative(lo, hi);
    return r >= threshold() / 10.0 && r <= threshold() * 10.0;
  }

private:
  index_t dimension_;
  double scale_;
};

}  // namespace gabor
