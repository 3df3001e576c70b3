#pragma once

// Frame and Riesz bounds, the fourteen-condition frame characterization
// evaluated on the finite model, canonical duals and duality checks.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "gabor/operators.hpp"
#include "gabor/tolerance.hpp"

namespace gabor {

struct BoundsReport {
  double frame_lower = 0.0;  // A = lambda_min(S)
  double frame_upper = 0.0;  // B = lambda_max(S)
  double condition_number = 0.0;  // B / A, +inf when A is zero at tolerance

  // Riesz bounds of G(g, Lambda) in the unsquared convention
  // A' ||c|| <= ||D c|| <= B' ||c||, plus their squares (Gramian eigenvalues).
  double riesz_lower = 0.0;
  double riesz_upper = 0.0;
  double riesz_lower_sq = 0.0;
  double riesz_upper_sq = 0.0;
  double gramian_min_nonzero = 0.0;  // smallest eigenvalue of G above tolerance

  bool is_frame = false;
  bool is_riesz = false;
  double threshold = 0.0;

  rvec frame_spectrum;    // ascending eigenvalues of S
  rvec gramian_spectrum;  // ascending eigenvalues of G
};

BoundsReport frame_bounds(const cvec& g, const SeparableLattice& lattice, double tol_scale = kDefaultTolScale);

/// Conditions (i)..(xiv) of the frame characterization, in order.
inline constexpr std::array<std::string_view, 14> kConditionKeys = {
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii", "xiv"};

/// One verdict per condition. Each witness is the relative spectral gap
/// lambda_min / lambda_max of the positive operator the condition is about,
/// computed from that condition's own operator and decomposition; the
/// verdict is witness > threshold.
struct EquivalenceVerdict {
  std::array<bool, 14> holds{};
  std::array<double, 14> witness{};
  std::array<std::string_view, 14> route{};
  double threshold = 0.0;
  bool consistent = false;
  /// Some witness lies within a factor 10 of the threshold.
  bool marginal = false;
  /// A unit vector in ker D_{g, Lambda adjoint} when (viii) fails.
  std::optional<LatticeSequence> kernel_witness;
  double kernel_witness_residual = 0.0;

  bool all_true() const;
  bool all_false() const;
};

EquivalenceVerdict check_all_conditions(const cvec& g, const SeparableLattice& lattice,
                                        double tol_scale = kDefaultTolScale);

/// Canonical dual gamma = S^{-1} g with its biorthogonality defect
/// max_{mu in adjoint} |<gamma, pi(mu) g> - s(Lambda) delta_{mu,0}|.
struct DualWindow {
  cvec samples;
  std::string label;
  double wexler_raz_constant = 0.0;  // s(Lambda) = ab / L
  double biorthogonality_residual = 0.0;
  double frame_lower = 0.0;
  double frame_upper = 0.0;
};

/// Throws NotAFrameError when S is singular at the shared tolerance.
DualWindow wexler_raz_dual(const cvec& g, const SeparableLattice& lattice, double tol_scale = kDefaultTolScale,
                           std::string label = "canonical-dual");

/// Phi(mu, nu) = <pi(nu) phi, pi(mu) g> over the given (adjoint) lattice.
cmat cross_gramian(const cvec& phi, const cvec& g, const SeparableLattice& lattice);

/// sum_mu |<phi, pi(mu) g> - delta_{mu,0}|, which equals the maximal
/// absolute row sum of Phi - I.
double wexler_raz_defect(const cvec& phi, const cvec& g, const SeparableLattice& lattice);

/// Maximal absolute row sum of a matrix.
double max_row_sum_norm(const cmat& m);

struct DualityReport {
  bool frame = false;
  bool adjoint_riesz = false;
  bool agree = false;
  /// Either spectral ratio lies within a factor 10 of the threshold.
  bool marginal = false;
  rvec frame_spectrum;             // eigenvalues of S_{g, Lambda}
  rvec adjoint_gramian_spectrum;   // eigenvalues of G_{g, Lambda adjoint}
};

DualityReport duality_check(const cvec& g, const SeparableLattice& lattice, double tol_scale = kDefaultTolScale);

enum class ModulationOrder { one, two, infinity };

/// l^p norm of V f(z) = <f, pi(z) phi> over all of Z_L x Z_L with phi the
/// unit-norm periodized Gaussian.
double modulation_norm_proxy(const cvec& f, ModulationOrder p);

/// p must be 1, 2 or +inf; anything else throws ParameterError("p").
double modulation_norm_proxy(const cvec& f, double p);

}  // namespace gabor
