#include "gabor/diagnostics.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "gabor/gallery.hpp"

namespace gabor {
namespace {

using Eigen::JacobiSVD;
using HermitianEigen = Eigen::SelfAdjointEigenSolver<cmat>;

rvec eigenvalues(const cmat& hermitian) {
  return HermitianEigen(hermitian, Eigen::EigenvaluesOnly).eigenvalues();
}

// Relative gap sigma_r^2 / sigma_0^2 where r = required rank - 1; zero when
// the matrix cannot reach the required rank at all.
double rank_witness(const rvec& singular_values, index_t required_rank) {
  if (singular_values.size() < required_rank || singular_values.size() == 0) return 0.0;
  const double top = singular_values(0);
  const double low = singular_values(required_rank - 1);
  return RankTolerance::relative(low * low, top * top);
}

double spectral_witness(const rvec& ascending) {
  return RankTolerance::relative(ascending(0), ascending(ascending.size() - 1));
}

double singular_witness(const rvec& descending) {
  return RankTolerance::relative(descending(descending.size() - 1), descending(0));
}

}  // namespace

BoundsReport frame_bounds(const cvec& g, const SeparableLattice& lattice, double tol_scale) {
  const auto tol = RankTolerance::for_lattice(lattice, tol_scale);
  BoundsReport r;
  r.threshold = tol.threshold();

  r.frame_spectrum = eigenvalues(frame_operator_matrix(g, lattice));
  const double lo = r.frame_spectrum(0);
  const double hi = r.frame_spectrum(r.frame_spectrum.size() - 1);
  r.frame_lower = std::max(lo, 0.0);
  r.frame_upper = hi;
  r.is_frame = tol.nonsingular(lo, hi);
  r.condition_number = r.is_frame ? hi / lo : std::numeric_limits<double>::infinity();

  r.gramian_spectrum = eigenvalues(gramian_matrix(g, lattice));
  const double glo = r.gramian_spectrum(0);
  const double ghi = r.gramian_spectrum(r.gramian_spectrum.size() - 1);
  r.riesz_lower_sq = std::max(glo, 0.0);
  r.riesz_upper_sq = ghi;
  r.riesz_lower = std::sqrt(r.riesz_lower_sq);
  r.riesz_upper = std::sqrt(std::max(ghi, 0.0));
  r.is_riesz = tol.nonsingular(glo, ghi);
  for (double v : r.gramian_spectrum) {
    if (tol.nonsingular(v, ghi)) {
      r.gramian_min_nonzero = v;
      break;
    }
  }
  return r;
}

bool EquivalenceVerdict::all_true() const {
  for (bool h : holds)
    if (!h) return false;
  return true;
}

bool EquivalenceVerdict::all_false() const {
  for (bool h : holds)
    if (h) return false;
  return true;
}

EquivalenceVerdict check_all_conditions(const cvec& g, const SeparableLattice& lattice, double tol_scale) {
  const auto tol = RankTolerance::for_lattice(lattice, tol_scale);
  const auto adj = adjoint_lattice(lattice);
  const index_t L = lattice.length();
  const index_t n_adj = adj.size();

  const cmat d = synthesis_matrix(g, lattice);
  const cmat c = d.adjoint();
  const cmat s = frame_operator_matrix(g, lattice);
  const cmat d_adj = synthesis_matrix(g, adj);
  const cmat c_adj = d_adj.adjoint();
  const cmat gram_adj = gramian_matrix(g, adj);

  EquivalenceVerdict v;
  v.threshold = tol.threshold();
  auto& w = v.witness;

  // (i) C_{g,Lambda} bounded below: rank L
  w[0] = rank_witness(JacobiSVD<cmat>(c).singularValues(), L);
  // (ii), (iii) S invertible
  w[1] = w[2] = singular_witness(JacobiSVD<cmat>(s).singularValues());
  // (iv) S one-to-one
  w[3] = spectral_witness(eigenvalues(s));
  // (v) C one-to-one
  w[4] = rank_witness(Eigen::BDCSVD<cmat>(c).singularValues(), L);
  // (vi), (vii) D_{g,Lambda} onto
  w[5] = w[6] = rank_witness(JacobiSVD<cmat>(d).singularValues(), L);
  // (viii) D_{g,Lambda adjoint} one-to-one
  JacobiSVD<cmat> d_adj_svd(d_adj, Eigen::ComputeFullV);
  w[7] = rank_witness(d_adj_svd.singularValues(), n_adj);
  // (ix), (x) C_{g,Lambda adjoint} onto
  w[8] = w[9] = rank_witness(JacobiSVD<cmat>(c_adj).singularValues(), n_adj);
  // (xi), (xii) G_{g,Lambda adjoint} invertible
  w[10] = w[11] = singular_witness(JacobiSVD<cmat>(gram_adj).singularValues());
  // (xiii) G_{g,Lambda adjoint} one-to-one
  w[12] = spectral_witness(eigenvalues(gram_adj));
  // (xiv) G(g, Lambda adjoint) Riesz sequence
  const auto adj_bounds = frame_bounds(g, adj, tol_scale);
  w[13] = RankTolerance::relative(adj_bounds.riesz_lower_sq, adj_bounds.riesz_upper_sq);

  v.route = {"svd(C)",   "svd(S)",   "svd(S)",     "eig(S)",       "bdcsvd(C)",
             "svd(D)",   "svd(D)",   "svd(D_adj)", "svd(C_adj)",   "svd(C_adj)",
             "svd(G_adj)", "svd(G_adj)", "eig(G_adj)", "riesz(G_adj)"};

  const double th = tol.threshold();
  for (std::size_t i = 0; i < w.size(); ++i) {
    v.holds[i] = w[i] > th;
    if (w[i] >= th / 10.0 && w[i] <= th * 10.0) v.marginal = true;
  }
  v.consistent = v.all_true() || v.all_false();

  if (!v.holds[7]) {
    // Last right singular vector spans part of the kernel.
    const cvec kv = d_adj_svd.matrixV().col(n_adj - 1);
    v.kernel_witness = LatticeSequence::from_flat(adj, kv);
    v.kernel_witness_residual = (d_adj * kv).norm() / kv.norm();
  }
  return v;
}

namespace {

// S f in extended precision R from the Walnut form
//   (S f)(t) = M sum_j sum_k g(t - k a) conj(g(t + j M - k a)) f(t + j M),  M = L / b.
// No roots of unity are involved, so the only rounding is in the sums.
template <class R>
std::vector<std::complex<R>> walnut_apply(const std::vector<std::complex<R>>& g, const SeparableLattice& lattice,
                                          const std::vector<std::complex<R>>& f) {
  using C = std::complex<R>;
  const index_t L = lattice.length();
  const index_t M = lattice.freq_count();
  std::vector<C> out(static_cast<std::size_t>(L));
  auto at = [L](const std::vector<C>& v, index_t i) { return v[static_cast<std::size_t>(mod(i, L))]; };
  for (index_t t = 0; t < L; ++t) {
    C acc(0);
    for (index_t j = 0; j < lattice.b(); ++j) {
      const index_t u = t + j * M;
      C corr(0);
      for (index_t k = 0; k < lattice.time_count(); ++k) {
        const index_t shift = k * lattice.a();
        corr += at(g, t - shift) * std::conj(at(g, u - shift));
      }
      acc += corr * at(f, u);
    }
    out[static_cast<std::size_t>(t)] = static_cast<R>(M) * acc;
  }
  return out;
}

template <class R>
std::vector<std::complex<R>> widen(const cvec& v) {
  std::vector<std::complex<R>> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out[static_cast<std::size_t>(i)] = {static_cast<R>(v[i].real()), static_cast<R>(v[i].imag())};
  return out;
}

template <class R>
cvec narrow(const std::vector<std::complex<R>>& v) {
  cvec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = {static_cast<double>(v[i].real()), static_cast<double>(v[i].imag())};
  return out;
}

// Iterative refinement of S gamma = g: corrections come from the double
// Cholesky factor, residuals are formed in R. Converges to gamma rounded to
// double as long as cond(S) * eps(R) stays well below eps(double).
template <class R>
cvec refine_dual(const Eigen::LLT<cmat>& chol, const cvec& g, const SeparableLattice& lattice) {
  cvec gamma = chol.solve(g);
  auto wide = widen<R>(gamma);
  const auto g_wide = widen<R>(g);
  for (int step = 0; step < 10; ++step) {
    const auto sg = walnut_apply<R>(g_wide, lattice, wide);
    std::vector<std::complex<R>> r(sg.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = g_wide[i] - sg[i];
    const cvec delta = chol.solve(narrow(r));
    const auto delta_wide = widen<R>(delta);
    for (std::size_t i = 0; i < wide.size(); ++i) wide[i] += delta_wide[i];
    if (delta.norm() <= 1e-18 * gamma.norm()) break;
  }
  return narrow(wide);
}

}  // namespace

DualWindow wexler_raz_dual(const cvec& g, const SeparableLattice& lattice, double tol_scale, std::string label) {
  const auto tol = RankTolerance::for_lattice(lattice, tol_scale);
  const cmat s = frame_operator_matrix(g, lattice);
  const rvec spectrum = eigenvalues(s);
  const double lo = spectrum(0);
  const double hi = spectrum(spectrum.size() - 1);
  if (!tol.nonsingular(lo, hi)) throw NotAFrameError("wexler_raz_dual: not a frame", lo, hi);

  // Mixed-precision refinement. long double residuals suffice while
  // cond(S) * 1e-19 is negligible; beyond that quad precision is used where
  // the compiler provides it.
  const Eigen::LLT<cmat> chol(s);
  cvec gamma;
#ifdef __SIZEOF_FLOAT128__
  if (hi > 1e7 * lo)
    gamma = refine_dual<__float128>(chol, g, lattice);
  else
#endif
    gamma = refine_dual<long double>(chol, g, lattice);

  DualWindow dual;
  dual.samples = std::move(gamma);
  dual.label = std::move(label);
  dual.wexler_raz_constant = lattice.covolume();
  dual.frame_lower = lo;
  dual.frame_upper = hi;

  const auto adj = adjoint_lattice(lattice);
  auto biorth = coefficient_map(g, adj, dual.samples);
  biorth.values(0, 0) -= dual.wexler_raz_constant;
  dual.biorthogonality_residual = biorth.values.cwiseAbs().maxCoeff();
  return dual;
}

cmat cross_gramian(const cvec& phi, const cvec& g, const SeparableLattice& lattice) {
  return synthesis_matrix(g, lattice).adjoint() * synthesis_matrix(phi, lattice);
}

double wexler_raz_defect(const cvec& phi, const cvec& g, const SeparableLattice& lattice) {
  auto c = coefficient_map(g, lattice, phi);
  c.values(0, 0) -= 1.0;
  return c.values.cwiseAbs().sum();
}

double max_row_sum_norm(const cmat& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

DualityReport duality_check(const cvec& g, const SeparableLattice& lattice, double tol_scale) {
  const auto tol = RankTolerance::for_lattice(lattice, tol_scale);
  DualityReport r;
  r.frame_spectrum = eigenvalues(frame_operator_matrix(g, lattice));
  r.adjoint_gramian_spectrum = eigenvalues(gramian_matrix(g, adjoint_lattice(lattice)));
  r.frame = tol.nonsingular(r.frame_spectrum(0), r.frame_spectrum(r.frame_spectrum.size() - 1));
  r.adjoint_riesz = tol.nonsingular(r.adjoint_gramian_spectrum(0),
                                    r.adjoint_gramian_spectrum(r.adjoint_gramian_spectrum.size() - 1));
  r.agree = r.frame == r.adjoint_riesz;
  r.marginal = tol.marginal(r.frame_spectrum(0), r.frame_spectrum(r.frame_spectrum.size() - 1)) ||
               tol.marginal(r.adjoint_gramian_spectrum(0),
                            r.adjoint_gramian_spectrum(r.adjoint_gramian_spectrum.size() - 1));
  return r;
}

double modulation_norm_proxy(const cvec& f, ModulationOrder p) {
  const index_t L = f.size();
  const auto phi = periodized_gaussian(L);
  const auto v = coefficient_map(phi.samples(), SeparableLattice(L, 1, 1), f).values;
  switch (p) {
    case ModulationOrder::one:
      return v.cwiseAbs().sum();
    case ModulationOrder::two:
      return v.norm();
    case ModulationOrder::infinity:
      return v.cwiseAbs().maxCoeff();
  }
  return 0.0;
}

double modulation_norm_proxy(const cvec& f, double p) {
  if (p == 1.0) return modulation_norm_proxy(f, ModulationOrder::one);
  if (p == 2.0) return modulation_norm_proxy(f, ModulationOrder::two);
  if (std::isinf(p) && p > 0) return modulation_norm_proxy(f, ModulationOrder::infinity);
  throw ParameterError("p", "modulation norm proxy supports p = 1, 2 or inf, got " + std::to_string(p));
}

}  // namespace gabor
