#include "gabor/operators.hpp"

#include <string>

#include <unsupported/Eigen/FFT>

namespace gabor {
namespace {

void require_length(const cvec& v, index_t L, const char* what) {
  if (v.size() != L)
    throw ShapeError(std::string(what) + " has length " + std::to_string(v.size()) +
                     ", expected " + std::to_string(L));
}

void require_shape(const LatticeSequence& c) {
  const auto& lat = c.lattice;
  if (c.values.rows() != lat.time_count() || c.values.cols() != lat.freq_count())
    throw ShapeError("lattice sequence is " + std::to_string(c.values.rows()) + "x" +
                     std::to_string(c.values.cols()) + ", lattice grid is " +
                     std::to_string(lat.time_count()) + "x" + std::to_string(lat.freq_count()));
}

void guard_explicit(const SeparableLattice& lattice) {
  const index_t L = lattice.length();
  if (L > kMaxExplicitLength || L * lattice.size() > kMaxMatrixEntries)
    throw SizeLimitError("explicit operator for L=" + std::to_string(L) + ", n=" +
                         std::to_string(lattice.size()) + " exceeds the matrix size guard");
}

void make_hermitian(cmat& m) {
  cmat h = 0.5 * (m + m.adjoint());
  m = std::move(h);
}

}  // namespace

LatticeSequence LatticeSequence::zeros(const SeparableLattice& lattice) {
  return {lattice, cmat::Zero(lattice.time_count(), lattice.freq_count())};
}

LatticeSequence LatticeSequence::delta(const SeparableLattice& lattice) {
  return point_mass(lattice, 0, 0);
}

LatticeSequence LatticeSequence::point_mass(const SeparableLattice& lattice, index_t k, index_t l,
                                            complex_t weight) {
  auto s = zeros(lattice);
  s.values(mod(k, lattice.time_count()), mod(l, lattice.freq_count())) = weight;
  return s;
}

LatticeSequence LatticeSequence::from_flat(const SeparableLattice& lattice, const cvec& flat) {
  if (flat.size() != lattice.size())
    throw ShapeError("flat sequence has " + std::to_string(flat.size()) + " entries, lattice has " +
                     std::to_string(lattice.size()));
  auto s = zeros(lattice);
  const index_t m = lattice.freq_count();
  for (index_t i = 0; i < flat.size(); ++i) s.values(i / m, i % m) = flat[i];
  return s;
}

cvec LatticeSequence::flat() const {
  const index_t m = values.cols();
  cvec out(values.size());
  for (index_t k = 0; k < values.rows(); ++k)
    for (index_t l = 0; l < m; ++l) out[k * m + l] = values(k, l);
  return out;
}

// With M = L/b, (C f)(k, l) = sum_r H_k(r) exp(-2 pi i l r / M) where
// H_k(r) = sum_q f(r + qM) conj(g(r + qM - ka)): one length-M FFT per time index.
LatticeCoefficients coefficient_map(const cvec& g, const SeparableLattice& lattice, const cvec& f) {
  const index_t L = lattice.length();
  require_length(g, L, "window");
  require_length(f, L, "signal");
  const index_t M = lattice.freq_count();
  auto out = LatticeSequence::zeros(lattice);

  Eigen::FFT<double> fft;
  std::vector<complex_t> folded(static_cast<std::size_t>(M));
  std::vector<complex_t> spectrum;
  for (index_t k = 0; k < lattice.time_count(); ++k) {
    std::fill(folded.begin(), folded.end(), complex_t{});
    const index_t shift = k * lattice.a();
    for (index_t t = 0; t < L; ++t)
      folded[static_cast<std::size_t>(t % M)] += f[t] * std::conj(g[mod(t - shift, L)]);
    if (M == 1)
      spectrum = folded;  // kissfft does not handle length 1
    else
      fft.fwd(spectrum, folded);
    for (index_t l = 0; l < M; ++l) out.values(k, l) = spectrum[static_cast<std::size_t>(l)];
  }
  return out;
}

cvec synthesis_map(const cvec& g, const LatticeCoefficients& c) {
  require_shape(c);
  const auto& lattice = c.lattice;
  const index_t L = lattice.length();
  require_length(g, L, "window");
  const index_t M = lattice.freq_count();

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<complex_t> row(static_cast<std::size_t>(M));
  std::vector<complex_t> poly;
  cvec out = cvec::Zero(L);
  for (index_t k = 0; k < lattice.time_count(); ++k) {
    for (index_t l = 0; l < M; ++l) row[static_cast<std::size_t>(l)] = c.values(k, l);
    if (M == 1)
      poly = row;
    else
      fft.inv(poly, row);
    const index_t shift = k * lattice.a();
    for (index_t t = 0; t < L; ++t) out[t] += g[mod(t - shift, L)] * poly[static_cast<std::size_t>(t % M)];
  }
  return out;
}

cmat synthesis_matrix(const cvec& g, const SeparableLattice& lattice) {
  require_length(g, lattice.length(), "window");
  guard_explicit(lattice);
  const auto model = lattice.model();
  cmat d(lattice.length(), lattice.size());
  for (index_t i = 0; i < lattice.size(); ++i) d.col(i) = tf_shift(model, lattice.point(i), g);
  return d;
}

cmat coefficient_matrix(const cvec& g, const SeparableLattice& lattice) {
  return synthesis_matrix(g, lattice).adjoint();
}

cmat frame_operator_matrix(const cvec& g, const SeparableLattice& lattice) {
  const cmat d = synthesis_matrix(g, lattice);
  cmat s = d * d.adjoint();
  make_hermitian(s);
  return s;
}

cmat gramian_matrix(const cvec& g, const SeparableLattice& lattice) {
  const cmat d = synthesis_matrix(g, lattice);
  cmat gram = d.adjoint() * d;
  make_hermitian(gram);
  return gram;
}

cmat multiwindow_frame_operator(const std::vector<cvec>& windows, const SeparableLattice& lattice) {
  if (windows.empty()) throw ParameterError("windows", "multi-window frame operator needs at least one window");
  cmat s = cmat::Zero(lattice.length(), lattice.length());
  for (const auto& g : windows) s += frame_operator_matrix(g, lattice);
  return s;
}

OperatorNorms operator_norms(const cvec& g, const SeparableLattice& lattice) {
  const cmat d = synthesis_matrix(g, lattice);
  OperatorNorms n;
  n.synthesis = Eigen::BDCSVD<cmat>(d).singularValues()(0);
  n.coefficient = Eigen::BDCSVD<cmat>(cmat(d.adjoint())).singularValues()(0);
  n.frame_operator = Eigen::SelfAdjointEigenSolver<cmat>(frame_operator_matrix(g, lattice), Eigen::EigenvaluesOnly)
                         .eigenvalues()
                         .maxCoeff();
  n.gramian = Eigen::SelfAdjointEigenSolver<cmat>(gramian_matrix(g, lattice), Eigen::EigenvaluesOnly)
                  .eigenvalues()
                  .maxCoeff();
  return n;
}

double autocorrelation_l1(const cvec& g, const SeparableLattice& lattice) {
  return coefficient_map(g, lattice, g).values.cwiseAbs().sum();
}

}  // namespace gabor
