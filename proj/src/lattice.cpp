#include "gabor/lattice.hpp"

#include <numbers>
#include <string>

namespace gabor {

FiniteModel::FiniteModel(index_t length) : length_(length) {
  if (length < 2) throw ParameterError("L", "signal length must be at least 2, got " + std::to_string(length));
}

complex_t FiniteModel::root(index_t r) const {
  const index_t m = mod(r, length_);
  if (m == 0) return {1.0, 0.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(length_);
  return std::polar(1.0, angle);
}

SeparableLattice::SeparableLattice(index_t length, index_t a, index_t b)
    : length_(length), a_(a), b_(b) {
  (void)FiniteModel(length);
  if (a <= 0 || length % a != 0)
    throw ParameterError("a", "time step " + std::to_string(a) + " does not divide L=" + std::to_string(length));
  if (b <= 0 || length % b != 0)
    throw ParameterError("b", "frequency step " + std::to_string(b) + " does not divide L=" + std::to_string(length));
}

bool SeparableLattice::contains(const PhasePoint& z) const {
  return mod(z.x, length_) % a_ == 0 && mod(z.xi, length_) % b_ == 0;
}

std::vector<PhasePoint> SeparableLattice::points() const {
  std::vector<PhasePoint> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (index_t k = 0; k < time_count(); ++k)
    for (index_t l = 0; l < freq_count(); ++l) out.push_back(point(k, l));
  return out;
}

cvec tf_shift(const FiniteModel& model, const PhasePoint& z, const cvec& f) {
  const index_t L = model.length();
  if (f.size() != L)
    throw ShapeError("tf_shift: signal has length " + std::to_string(f.size()) + ", expected " + std::to_string(L));
  const index_t x = mod(z.x, L);
  const index_t xi = mod(z.xi, L);
  cvec out(L);
  for (index_t t = 0; t < L; ++t) {
    const complex_t v = f[mod(t - x, L)];
    out[t] = xi == 0 ? v : model.root(xi * t) * v;
  }
  return out;
}

cmat shift_matrix(const FiniteModel& model, const PhasePoint& z) {
  const index_t L = model.length();
  cmat m = cmat::Zero(L, L);
  for (index_t t = 0; t < L; ++t) m(t, mod(t - z.x, L)) = model.root(mod(z.xi, L) * t);
  return m;
}

Composition compose_shifts(const FiniteModel& model, const PhasePoint& lam, const PhasePoint& mu) {
  const index_t L = model.length();
  const index_t cocycle = mod(lam.x, L) * mod(mu.xi, L);
  return {model.root(-cocycle), {mod(lam.x + mu.x, L), mod(lam.xi + mu.xi, L)}};
}

SeparableLattice adjoint_lattice(const SeparableLattice& lattice) {
  const index_t L = lattice.length();
  return {L, L / lattice.b(), L / lattice.a()};
}

std::vector<index_t> divisors(index_t n) {
  std::vector<index_t> out;
  for (index_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

std::vector<SeparableLattice> divisor_lattices(index_t length) {
  std::vector<SeparableLattice> out;
  const auto ds = divisors(length);
  for (index_t a : ds)
    for (index_t b : ds) out.emplace_back(length, a, b);
  return out;
}

}  // namespace gabor
