#pragma once

// Finite time-frequency plane Z_L x Z_L: time-frequency shifts, separable
// lattices and their adjoints.
//
// Convention: pi(x, xi) = M_xi T_x, i.e.
//   (pi(x, xi) f)(t) = exp(2 pi i xi t / L) f(t - x).
// Composition:
//   pi(lam) pi(mu) = exp(-2 pi i lam.x mu.xi / L) pi(lam + mu).

#include <cstdint>
#include <vector>

#include "gabor/types.hpp"

namespace gabor {

using index_t = std::int64_t;

/// Residue r mod n in [0, n).
constexpr index_t mod(index_t r, index_t n) {
  const index_t m = r % n;
  return m < 0 ? m + n : m;
}

/// Signals are complex vectors of length L over Z_L.
class FiniteModel {
public:
  explicit FiniteModel(index_t length);

  index_t length() const noexcept { return length_; }

  /// exp(2 pi i r / L), r reduced mod L first.
  complex_t root(index_t r) const;

  bool operator==(const FiniteModel&) const = default;

private:
  index_t length_;
};

struct PhasePoint {
  index_t x = 0;   // time shift
  index_t xi = 0;  // frequency shift

  bool operator==(const PhasePoint&) const = default;
};

/// aZ_L x bZ_L with a | L and b | L. Points are addressed by their grid
/// index (k, l) with lambda = (k a, l b), 0 <= k < L/a, 0 <= l < L/b, and
/// flattened row-major: i = k * (L/b) + l.
class SeparableLattice {
public:
  SeparableLattice(index_t length, index_t a, index_t b);

  index_t length() const noexcept { return length_; }
  FiniteModel model() const { return FiniteModel(length_); }
  index_t a() const noexcept { return a_; }
  index_t b() const noexcept { return b_; }

  index_t time_count() const noexcept { return length_ / a_; }
  index_t freq_count() const noexcept { return length_ / b_; }
  index_t size() const noexcept { return time_count() * freq_count(); }

  /// s = ab / L. Normalizes the Janssen coefficients.
  double covolume() const noexcept {
    return static_cast<double>(a_) * static_cast<double>(b_) / static_cast<double>(length_);
  }
  double redundancy() const noexcept { return 1.0 / covolume(); }

  PhasePoint point(index_t k, index_t l) const { return {k * a_, l * b_}; }
  PhasePoint point(index_t flat) const {
    return point(flat / freq_count(), flat % freq_count());
  }
  index_t flat_index(index_t k, index_t l) const {
    return mod(k, time_count()) * freq_count() + mod(l, freq_count());
  }

  bool contains(const PhasePoint& z) const;
  std::vector<PhasePoint> points() const;

  /// True when all shifts of the lattice commute with each other.
  bool is_commutative() const noexcept { return (a_ * b_) % length_ == 0; }

  bool operator==(const SeparableLattice&) const = default;

private:
  index_t length_;
  index_t a_;
  index_t b_;
};

/// (pi(z) f)(t) = exp(2 pi i xi t / L) f(t - x).
cvec tf_shift(const FiniteModel& model, const PhasePoint& z, const cvec& f);

/// Dense L x L matrix of pi(z).
cmat shift_matrix(const FiniteModel& model, const PhasePoint& z);

struct Composition {
  complex_t phase;
  PhasePoint sum;
};

/// pi(lam) pi(mu) = phase * pi(sum), exactly.
Composition compose_shifts(const FiniteModel& model, const PhasePoint& lam, const PhasePoint& mu);

/// Lattice of all points whose shifts commute with every shift of `lattice`:
/// (L/b)Z_L x (L/a)Z_L.
SeparableLattice adjoint_lattice(const SeparableLattice& lattice);

/// All (a, b) with a | L and b | L, ordered by a then b.
std::vector<SeparableLattice> divisor_lattices(index_t length);

std::vector<index_t> divisors(index_t n);

}  // namespace gabor
