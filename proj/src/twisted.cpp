#include "gabor/twisted.hpp"

#include <numbers>
#include <string>

namespace gabor {
namespace {

void require_same_lattice(const TwistedSequence& a, const TwistedSequence& b) {
  if (!(a.lattice == b.lattice))
    throw ShapeError("twisted sequences live on different lattices");
}

// exp(2 pi i r / L) for r = 0..L-1.
std::vector<complex_t> root_table(const FiniteModel& model) {
  std::vector<complex_t> roots(static_cast<std::size_t>(model.length()));
  for (index_t r = 0; r < model.length(); ++r) roots[static_cast<std::size_t>(r)] = model.root(r);
  return roots;
}

}  // namespace

TwistedSequence twisted_convolve(const TwistedSequence& a, const TwistedSequence& b) {
  require_same_lattice(a, b);
  const auto& lat = a.lattice;
  const index_t L = lat.length();
  const index_t n1 = lat.time_count();
  const index_t n2 = lat.freq_count();
  const auto roots = root_table(lat.model());

  auto out = TwistedSequence::zeros(lat);
  for (index_t k1 = 0; k1 < n1; ++k1) {
    for (index_t l1 = 0; l1 < n2; ++l1) {
      const complex_t av = a.values(k1, l1);
      if (av == complex_t{}) continue;
      for (index_t k2 = 0; k2 < n1; ++k2) {
        const index_t kk = (k1 + k2) % n1;
        for (index_t l2 = 0; l2 < n2; ++l2) {
          const complex_t bv = b.values(k2, l2);
          if (bv == complex_t{}) continue;
          // pi(lam) pi(mu) = exp(-2 pi i lam.x mu.xi / L) pi(lam + mu)
          const index_t cocycle = mod(-(k1 * lat.a()) * (l2 * lat.b()), L);
          out.values(kk, (l1 + l2) % n2) += av * bv * roots[static_cast<std::size_t>(cocycle)];
        }
      }
    }
  }
  return out;
}

cmat represent(const TwistedSequence& c) {
  const auto& lat = c.lattice;
  const index_t L = lat.length();
  const auto roots = root_table(lat.model());
  cmat m = cmat::Zero(L, L);
  for (index_t k = 0; k < lat.time_count(); ++k) {
    const index_t x = k * lat.a();
    for (index_t l = 0; l < lat.freq_count(); ++l) {
      const complex_t w = c.values(k, l);
      if (w == complex_t{}) continue;
      const index_t xi = l * lat.b();
      for (index_t t = 0; t < L; ++t)
        m(t, mod(t - x, L)) += w * roots[static_cast<std::size_t>((xi * t) % L)];
    }
  }
  return m;
}

TwistedSequence algebra_adjoint(const TwistedSequence& a) {
  const auto& lat = a.lattice;
  const auto model = lat.model();
  auto out = TwistedSequence::zeros(lat);
  for (index_t k = 0; k < lat.time_count(); ++k) {
    for (index_t l = 0; l < lat.freq_count(); ++l) {
      const PhasePoint mu = lat.point(k, l);
      const complex_t src = a.values(mod(-k, lat.time_count()), mod(-l, lat.freq_count()));
      out.values(k, l) = std::conj(src) * model.root(-(mu.x * mu.xi));
    }
  }
  return out;
}

cmat right_multiplication_matrix(const TwistedSequence& a) {
  const auto& lat = a.lattice;
  const index_t L = lat.length();
  const index_t n1 = lat.time_count();
  const index_t n2 = lat.freq_count();
  const auto roots = root_table(lat.model());
  cmat r = cmat::Zero(lat.size(), lat.size());
  // column mu: (delta_mu # a)(mu + lam) = a_lam exp(-2 pi i mu.x lam.xi / L)
  for (index_t k = 0; k < n1; ++k) {
    for (index_t l = 0; l < n2; ++l) {
      const index_t col = k * n2 + l;
      for (index_t k2 = 0; k2 < n1; ++k2) {
        for (index_t l2 = 0; l2 < n2; ++l2) {
          const index_t cocycle = mod(-(k * lat.a()) * (l2 * lat.b()), L);
          const index_t row = ((k + k2) % n1) * n2 + (l + l2) % n2;
          r(row, col) += a.values(k2, l2) * roots[static_cast<std::size_t>(cocycle)];
        }
      }
    }
  }
  return r;
}

TwistedSequence janssen_coefficients(const cvec& g, const SeparableLattice& lattice) {
  const auto adj = adjoint_lattice(lattice);
  auto a = coefficient_map(g, adj, g);
  a.values /= lattice.covolume();
  return a;
}

TwistedSequence twisted_invert(const TwistedSequence& a, double tol_scale) {
  const auto& lat = a.lattice;
  const cmat r = right_multiplication_matrix(a);
  Eigen::JacobiSVD<cmat> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double hi = sv(0);
  const double lo = sv(sv.size() - 1);
  const RankTolerance tol(std::max(lat.size(), lat.length()), tol_scale);
  if (!tol.nonsingular(lo, hi))
    throw SingularAlgebraError("twisted_invert: right multiplication is singular", lo, hi);
  const cvec b = svd.solve(TwistedSequence::delta(lat).flat());
  return TwistedSequence::from_flat(lat, b);
}

std::vector<TwistedSequence> kernel_basis(const cvec& g, const SeparableLattice& lattice, double tol_scale) {
  const cmat d = synthesis_matrix(g, lattice);
  Eigen::JacobiSVD<cmat> svd(d, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const auto tol = RankTolerance::for_lattice(lattice, tol_scale);
  const double hi = sv.size() > 0 ? sv(0) * sv(0) : 0.0;

  std::vector<TwistedSequence> basis;
  const index_t n = lattice.size();
  for (index_t j = 0; j < n; ++j) {
    const bool null = j >= sv.size() || !tol.nonsingular(sv(j) * sv(j), hi);
    if (null) basis.push_back(TwistedSequence::from_flat(lattice, svd.matrixV().col(j)));
  }
  return basis;
}

TwistedSequence character(const SeparableLattice& lattice, index_t p, index_t q) {
  const index_t n1 = lattice.time_count();
  const index_t n2 = lattice.freq_count();
  auto phase = [](index_t r, index_t n) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(mod(r, n)) / static_cast<double>(n));
  };
  auto e = TwistedSequence::zeros(lattice);
  for (index_t k = 0; k < n1; ++k)
    for (index_t l = 0; l < n2; ++l) e.values(k, l) = phase(p * k, n1) * phase(q * l, n2);
  return e;
}

index_t index_commutative(const cvec& g, const SeparableLattice& lattice, double tol_scale) {
  if (!lattice.is_commutative())
    throw NonCommutativeLatticeError("index_commutative: shifts of lattice (a=" + std::to_string(lattice.a()) +
                                     ", b=" + std::to_string(lattice.b()) + ") do not commute");
  const auto tol = RankTolerance::for_lattice(lattice, tol_scale);
  const cmat d = synthesis_matrix(g, lattice);
  const double top = Eigen::BDCSVD<cmat>(d).singularValues()(0);
  const double hi = top * top;

  index_t count = 0;
  for (index_t p = 0; p < lattice.time_count(); ++p) {
    for (index_t q = 0; q < lattice.freq_count(); ++q) {
      const auto e = character(lattice, p, q);
      const double energy = synthesis_map(g, e).squaredNorm() / e.values.squaredNorm();
      if (!tol.nonsingular(energy, hi)) ++count;
    }
  }
  return count;
}

double l1_norm(const TwistedSequence& a) { return a.values.cwiseAbs().sum(); }
double l2_norm(const TwistedSequence& a) { return a.values.norm(); }

}  // namespace gabor
