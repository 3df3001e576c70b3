#include <doctest.h>

#include "gabor/diagnostics.hpp"
#include "gabor/gallery.hpp"
#include "gabor/twisted.hpp"
#include "oracles.hpp"

using namespace gabor;

namespace {

double dist(const cmat& a, const cmat& b) { return (a - b).cwiseAbs().maxCoeff(); }

// (a # b)(nu) from the operator identity: expand pi(a) pi(b) in the shift
// basis using trace(pi(z)^H X) / L. Slow, independent of the phase formula.
LatticeSequence product_via_trace(const LatticeSequence& a, const LatticeSequence& b) {
  const auto& lat = a.lattice;
  const cmat P = oracle::represent(a) * oracle::represent(b);
  auto out = LatticeSequence::zeros(lat);
  for (index_t k = 0; k < lat.time_count(); ++k)
    for (index_t l = 0; l < lat.freq_count(); ++l)
      out.values(k, l) = (oracle::shift(lat.length(), k * lat.a(), l * lat.b()).adjoint() * P).trace() /
                         static_cast<double>(lat.length());
  return out;
}

}  // namespace

TEST_CASE("unit of the algebra") {
  std::mt19937_64 rng(31);
  const SeparableLattice lat(12, 2, 3);
  const auto a = oracle::random_sequence(rng, lat);
  const auto d = LatticeSequence::delta(lat);
  CHECK(dist(twisted_convolve(a, d).values, a.values) < 1e-14);
  CHECK(dist(twisted_convolve(d, a).values, a.values) < 1e-14);
  CHECK(dist(represent(d), cmat::Identity(12, 12)) == 0.0);
}

TEST_CASE("point masses multiply with the composition phase") {
  const SeparableLattice lat(8, 2, 2);
  const auto m = lat.model();
  for (index_t k1 = 0; k1 < 4; ++k1)
    for (index_t l1 = 0; l1 < 4; ++l1)
      for (index_t k2 = 0; k2 < 4; ++k2)
        for (index_t l2 = 0; l2 < 4; ++l2) {
          const auto p = twisted_convolve(LatticeSequence::point_mass(lat, k1, l1),
                                          LatticeSequence::point_mass(lat, k2, l2));
          const auto c = compose_shifts(m, lat.point(k1, l1), lat.point(k2, l2));
          auto expected = LatticeSequence::zeros(lat);
          expected.values(c.sum.x / 2, c.sum.xi / 2) = c.phase;
          CHECK(dist(p.values, expected.values) < 1e-14);
        }
}

TEST_CASE("homomorphism: dense product oracle at L=8 a=b=2 and beyond") {
  std::mt19937_64 rng(32);
  for (const auto& lat : {SeparableLattice(8, 2, 2), SeparableLattice(12, 3, 2), SeparableLattice(9, 3, 1),
                          SeparableLattice(6, 1, 1)}) {
    for (int t = 0; t < 10; ++t) {
      const auto a = oracle::random_sequence(rng, lat);
      const auto b = oracle::random_sequence(rng, lat);
      const auto ab = twisted_convolve(a, b);
      CHECK(dist(represent(ab), oracle::represent(a) * oracle::represent(b)) < 1e-12);
      CHECK(dist(ab.values, product_via_trace(a, b).values) < 1e-12);
    }
  }
}

TEST_CASE("homomorphism on larger lattices (up to L = 64)") {
  std::mt19937_64 rng(33);
  for (const auto& lat : {SeparableLattice(32, 4, 8), SeparableLattice(64, 8, 16), SeparableLattice(48, 6, 4)}) {
    const auto a = oracle::random_sequence(rng, lat);
    const auto b = oracle::random_sequence(rng, lat);
    const cmat lhs = represent(twisted_convolve(a, b));
    const cmat rhs = represent(a) * represent(b);
    CHECK((lhs - rhs).norm() <= 1e-12 * represent(a).norm() * represent(b).norm());
  }
}

TEST_CASE("associativity") {
  std::mt19937_64 rng(34);
  const SeparableLattice lat(12, 2, 2);
  const auto a = oracle::random_sequence(rng, lat);
  const auto b = oracle::random_sequence(rng, lat);
  const auto c = oracle::random_sequence(rng, lat);
  CHECK(dist(twisted_convolve(twisted_convolve(a, b), c).values, twisted_convolve(a, twisted_convolve(b, c)).values) <
        1e-11);
}

TEST_CASE("represent examples") {
  const SeparableLattice lat(6, 2, 3);
  const auto c = LatticeSequence::point_mass(lat, 1, 1, complex_t(2.0, -1.0));
  CHECK(dist(represent(c), complex_t(2.0, -1.0) * oracle::shift(6, 2, 3)) < 1e-15);
}

TEST_CASE("represent is injective on the full lattice: Gram of vectorized shifts is L I") {
  const index_t L = 5;
  const SeparableLattice full(L, 1, 1);
  cmat V(L * L, L * L);
  for (index_t i = 0; i < full.size(); ++i) {
    const cmat P = represent(LatticeSequence::point_mass(full, i / L, i % L));
    V.col(i) = Eigen::Map<const cvec>(P.data(), L * L);
  }
  CHECK(dist(V.adjoint() * V, L * cmat::Identity(L * L, L * L)) < 1e-12);
}

TEST_CASE("algebra adjoint realizes the operator adjoint and is an involution") {
  std::mt19937_64 rng(35);
  for (const auto& lat : {SeparableLattice(8, 2, 2), SeparableLattice(12, 3, 4), SeparableLattice(10, 1, 2)}) {
    const auto a = oracle::random_sequence(rng, lat);
    const auto s = algebra_adjoint(a);
    CHECK(dist(represent(s), represent(a).adjoint()) < 1e-12);
    CHECK(dist(algebra_adjoint(s).values, a.values) < 1e-14);
  }
}

TEST_CASE("Young bound ||a # b||_2 <= ||a||_2 ||b||_1") {
  std::mt19937_64 rng(36);
  const SeparableLattice lat(12, 2, 3);
  for (int t = 0; t < 20; ++t) {
    const auto a = oracle::random_sequence(rng, lat);
    const auto b = oracle::random_sequence(rng, lat);
    CHECK(l2_norm(twisted_convolve(a, b)) <= l2_norm(a) * l1_norm(b) * (1 + 1e-12));
  }
}

TEST_CASE("right multiplication matrix") {
  std::mt19937_64 rng(37);
  const SeparableLattice lat(8, 2, 4);
  const auto a = oracle::random_sequence(rng, lat);
  const auto c = oracle::random_sequence(rng, lat);
  CHECK(dist(right_multiplication_matrix(a) * c.flat(), twisted_convolve(c, a).flat()) < 1e-13);
}

TEST_CASE("lattice mismatch is a shape error") {
  const auto a = LatticeSequence::delta(SeparableLattice(8, 2, 2));
  const auto b = LatticeSequence::delta(SeparableLattice(8, 2, 4));
  CHECK_THROWS_AS(twisted_convolve(a, b), ShapeError);
}

TEST_CASE("Janssen coefficients") {
  std::mt19937_64 rng(38);
  // full lattice: trivial adjoint with a single coefficient L
  const cvec g = oracle::random_unit(rng, 8);
  const auto a = janssen_coefficients(g, SeparableLattice(8, 1, 1));
  CHECK(a.lattice.size() == 1);
  CHECK(std::abs(a.at(0, 0) - 8.0) < 1e-13);

  // orthonormal translates: a = delta
  cvec d = cvec::Zero(8);
  d[0] = 1.0;
  const auto ad = janssen_coefficients(d, SeparableLattice(8, 1, 8));
  CHECK(dist(ad.values, LatticeSequence::delta(ad.lattice).values) < 1e-15);
  CHECK(dist(represent(ad), cmat::Identity(8, 8)) < 1e-15);

  const SeparableLattice lat(12, 3, 4);
  const cvec h = oracle::random_unit(rng, 12);
  const cmat S = oracle::frame_operator(h, lat);
  CHECK((S - represent(janssen_coefficients(h, lat))).norm() / S.norm() < 1e-12);
}

TEST_CASE("twisted inverse") {
  const SeparableLattice lat(8, 2, 2);
  const auto d = LatticeSequence::delta(lat);
  CHECK(dist(twisted_invert(d).values, d.values) < 1e-14);

  cvec delta = cvec::Zero(8);
  delta[0] = 1.0;
  const SeparableLattice onb(8, 1, 8);
  auto gram = LatticeSequence::zeros(onb);
  gram.values = coefficient_map(delta, onb, delta).values;
  CHECK(dist(twisted_invert(gram).values, LatticeSequence::delta(onb).values) < 1e-14);

  // inverse frame operator as a shift series
  const SeparableLattice frame(12, 2, 3);
  const cvec g = periodized_gaussian(12).samples();
  const auto a = janssen_coefficients(g, frame);
  const auto b = twisted_invert(a);
  const auto unit = LatticeSequence::delta(a.lattice);
  CHECK(dist(twisted_convolve(a, b).values, unit.values) < 1e-10);
  CHECK(dist(twisted_convolve(b, a).values, unit.values) < 1e-10);
  const cmat S = oracle::frame_operator(g, frame);
  CHECK(dist(oracle::represent(b), S.inverse()) < 1e-10);
}

TEST_CASE("twisted inverse reports singular elements") {
  const SeparableLattice lat(16, 4, 4);
  const auto a = janssen_coefficients(periodized_gaussian(16).samples(), lat);
  try {
    twisted_invert(a);
    FAIL("expected SingularAlgebraError");
  } catch (const SingularAlgebraError& e) {
    CHECK(e.sigma_min() < 1e-10 * e.sigma_max());
  }
}

TEST_CASE("kernel basis: frame case is empty") {
  const auto g = periodized_gaussian(16).samples();
  const SeparableLattice lat(16, 2, 2);
  const auto adj = adjoint_lattice(lat);
  CHECK(adj.a() == 8);
  CHECK(adj.b() == 8);
  CHECK(kernel_basis(g, adj).empty());
  CHECK(index_commutative(g, adj) == 0);
}

TEST_CASE("kernel basis contains the partition-of-unity sequence and is orthonormal") {
  const auto g = make_window(WindowRecipe::parse("bspline:1:4"), FiniteModel(16)).samples();
  const auto pk = partition_of_unity_kernel(g, 4, 2, 2);
  const auto adj = adjoint_lattice(pk.lattice);
  const auto basis = kernel_basis(g, adj);
  REQUIRE_FALSE(basis.empty());
  cmat K(adj.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) K.col(static_cast<Eigen::Index>(j)) = basis[j].flat();
  CHECK(dist(K.adjoint() * K, cmat::Identity(K.cols(), K.cols())) < 1e-12);
  CHECK((oracle::synthesis(g, adj) * K).norm() < 1e-12);
  const cvec c = pk.sequence.flat();
  CHECK((c - K * (K.adjoint() * c)).norm() < 1e-12 * c.norm());
}

TEST_CASE("kernel is a left module; right closure needs a commutative adjoint lattice") {
  std::mt19937_64 rng(39);
  // Gaussian at critical density L = 16: the kernel is nontrivial and the
  // lattice (4, 4) is commutative, so both sides work.
  const auto g = periodized_gaussian(16).samples();
  const SeparableLattice crit(16, 4, 4);
  const auto basis = kernel_basis(g, crit);
  REQUIRE_FALSE(basis.empty());
  const auto e = basis.front();
  const cmat D = oracle::synthesis(g, crit);
  for (int t = 0; t < 5; ++t) {
    const auto h = oracle::random_sequence(rng, crit);
    CHECK((D * twisted_convolve(h, e).flat()).norm() < 1e-12 * h.values.norm());
    CHECK((D * twisted_convolve(e, h).flat()).norm() < 1e-12 * h.values.norm());
  }

  // noncommutative: Lambda adjoint = (2, 2) on L = 8 with a random rank-deficient window setup
  const SeparableLattice nc(8, 2, 2);
  REQUIRE_FALSE(nc.is_commutative());
  const cvec w = oracle::random_unit(rng, 8);
  const auto kb = kernel_basis(w, nc);  // n = 16 > L = 8, so the kernel has dimension 8
  CHECK(kb.size() == 8);
  const cmat Dn = oracle::synthesis(w, nc);
  double left = 0.0, right = 0.0;
  for (int t = 0; t < 5; ++t) {
    const auto h = oracle::random_sequence(rng, nc);
    left = std::max(left, (Dn * twisted_convolve(h, kb.front()).flat()).norm());
    right = std::max(right, (Dn * twisted_convolve(kb.front(), h).flat()).norm());
  }
  CHECK(left < 1e-12);
  CHECK(right > 1e-3);
}

TEST_CASE("index in the commutative case") {
  const auto g = make_window(WindowRecipe::parse("bspline:1:4"), FiniteModel(16)).samples();
  const auto pk = partition_of_unity_kernel(g, 4, 2, 2);
  const auto adj = adjoint_lattice(pk.lattice);
  const index_t idx = index_commutative(g, adj);
  CHECK(idx >= 1);
  CHECK(idx == static_cast<index_t>(kernel_basis(g, adj).size()));
  // the alternating character (p = n1 / 2) is one of them
  const auto alt = character(adj, adj.time_count() / 2, 0);
  CHECK((oracle::synthesis(g, adj) * alt.flat()).norm() < 1e-12);

  CHECK_THROWS_AS(index_commutative(g, SeparableLattice(16, 2, 2)), NonCommutativeLatticeError);
}
