#include <doctest.h>

#include "gabor/diagnostics.hpp"
#include "gabor/gallery.hpp"
#include "gabor/twisted.hpp"
#include "oracles.hpp"

using namespace gabor;

namespace {

double dist(const cmat& a, const cmat& b) { return (a - b).cwiseAbs().maxCoeff(); }

cvec delta0(index_t L) {
  cvec d = cvec::Zero(L);
  d[0] = 1.0;
  return d;
}

}  // namespace

TEST_CASE("frame bounds: orthonormal basis and full lattice") {
  const auto onb = frame_bounds(delta0(8), SeparableLattice(8, 1, 8));
  CHECK(onb.frame_lower == doctest::Approx(1.0));
  CHECK(onb.frame_upper == doctest::Approx(1.0));
  CHECK(onb.condition_number == doctest::Approx(1.0));
  CHECK(onb.is_frame);
  CHECK(onb.is_riesz);
  CHECK(onb.riesz_lower == doctest::Approx(1.0));

  std::mt19937_64 rng(41);
  const auto full = frame_bounds(oracle::random_unit(rng, 12), SeparableLattice(12, 1, 1));
  CHECK(full.frame_lower == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(full.frame_upper == doctest::Approx(12.0).epsilon(1e-12));
  CHECK_FALSE(full.is_riesz);  // 144 vectors in C^12
  CHECK(full.riesz_upper_sq == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(full.gramian_min_nonzero == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("frame bounds: critical Gaussian baseline against the brute-force fixture") {
  const auto fx = oracle::fixtures();
  const auto r = frame_bounds(periodized_gaussian(16).samples(), SeparableLattice(16, 4, 4));
  // The alternating sequence is an exact kernel element at L = 16, so this is not a frame.
  CHECK_FALSE(r.is_frame);
  CHECK(std::isinf(r.condition_number));
  CHECK(r.frame_lower < 1e-12);
  CHECK(std::abs(r.frame_upper - fx["gaussian_16_4_4"]["frame_upper"].get<double>()) < 1e-9);
  CHECK(r.frame_upper == doctest::Approx(1.66925368326694).epsilon(1e-12));

  const auto q = frame_bounds(periodized_gaussian(12).samples(), SeparableLattice(12, 3, 4));
  CHECK(q.is_frame);
  CHECK(std::abs(q.frame_lower - fx["gaussian_12_3_4"]["frame_lower"].get<double>()) < 1e-9);
  CHECK(std::abs(q.frame_upper - fx["gaussian_12_3_4"]["frame_upper"].get<double>()) < 1e-9);
}

TEST_CASE("frame inequality holds pointwise with the computed bounds") {
  std::mt19937_64 rng(42);
  for (const auto& lat : {SeparableLattice(12, 2, 3), SeparableLattice(16, 4, 2), SeparableLattice(18, 3, 3)}) {
    const cvec g = oracle::random_unit(rng, lat.length());
    const auto b = frame_bounds(g, lat);
    for (int t = 0; t < 20; ++t) {
      const cvec f = oracle::random_vector(rng, lat.length());
      const double energy = coefficient_map(g, lat, f).values.squaredNorm();
      const double f2 = f.squaredNorm();
      CHECK(energy >= b.frame_lower * f2 * (1 - 1e-12));
      CHECK(energy <= b.frame_upper * f2 * (1 + 1e-12));
    }
  }
}

TEST_CASE("condition harness: orthonormal basis is all true") {
  const auto v = check_all_conditions(delta0(8), SeparableLattice(8, 1, 8));
  CHECK(v.all_true());
  CHECK(v.consistent);
  CHECK_FALSE(v.marginal);
  CHECK_FALSE(v.kernel_witness.has_value());
}

TEST_CASE("condition harness: partition-of-unity case is all false with a kernel witness") {
  const auto g = make_window(WindowRecipe::parse("bspline:1:4"), FiniteModel(16)).samples();
  const auto pk = partition_of_unity_kernel(g, 4, 2, 2);
  const auto v = check_all_conditions(g, pk.lattice);
  CHECK(v.all_false());
  CHECK(v.consistent);
  REQUIRE(v.kernel_witness.has_value());
  const auto adj = adjoint_lattice(pk.lattice);
  CHECK((oracle::synthesis(g, adj) * v.kernel_witness->flat()).norm() < 1e-12);
  CHECK(v.kernel_witness_residual < 1e-12);
}

TEST_CASE("condition harness: 200 random pairs are consistent") {
  std::mt19937_64 rng(43);
  std::size_t marginal = 0;
  int n = 0;
  for (index_t L : {8, 12, 16, 24}) {
    const auto lattices = divisor_lattices(L);
    for (int t = 0; t < 50; ++t, ++n) {
      const auto& lat = lattices[static_cast<std::size_t>(rng() % lattices.size())];
      const auto v = check_all_conditions(oracle::random_unit(rng, L), lat);
      if (v.marginal) {
        ++marginal;
        continue;
      }
      CHECK(v.consistent);
    }
  }
  CHECK(n == 200);
  CHECK(marginal < 10);
}

TEST_CASE("condition harness: redundancy below one is never a frame") {
  std::mt19937_64 rng(44);
  const SeparableLattice lat(12, 4, 6);  // n = 6 < L
  const auto v = check_all_conditions(oracle::random_unit(rng, 12), lat);
  CHECK(v.all_false());
}

TEST_CASE("Wexler-Raz dual: forced cases pin the constant s") {
  const auto onb = wexler_raz_dual(delta0(8), SeparableLattice(8, 1, 8));
  CHECK(dist(onb.samples, delta0(8)) < 1e-15);
  CHECK(onb.wexler_raz_constant == doctest::Approx(1.0));
  CHECK(onb.biorthogonality_residual < 1e-15);

  std::mt19937_64 rng(45);
  const cvec g = oracle::random_unit(rng, 10);
  const auto full = wexler_raz_dual(g, SeparableLattice(10, 1, 1));
  CHECK(dist(full.samples, g / 10.0) < 1e-15);
  CHECK(full.wexler_raz_constant == doctest::Approx(0.1));
  CHECK(std::abs(oracle::inner(full.samples, g) - 0.1) < 1e-15);
}

TEST_CASE("Wexler-Raz dual: biorthogonality and reconstruction") {
  std::mt19937_64 rng(46);
  for (const auto& lat : {SeparableLattice(12, 2, 3), SeparableLattice(16, 2, 4), SeparableLattice(24, 4, 3)}) {
    const cvec g = oracle::random_unit(rng, lat.length());
    const auto dual = wexler_raz_dual(g, lat);
    const auto adj = adjoint_lattice(lat);
    for (const auto& mu : adj.points()) {
      const complex_t v = oracle::inner(dual.samples, oracle::shift(lat.length(), mu.x, mu.xi) * g);
      const double expected = (mu.x == 0 && mu.xi == 0) ? lat.covolume() : 0.0;
      CHECK(std::abs(v - expected) < 1e-10);
    }
    CHECK(dual.biorthogonality_residual < 1e-10);
    const cvec f = oracle::random_vector(rng, lat.length());
    CHECK((oracle::reconstruct(f, dual.samples, g, lat) - f).norm() < 1e-10 * f.norm());
    // gamma = S^{-1} g
    CHECK((oracle::frame_operator(g, lat) * dual.samples - g).norm() < 1e-12);
  }
}

TEST_CASE("Wexler-Raz dual: ill-conditioned frame still biorthogonal") {
  // Gaussian translates, cond(S) ~ 2e10
  const SeparableLattice lat(16, 1, 16);
  const cvec g = periodized_gaussian(16).samples();
  const auto dual = wexler_raz_dual(g, lat);
  CHECK(dual.frame_upper / dual.frame_lower > 1e9);
  CHECK(dual.biorthogonality_residual < 1e-10);
}

TEST_CASE("Wexler-Raz dual rejects non-frames") {
  try {
    wexler_raz_dual(periodized_gaussian(16).samples(), SeparableLattice(16, 4, 4));
    FAIL("expected NotAFrameError");
  } catch (const NotAFrameError& e) {
    CHECK(e.sigma_min() <= 1e-12);
  }
}

TEST_CASE("cross Gramian") {
  const SeparableLattice adj(8, 1, 8);
  CHECK(dist(cross_gramian(delta0(8), delta0(8), adj), cmat::Identity(8, 8)) < 1e-15);

  std::mt19937_64 rng(47);
  const SeparableLattice lat(12, 2, 3);
  const cvec g = oracle::random_unit(rng, 12);
  const auto dual = wexler_raz_dual(g, lat);
  const auto lat_adj = adjoint_lattice(lat);
  const cvec phi = dual.samples / dual.wexler_raz_constant;
  const cmat Phi = cross_gramian(phi, g, lat_adj);
  CHECK(dist(Phi, cmat::Identity(Phi.rows(), Phi.cols())) < 1e-10);

  // Phi entries against direct inner products
  const cvec psi = oracle::random_unit(rng, 12);
  const cmat P = cross_gramian(psi, g, lat_adj);
  const auto pts = lat_adj.points();
  for (std::size_t m = 0; m < pts.size(); ++m)
    for (std::size_t n = 0; n < pts.size(); ++n) {
      const complex_t direct = oracle::inner(oracle::shift(12, pts[n].x, pts[n].xi) * psi,
                                             oracle::shift(12, pts[m].x, pts[m].xi) * g);
      CHECK(std::abs(P(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) - direct) < 1e-13);
    }
  // row-sum norm of Phi - I equals the Wexler-Raz defect
  const double defect = wexler_raz_defect(psi, g, lat_adj);
  CHECK(std::abs(max_row_sum_norm(P - cmat::Identity(P.rows(), P.cols())) - defect) < 1e-12);
}

TEST_CASE("Neumann route: a near-dual forces condition (x)") {
  std::mt19937_64 rng(48);
  const SeparableLattice lat(12, 2, 2);
  const cvec g = oracle::random_unit(rng, 12);
  const auto dual = wexler_raz_dual(g, lat);
  const cvec phi = dual.samples / dual.wexler_raz_constant + 1e-3 * oracle::random_unit(rng, 12);
  const auto adj = adjoint_lattice(lat);
  const cmat Phi = cross_gramian(phi, g, adj);
  REQUIRE(max_row_sum_norm(Phi - cmat::Identity(Phi.rows(), Phi.cols())) < 1.0);
  const auto v = check_all_conditions(g, lat);
  CHECK(v.holds[9]);  // (x)
}

TEST_CASE("duality check") {
  const auto onb = duality_check(delta0(8), SeparableLattice(8, 1, 8));
  CHECK(onb.frame);
  CHECK(onb.adjoint_riesz);
  CHECK(onb.agree);

  const auto g = make_window(WindowRecipe::parse("bspline:1:4"), FiniteModel(16)).samples();
  const auto pk = partition_of_unity_kernel(g, 4, 2, 2);
  const auto d = duality_check(g, pk.lattice);
  CHECK_FALSE(d.frame);
  CHECK_FALSE(d.adjoint_riesz);
  CHECK(d.agree);

  const auto gauss = periodized_gaussian(24).samples();
  for (const auto& lat : divisor_lattices(24)) {
    const auto r = duality_check(gauss, lat);
    if (!r.marginal) CHECK(r.agree);
  }
}

TEST_CASE("Gaussian at redundancy >= 2 is always a frame") {
  for (index_t L : {8, 12, 16, 24, 36}) {
    const auto g = periodized_gaussian(L).samples();
    for (const auto& lat : divisor_lattices(L)) {
      if (2 * lat.a() * lat.b() > L) continue;
      CHECK(frame_bounds(g, lat).is_frame);
    }
  }
}

TEST_CASE("modulation norm proxies") {
  std::mt19937_64 rng(49);
  for (index_t L : {4, 8, 12, 16}) {
    const cvec f = oracle::random_vector(rng, L);
    // brute-force STFT
    const cvec phi = periodized_gaussian(L).samples();
    double l2 = 0.0;
    for (index_t x = 0; x < L; ++x)
      for (index_t xi = 0; xi < L; ++xi) l2 += std::norm(oracle::inner(f, oracle::shift(L, x, xi) * phi));
    CHECK(std::abs(modulation_norm_proxy(f, 2.0) - std::sqrt(l2)) < 1e-12);
    CHECK(std::abs(modulation_norm_proxy(f, 2.0) - std::sqrt(static_cast<double>(L)) * f.norm()) < 1e-10);
    const double p1 = modulation_norm_proxy(f, ModulationOrder::one);
    const double p2 = modulation_norm_proxy(f, ModulationOrder::two);
    const double pinf = modulation_norm_proxy(f, ModulationOrder::infinity);
    CHECK(pinf <= p2);
    CHECK(p2 <= p1);
    CHECK(modulation_norm_proxy(f, std::numeric_limits<double>::infinity()) == pinf);
  }
  const cvec phi = periodized_gaussian(12).samples();
  CHECK(modulation_norm_proxy(phi, ModulationOrder::infinity) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(modulation_norm_proxy(phi, 3.0), ParameterError);
}
