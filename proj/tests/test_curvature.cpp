// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "kaf/kaf.hpp"

using namespace kaf;

TEST_CASE("flat and affine graphs have vanishing curvature data") {
  const GraphSurface p = make_sheared_plane(16, 16, 1.0);
  const SecondFundamentalForm S = second_fundamental_form(p, 8, 8);
  REQUIRE(std::abs(S.h311) < 1e-12);
  REQUIRE(std::abs(S.h312) < 1e-12);
  REQUIRE(std::abs(S.h322) < 1e-12);
  REQUIRE(std::abs(S.h411) < 1e-12);
  REQUIRE(std::abs(S.h412) < 1e-12);
  REQUIRE(std::abs(S.h422) < 1e-12);
  REQUIRE(norm(mean_curvature_vec(p, 8, 8)) < 1e-12);
  const VVector V = v_vector(S);
  REQUIRE(std::abs(V.V3) < 1e-12);
  REQUIRE(std::abs(V.V4) < 1e-12);
  REQUIRE(std::abs(gauss_curvature_intrinsic(p, 8, 8)) < 1e-10);
}

TEST_CASE("mean curvature traces match the ambient vector") {
  // H3, H4 are the frame components of the ambient mean curvature vector, so
  // |H_vec|^2 = H3^2 + H4^2 and the projections agree component-wise.
  const GraphSurface s = make_reference_torus(32);
  for (int i = 0; i < 32; i += 3)
    for (int j = 0; j < 32; j += 5) {
      const SecondFundamentalForm S = second_fundamental_form(s, i, j);
      const Vec4 H = mean_curvature_vec(s, i, j);
      REQUIRE(S.H3 == Catch::Approx(dot(H, S.frame.v3)).margin(1e-11));
      REQUIRE(S.H4 == Catch::Approx(dot(H, S.frame.v4)).margin(1e-11));
      REQUIRE(dot(H, H) ==
              Catch::Approx(S.H3 * S.H3 + S.H4 * S.H4).margin(1e-10));
      // H is normal: tangential projection annihilates it.
      REQUIRE(norm(tangential_part(H, first_jet(s, i, j))) < 1e-11);
    }
}

TEST_CASE("V agrees with the finite-difference angle route at second order") {
  auto max_diff = [](int n) {
    const GraphSurface s = make_reference_torus(n);
    double m = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const VVector a = v_vector(second_fundamental_form(s, i, j));
        const VVector b = v_vector_fd(s, i, j);
        m = std::max({m, std::abs(a.V3 - b.V3), std::abs(a.V4 - b.V4)});
      }
    return m;
  };
  const double d32 = max_diff(32), d64 = max_diff(64);
  REQUIRE(d32 < 6e-3);
  REQUIRE(d32 / d64 > 3.4);
  REQUIRE(d32 / d64 < 4.6);
}

TEST_CASE("intrinsic and extrinsic Gauss curvature agree at second order") {
  auto max_diff = [](int n) {
    const GraphSurface s = make_reference_torus(n);
    double m = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const GaussCurvatures g = gauss_curvatures(s, i, j);
        m = std::max(m, std::abs(g.K_intrinsic - g.R1212_extrinsic));
      }
    return m;
  };
  const double d32 = max_diff(32), d64 = max_diff(64);
  REQUIRE(d32 / d64 > 3.4);
  REQUIRE(d32 / d64 < 4.6);
}

TEST_CASE("total intrinsic curvature of torus graphs vanishes") {
  REQUIRE(std::abs(total_gauss_curvature(make_flat_torus(16, 16))) < 1e-13);
  REQUIRE(std::abs(total_gauss_curvature(make_perturbed_torus(64, 64, 0.05))) < 1e-6);
  REQUIRE(std::abs(total_gauss_curvature(make_reference_torus(64))) < 1e-4);
}

TEST_CASE("complex form of the second fundamental form") {
  SecondFundamentalForm S{};
  S.h311 = 1.5;
  S.h312 = -0.25;
  S.h322 = 2.5;
  S.h411 = 3.0;
  S.h412 = 0.75;
  S.h422 = 5.0;
  S.H3 = S.h311 + S.h322;
  S.H4 = S.h411 + S.h422;
  const ComplexSff C = complex_sff(S);
  REQUIRE(C.b_c.real() == Catch::Approx(1.0).margin(1e-15));  // (H3)/4
  REQUIRE(C.b_c.imag() == Catch::Approx(2.0).margin(1e-15));  // (H4)/4
  const SffComponents R = reassemble_sff(C);
  REQUIRE(R.h311 == Catch::Approx(S.h311).margin(1e-13));
  REQUIRE(R.h312 == Catch::Approx(S.h312).margin(1e-13));
  REQUIRE(R.h322 == Catch::Approx(S.h322).margin(1e-13));
  REQUIRE(R.h411 == Catch::Approx(S.h411).margin(1e-13));
  REQUIRE(R.h412 == Catch::Approx(S.h412).margin(1e-13));
  REQUIRE(R.h422 == Catch::Approx(S.h422).margin(1e-13));
}

TEST_CASE("complex form round-trips 1e4 random components") {
  Rng rng(17);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    SecondFundamentalForm S{};
    S.h311 = rng.uniform(-2.0, 2.0);
    S.h312 = rng.uniform(-2.0, 2.0);
    S.h322 = rng.uniform(-2.0, 2.0);
    S.h411 = rng.uniform(-2.0, 2.0);
    S.h412 = rng.uniform(-2.0, 2.0);
    S.h422 = rng.uniform(-2.0, 2.0);
    S.H3 = S.h311 + S.h322;
    S.H4 = S.h411 + S.h422;
    const ComplexSff C = complex_sff(S);
    worst = std::max(worst, std::abs(C.b_c - 0.25 * std::complex<double>(S.H3, S.H4)));
    const SffComponents R = reassemble_sff(C);
    worst = std::max({worst, std::abs(R.h311 - S.h311), std::abs(R.h312 - S.h312),
                      std::abs(R.h322 - S.h322), std::abs(R.h411 - S.h411),
                      std::abs(R.h412 - S.h412), std::abs(R.h422 - S.h422)});
  }
  REQUIRE(worst < 1e-12);
}

TEST_CASE("laplace-beltrami: constants, flat reference, conservation") {
  const GraphSurface flat = make_flat_torus(64, 64);
  auto ones = [](int, int) { return 3.75; };
  REQUIRE(std::abs(laplace_beltrami(flat, ones, 5, 9)) < 1e-13);
  // On the flat metric the operator reduces to the plain Laplacian.
  auto sinx = [&](int i, int) { return std::sin(i * flat.hx); };
  double worst = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; j += 4)
      worst = std::max(worst, std::abs(laplace_beltrami(flat, sinx, i, j) + std::sin(i * flat.hx)));
  REQUIRE(worst < 2e-3);
  // Divergence form telescopes: the metric-weighted sum over the full torus
  // vanishes to roundoff.
  const GraphSurface wavy = make_reference_torus(48);
  double acc = 0.0;
  for (const QuadratureNode& q : quadrature_nodes(wavy, 2))
    acc += laplace_beltrami_cos_alpha(wavy, q.i, q.j) *
           std::sqrt(first_jet(wavy, q.i, q.j).detg) * q.w;
  REQUIRE(std::abs(acc) < 1e-12);
}

TEST_CASE("angle-laplacian residual converges at second order") {
  auto max_res = [](int n) {
    const GraphSurface s = make_reference_torus(n);
    double m = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m = std::max(m, std::abs(laplacian_cos_alpha_residual(s, i, j)));
    return m;
  };
  const double r32 = max_res(32), r64 = max_res(64);
  REQUIRE(r32 / r64 > 3.4);
  REQUIRE(r32 / r64 < 4.6);
  REQUIRE(r64 < 2e-3);
}

TEST_CASE("critical surfaces zero the angle diagnostic") {
  // Holomorphic graph: cos(alpha) = 1 identically, both terms vanish.
  const GraphSurface z2 = make_holomorphic_patch(33, 33, 1.0 / 32, 1.0 / 32);
  REQUIRE(std::abs(critical_angle_residual(z2, 16, 16)) < 1e-11);
  // Totally geodesic plane: constant angle, zero gradient.
  const GraphSurface p = make_sheared_plane(16, 16, 1.0);
  REQUIRE(std::abs(critical_angle_residual(p, 8, 8)) < 1e-11);
}

TEST_CASE("curvature helpers enforce their stencil margins") {
  const GraphSurface p = make_sheared_plane(16, 16, 0.5);
  REQUIRE_THROWS_AS(gauss_curvature_intrinsic(p, 1, 8), OutOfDomainError);
  REQUIRE_THROWS_AS(v_vector_fd(p, 8, 1), OutOfDomainError);
  REQUIRE_THROWS_AS(laplacian_cos_alpha_residual(p, 2, 8), OutOfDomainError);
  REQUIRE_NOTHROW(laplacian_cos_alpha_residual(p, 3, 8));
}
