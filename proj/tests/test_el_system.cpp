// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "kaf/kaf.hpp"

using namespace kaf;

namespace {

// Canonical second jet; every frozen constant below was derived from it once
// and pinned. A change in any of these values is a semantic change of the
// operator, not a refactor.
SecondJet canonical() {
  return make_second_jet(0.3, -0.2, 0.5, 0.4, 0.7, -0.3, 0.2, -0.6, 0.1, 0.8);
}

SecondJet random_second_jet(Rng& rng) {
  const FirstJet f = sample_symplectic_jet(rng);
  SecondJet j;
  static_cast<FirstJet&>(j) = f;
  j.fxx = rng.uniform(-1.5, 1.5);
  j.fxy = rng.uniform(-1.5, 1.5);
  j.fyy = rng.uniform(-1.5, 1.5);
  j.gxx = rng.uniform(-1.5, 1.5);
  j.gxy = rng.uniform(-1.5, 1.5);
  j.gyy = rng.uniform(-1.5, 1.5);
  return j;
}

}  // namespace

TEST(Coefficients, FrozenValues) {
  const ELCoefficients k = el_coefficients(canonical());
  EXPECT_NEAR(k.A11, 1.807357611940298507, 1e-14);
  EXPECT_NEAR(k.A12, -0.5218808059701492537, 1e-14);
  EXPECT_NEAR(k.A22, 2.124109333333333333, 1e-14);
  EXPECT_NEAR(k.B11, -0.04544477611940298507, 1e-14);
  EXPECT_NEAR(k.B12, 0.09575308457711442786, 1e-14);
  EXPECT_NEAR(k.B22, 0.02867333333333333333, 1e-14);
  EXPECT_NEAR(k.C11, -0.04690746268656716418, 1e-14);
  EXPECT_NEAR(k.C12, 0.1099237313432835821, 1e-14);
  EXPECT_NEAR(k.C22, 0.02704, 1e-14);
  EXPECT_NEAR(k.D11, 1.886265074626865672, 1e-14);
  EXPECT_NEAR(k.D12, -0.3676231940298507463, 1e-14);
  EXPECT_NEAR(k.D22, 2.000436, 1e-14);
}

TEST(Gradient, FrozenClosedForm) {
  const auto [dcdx, dcdy] = cos_alpha_gradient_closed_form(canonical());
  EXPECT_NEAR(dcdx, 0.2180940984019861059, 1e-15);
  EXPECT_NEAR(dcdy, -0.1198868154294014325, 1e-15);
}

TEST(Residual, FrozenGraphForm) {
  const auto [r1, r2] = el_residual_graph(canonical());
  EXPECT_NEAR(r1, 0.755571255051314606178, 1e-14);
  EXPECT_NEAR(r2, 0.147214010741703144513, 1e-14);
}

TEST(Residual, FrozenFrameFormAndConversion) {
  const SecondJet j = canonical();
  const Vec4 E = ambient_el(j);
  // Raw pairings with the graph-mode normals...
  const Vec4 vt3{-j.fx, -j.fy, 1.0, 0.0};
  const Vec4 vt4{-j.gx, -j.gy, 0.0, 1.0};
  EXPECT_NEAR(dot(E, vt3), 0.7490376115784286239, 1e-13);
  EXPECT_NEAR(dot(E, vt4), 0.1487354080112799666, 1e-13);
  // ...plus the documented oblique-projection corrections give the graph form.
  const auto [b1, b2] = el_frame_to_graph(E, j);
  const auto [r1, r2] = el_residual_graph(j);
  EXPECT_NEAR(b1, r1, 1e-14);
  EXPECT_NEAR(b2, r2, 1e-14);
  EXPECT_NEAR(b1 - dot(E, vt3), 0.006533643472885982278, 1e-14);   // corr1
  EXPECT_NEAR(b2 - dot(E, vt4), -0.001521397269576822087, 1e-14);  // corr2
}

TEST(Residual, CoefficientContractionIsTheSameOperator) {
  Rng rng(5);
  for (int k = 0; k < 10000; ++k) {
    const SecondJet j = random_second_jet(rng);
    const auto [r1, r2] = el_residual_graph(j);
    const auto [c1, c2] = el_contract(el_coefficients(j), j);
    const double scale = std::max({1.0, std::abs(r1), std::abs(r2)});
    EXPECT_NEAR(r1, c1, 1e-12 * scale);
    EXPECT_NEAR(r2, c2, 1e-12 * scale);
  }
}

TEST(Residual, FrameToGraphBridgeIsExact) {
  Rng rng(6);
  for (int k = 0; k < 10000; ++k) {
    const SecondJet j = random_second_jet(rng);
    const auto [r1, r2] = el_residual_graph(j);
    const auto [b1, b2] = el_frame_to_graph(ambient_el(j), j);
    const double scale = std::max({1.0, std::abs(r1), std::abs(r2)});
    EXPECT_NEAR(r1, b1, 1e-12 * scale);
    EXPECT_NEAR(r2, b2, 1e-12 * scale);
  }
}

TEST(Residual, AffineGraphsAreCritical) {
  const SecondJet j = make_second_jet(0.9, -0.4, 0.2, 0.7, 0, 0, 0, 0, 0, 0);
  const auto [r1, r2] = el_residual_graph(j);
  EXPECT_EQ(r1, 0.0);
  EXPECT_EQ(r2, 0.0);
  EXPECT_EQ(norm(ambient_el(j)), 0.0);
}

TEST(Residual, HolomorphicJetsAreCritical) {
  // Cauchy-Riemann consistent data: gx = -fy, gy = fx, gxx = -fxy,
  // gxy = -fyy = fxx (harmonic), gyy = fxy.
  const SecondJet j = make_second_jet(0.4, -0.7, 0.7, 0.4, 1.3, -0.5, -1.3, 0.5, 1.3, -0.5);
  EXPECT_LT(std::abs(j.a), 1e-15);
  EXPECT_LT(std::abs(j.b), 1e-15);
  const auto [r1, r2] = el_residual_graph(j);
  EXPECT_LT(std::abs(r1), 1e-13);
  EXPECT_LT(std::abs(r2), 1e-13);
  EXPECT_LT(norm(ambient_el(j)), 1e-13);
}

TEST(Residual, RejectsNonSymplecticJets) {
  const SecondJet j = make_second_jet(2.0, 0.1, 0.1, -2.0, 0.5, 0, 0, 0, 0, 0.5);
  ASSERT_LT(j.c, 0.0);
  EXPECT_THROW(el_residual_graph(j), NotSymplecticError);
  EXPECT_THROW(ambient_el(j), NotSymplecticError);
}

TEST(Residual, AmbientFormIsNormal) {
  Rng rng(8);
  for (int k = 0; k < 2000; ++k) {
    const SecondJet j = random_second_jet(rng);
    const Vec4 E = ambient_el(j);
    const double scale = std::max(1.0, norm(E));
    EXPECT_LT(std::abs(dot(E, tangent1(j))), 1e-11 * scale);
    EXPECT_LT(std::abs(dot(E, tangent2(j))), 1e-11 * scale);
  }
}

TEST(Symbol, FrozenDeterminant) {
  const FirstJet j = canonical();
  const SymbolMatrix m = symbol(j, 0.3, -1.1);
  EXPECT_NEAR(m.det(), 7.877360340412535992, 1e-13);
  EXPECT_NEAR(symbol_det_closed_form(j, 0.3, -1.1), 7.877360340412535992, 1e-13);
}

TEST(Symbol, MatrixEntriesComeFromTheCoefficients) {
  const FirstJet j = canonical();
  const ELCoefficients k = el_coefficients(j);
  const double xi = 0.7, eta = -0.4;
  const SymbolMatrix m = symbol(j, xi, eta);
  EXPECT_NEAR(m.m11, k.A11 * xi * xi + k.A12 * xi * eta + k.A22 * eta * eta, 1e-13);
  EXPECT_NEAR(m.m12, k.B11 * xi * xi + k.B12 * xi * eta + k.B22 * eta * eta, 1e-13);
  EXPECT_NEAR(m.m21, k.C11 * xi * xi + k.C12 * xi * eta + k.C22 * eta * eta, 1e-13);
  EXPECT_NEAR(m.m22, k.D11 * xi * xi + k.D12 * xi * eta + k.D22 * eta * eta, 1e-13);
}

TEST(Symbol, PositiveOnRandomSymplecticJets) {
  Rng rng(9);
  double min_det = 1e300, worst_rel = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const FirstJet j = sample_symplectic_jet(rng);
    const double th = rng.uniform(0.0, 2.0 * kPi);
    const double d = symbol(j, std::cos(th), std::sin(th)).det();
    const double c = symbol_det_closed_form(j, std::cos(th), std::sin(th));
    min_det = std::min(min_det, d);
    worst_rel = std::max(worst_rel, std::abs(d - c) / std::max(1.0, std::abs(d)));
  }
  EXPECT_GT(min_det, 0.0);
  EXPECT_LT(worst_rel, 1e-9);
}

TEST(Symbol, ZeroDirectionIsRejected) {
  EXPECT_THROW(symbol(canonical(), 0.0, 0.0), ZeroDirectionError);
  EXPECT_THROW(symbol_det_closed_form(canonical(), 0.0, 0.0), ZeroDirectionError);
}

TEST(Sampler, HonorsItsBounds) {
  Rng rng(10);
  for (int k = 0; k < 2000; ++k) {
    const FirstJet j = sample_symplectic_jet(rng);
    EXPECT_GT(j.c, 0.05);
    EXPECT_GT(j.detg, 0.05);
    EXPECT_LE(std::abs(j.fx), 1.5);
    EXPECT_LE(std::abs(j.fy), 1.5);
    EXPECT_LE(std::abs(j.gx), 1.5);
    EXPECT_LE(std::abs(j.gy), 1.5);
  }
}
