// SPDX-License-Identifier: Apache-2.0
//
// Geometry report for one surface: functional values, angle range, angle
// integrals, total intrinsic curvature, and a symbol-determinant sample.

#include <cstdio>

#include "kaf/kaf.hpp"

int main() {
  const kaf::GraphSurface s = kaf::make_reference_torus(64);

  std::printf("wavy reference torus, 64 x 64\n");
  std::printf("  L               = %.12f\n", kaf::functional_L(s));
  std::printf("  area            = %.12f\n", kaf::area(s));
  std::printf("  symplectic area = %.12f (flat value %.12f)\n", kaf::symplectic_area(s),
              4.0 * kaf::kPi * kaf::kPi);
  const kaf::CosAlphaRange r = kaf::cos_alpha_range(s);
  std::printf("  cos(alpha) in [%.6f, %.6f]\n", r.min_cos, r.max_cos);
  const kaf::AngleIntegrals ai = kaf::angle_integrals(s);
  std::printf("  angle integrals I2 = %.8f, I3 = %.8f\n", ai.I2, ai.I3);
  std::printf("  total intrinsic curvature = %.3e (torus: 0)\n",
              kaf::total_gauss_curvature(s));

  const kaf::FirstJet j = kaf::first_jet(s, 7, 11);
  std::printf("  det symbol at node (7,11), direction (1,0): %.10f\n",
              kaf::symbol(j, 1.0, 0.0).det());

  const kaf::GraphSurface flat = kaf::make_flat_torus(32, 32);
  std::printf("  flat torus L = %.12f (exact %.12f)\n", kaf::functional_L(flat),
              4.0 * kaf::kPi * kaf::kPi);
  return 0;
}
