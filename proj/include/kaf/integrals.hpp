// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "kaf/core.hpp"
#include "kaf/grid.hpp"

namespace kaf {

// L = integral of sec(alpha) d(mu). Since sec(alpha) * sqrt(detg) = detg / c,
// the quadrature integrand is detg / c. Requires c > 0 at every quadrature
// node (the surface must be symplectic).
inline double functional_L(const GraphSurface& s) {
  double acc = 0.0;
  for (const auto& q : quadrature_nodes(s)) {
    const FirstJet j = first_jet(s, q.i, q.j);
    if (!(j.c > 0.0))
      throw NotSymplecticError("functional_L: c <= 0 at node (" + std::to_string(q.i) + "," +
                               std::to_string(q.j) + ")");
    acc += (j.detg / j.c) * q.w;
  }
  return acc;
}

inline double area(const GraphSurface& s) {
  double acc = 0.0;
  for (const auto& q : quadrature_nodes(s)) {
    acc += std::sqrt(first_jet(s, q.i, q.j).detg) * q.w;
  }
  return acc;
}

// Integral of the pullback of the Kahler form; the integrand reduces to c.
inline double symplectic_area(const GraphSurface& s) {
  double acc = 0.0;
  for (const auto& q : quadrature_nodes(s)) {
    acc += first_jet(s, q.i, q.j).c * q.w;
  }
  return acc;
}

inline double degree(const GraphSurface& s) { return symplectic_area(s) / kPi; }

struct AngleIntegrals {
  double I2;  // integral of |grad alpha|^2 / cos^2(alpha) d(mu)
  double I3;  // integral of |grad alpha|^2 / cos^3(alpha) d(mu)
};

// Intrinsic-gradient angle integrals. |grad alpha|^2 is the inverse-metric
// contraction g^{kl} d_k(alpha) d_l(alpha) of centered differences of the
// alpha = acos(cos_alpha) field. Requires cos(alpha) >= delta_int everywhere
// (the integrands carry sec^3); needs margin 2 on an open patch.
inline AngleIntegrals angle_integrals(const GraphSurface& s, double delta_int = 0.05) {
  std::vector<double> alpha(static_cast<size_t>(s.nx) * s.ny, 0.0);
  const int m1 = (s.mode == DomainMode::PeriodicTorus) ? 0 : 1;
  for (int i = m1; i < s.nx - m1; ++i) {
    for (int j = m1; j < s.ny - m1; ++j) {
      const FirstJet jet = first_jet(s, i, j);
      if (jet.cos_alpha < delta_int)
        throw NearComplexPointError("angle_integrals: cos_alpha < " + std::to_string(delta_int) +
                                    " at node (" + std::to_string(i) + "," + std::to_string(j) +
                                    ")");
      alpha[s.idx(i, j)] = std::acos(std::clamp(jet.cos_alpha, -1.0, 1.0));
    }
  }
  double I2 = 0.0, I3 = 0.0;
  for (const auto& q : quadrature_nodes(s, 2)) {
    const FirstJet jet = first_jet(s, q.i, q.j);
    const double ax = detail::dx(alpha, s, q.i, q.j);
    const double ay = detail::dy(alpha, s, q.i, q.j);
    const double grad2 =
        (jet.g22 * ax * ax - 2.0 * jet.g12 * ax * ay + jet.g11 * ay * ay) / jet.detg;
    const double dmu = std::sqrt(jet.detg) * q.w;
    const double sec = 1.0 / jet.cos_alpha;
    I2 += grad2 * sec * sec * dmu;
    I3 += grad2 * sec * sec * sec * dmu;
  }
  return {I2, I3};
}

// Min/max of cos(alpha) over all jet-valid nodes.
struct CosAlphaRange {
  double min_cos, max_cos;
};

inline CosAlphaRange cos_alpha_range(const GraphSurface& s) {
  double lo = 2.0, hi = -2.0;
  const int m1 = (s.mode == DomainMode::PeriodicTorus) ? 0 : 1;
  for (int i = m1; i < s.nx - m1; ++i) {
    for (int j = m1; j < s.ny - m1; ++j) {
      const double c = first_jet(s, i, j).cos_alpha;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
  }
  return {lo, hi};
}

}  // namespace kaf
