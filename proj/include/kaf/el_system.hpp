// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <utility>

#include "kaf/ambient.hpp"
#include "kaf/core.hpp"
#include "kaf/curvature.hpp"
#include "kaf/grid.hpp"

namespace kaf {

// ---------------------------------------------------------------------------
// Quasilinear coefficient form of the Euler-Lagrange system. The twelve
// polynomials in (g11, g12, g22, a, b, c) multiply (fxx, fxy, fyy, gxx, gxy,
// gyy); dividing the contraction by detg^2 reproduces el_residual_graph.

struct ELCoefficients {
  double A11, A12, A22;  // eq 1, f-derivatives
  double B11, B12, B22;  // eq 1, g-derivatives
  double C11, C12, C22;  // eq 2, f-derivatives
  double D11, D12, D22;  // eq 2, g-derivatives
};

inline ELCoefficients el_coefficients(const FirstJet& j) {
  const double g11 = j.g11, g12 = j.g12, g22 = j.g22;
  const double a = j.a, b = j.b, c = j.c;
  const double r11 = g12 * g12 / g11;  // g12^2/g11
  const double r22 = g12 * g12 / g22;  // g12^2/g22
  ELCoefficients k;
  k.A11 = g22 * c * c - g12 * a * b + r11 * a * a + g22 * b * b - g22 * g12 / g11 * a * b;
  k.A12 = -2.0 * g12 * c * c + g11 * a * b - 2.0 * g12 * a * a - 2.0 * g12 * b * b +
          r11 * a * b + r22 * a * b + g22 * a * b;
  k.A22 = g11 * c * c + g11 * a * a - g12 * a * b - g11 * g12 / g22 * a * b + r22 * b * b;
  k.B11 = g22 * a * b - g22 * g12 / g11 * a * a + g12 * b * b - r11 * a * b;
  k.B12 = -g11 * b * b + r11 * a * a + g22 * a * a - r22 * b * b;
  k.B22 = -g11 * a * b + g11 * g12 / g22 * b * b - g12 * a * a + r22 * a * b;
  k.C11 = -g12 * a * a + g22 * g12 / g11 * b * b + g22 * a * b - r11 * a * b;
  k.C12 = g11 * a * a - r11 * b * b - g22 * b * b + r22 * a * a;
  k.C22 = -g11 * a * b - g11 * g12 / g22 * a * a + g12 * b * b + r22 * a * b;
  k.D11 = g22 * c * c + g22 * a * a + r11 * b * b + g12 * a * b + g22 * g12 / g11 * a * b;
  k.D12 = -2.0 * g12 * c * c - g11 * a * b - 2.0 * g12 * a * a - 2.0 * g12 * b * b -
          r11 * a * b - r22 * a * b - g22 * a * b;
  k.D22 = g11 * c * c + g11 * b * b + g12 * a * b + g11 * g12 / g22 * a * b + r22 * a * a;
  return k;
}

// Contraction of the coefficient form with the second derivatives, normalized
// by detg^2. Equals el_residual_graph identically (two code paths, one
// operator).
inline std::pair<double, double> el_contract(const ELCoefficients& k, const SecondJet& j) {
  const double d2 = j.detg * j.detg;
  const double r1 = (k.A11 * j.fxx + k.A12 * j.fxy + k.A22 * j.fyy +  //
                     k.B11 * j.gxx + k.B12 * j.gxy + k.B22 * j.gyy) / d2;
  const double r2 = (k.C11 * j.fxx + k.C12 * j.fxy + k.C22 * j.fyy +  //
                     k.D11 * j.gxx + k.D12 * j.gxy + k.D22 * j.gyy) / d2;
  return {r1, r2};
}

// Closed-form gradient of the cos(alpha) field, detg^{-3/2} times a bilinear
// contraction of second derivatives with (a, b, metric) weights.
inline std::pair<double, double> cos_alpha_gradient_closed_form(const SecondJet& j) {
  const double P = j.fxx * (j.g12 * j.a - j.g22 * j.b) + j.gxx * (-j.g22 * j.a - j.g12 * j.b) +
                   j.fxy * (-j.g11 * j.a + j.g12 * j.b) + j.gxy * (j.g11 * j.b + j.g12 * j.a);
  const double Q = j.fyy * (-j.g11 * j.a + j.g12 * j.b) + j.gyy * (j.g11 * j.b + j.g12 * j.a) +
                   j.fxy * (j.g12 * j.a - j.g22 * j.b) + j.gxy * (-j.g22 * j.a - j.g12 * j.b);
  const double d32 = j.detg * std::sqrt(j.detg);
  return {P / d32, Q / d32};
}

// Graph-form Euler-Lagrange residual: the two second-order equations whose
// simultaneous vanishing characterizes critical points,
//   (c^2/detg^2)(g22 uxx - 2 g12 uxy + g11 uyy)
//     - [dcdx w1 + dcdy w2] / sqrt(detg)   for u = f, g,
// with first-order weights (b - (g12/g11) a, a - (g12/g22) b) for f and
// (a + (g12/g11) b, -(b + (g12/g22) a)) for g.
inline std::pair<double, double> el_residual_graph(const SecondJet& j) {
  if (!(j.c > 0.0)) throw NotSymplecticError("el_residual_graph: c <= 0");
  const auto [dcdx, dcdy] = cos_alpha_gradient_closed_form(j);
  const double sdet = std::sqrt(j.detg);
  const double c2d2 = j.c * j.c / (j.detg * j.detg);
  const double r1 = c2d2 * (j.g22 * j.fxx - 2.0 * j.g12 * j.fxy + j.g11 * j.fyy) -
                    (dcdx * (j.b - j.g12 / j.g11 * j.a) +  //
                     dcdy * (j.a - j.g12 / j.g22 * j.b)) / sdet;
  const double r2 = c2d2 * (j.g22 * j.gxx - 2.0 * j.g12 * j.gxy + j.g11 * j.gyy) -
                    (dcdx * (j.a + j.g12 / j.g11 * j.b) -  //
                     dcdy * (j.b + j.g12 / j.g22 * j.a)) / sdet;
  return {r1, r2};
}

// ---------------------------------------------------------------------------
// Frame-form residual cos^2(a) H - sin^2(a) V, evaluated by the graph route
//   cos^2(a) H - (J (J grad cos a)^T)^perp / cos(a),
// which is algebraically identical and stays smooth through complex points
// (the V-term vanishes continuously with sin^2). This is also the negative
// gradient-flow velocity field, by construction the same code path.
// Normal part of J applied to the tangential projection of J grad(cos a):
// equals cos(a) sin^2(a) V as an ambient vector, but is computed from the
// jet alone and stays smooth where the normal frame degenerates.
inline Vec4 normal_v_term(const SecondJet& j) {
  const auto [dcdx, dcdy] = cos_alpha_gradient_closed_form(j);
  const Vec4 t1 = tangent1(j), t2 = tangent2(j);
  const double A = (j.g22 * dcdx - j.g12 * dcdy) / j.detg;
  const double B = (j.g11 * dcdy - j.g12 * dcdx) / j.detg;
  const Vec4 grad = A * t1 + B * t2;                   // grad of cos(alpha)
  const Vec4 JgT = tangential_part(apply_J(grad), j);  // (J grad)^T
  const Vec4 JJ = apply_J(JgT);
  return JJ - tangential_part(JJ, j);                  // (J (J grad)^T)^perp
}

inline Vec4 ambient_el(const SecondJet& j) {
  if (!(j.c > 0.0)) throw NotSymplecticError("ambient_el: c <= 0");
  return j.cos_alpha * j.cos_alpha * mean_curvature_vec(j) -
         (1.0 / j.cos_alpha) * normal_v_term(j);
}

inline Vec4 el_residual_frame(const GraphSurface& s, int i, int j) {
  return ambient_el(second_jet(s, i, j));
}

// Documented weight conversion from the frame form to the graph form: pair
// the ambient residual with the graph-mode normals vt3 = (-fx, -fy, 1, 0),
// vt4 = (-gx, -gy, 0, 1) and add the oblique-projection corrections
//   corr1 = (+(g12/g11) a dcdx + (g12/g22) b dcdy)/sqrt(detg),
//   corr2 = (-(g12/g11) b dcdx + (g12/g22) a dcdy)/sqrt(detg).
// The result equals el_residual_graph exactly (an algebraic jet identity).
inline std::pair<double, double> el_frame_to_graph(const Vec4& E, const SecondJet& j) {
  const auto [dcdx, dcdy] = cos_alpha_gradient_closed_form(j);
  const Vec4 vt3{-j.fx, -j.fy, 1.0, 0.0};
  const Vec4 vt4{-j.gx, -j.gy, 0.0, 1.0};
  const double sdet = std::sqrt(j.detg);
  const double corr1 = (j.g12 / j.g11 * j.a * dcdx + j.g12 / j.g22 * j.b * dcdy) / sdet;
  const double corr2 = (-j.g12 / j.g11 * j.b * dcdx + j.g12 / j.g22 * j.a * dcdy) / sdet;
  return {dot(E, vt3) + corr1, dot(E, vt4) + corr2};
}

// ---------------------------------------------------------------------------
// Principal symbol and ellipticity.

struct SymbolMatrix {
  double m11, m12, m21, m22;
  double det() const { return m11 * m22 - m12 * m21; }
};

inline SymbolMatrix symbol(const FirstJet& j, double xi, double eta) {
  if (xi == 0.0 && eta == 0.0)
    throw ZeroDirectionError("symbol: direction (xi, eta) must be nonzero");
  const ELCoefficients k = el_coefficients(j);
  return {k.A11 * xi * xi + k.A12 * xi * eta + k.A22 * eta * eta,
          k.B11 * xi * xi + k.B12 * xi * eta + k.B22 * eta * eta,
          k.C11 * xi * xi + k.C12 * xi * eta + k.C22 * eta * eta,
          k.D11 * xi * xi + k.D12 * xi * eta + k.D22 * eta * eta};
}

// Sum-of-squares closed form of det(symbol); strictly positive whenever
// c > 0 and (xi, eta) != 0, which is the ellipticity statement.
inline double symbol_det_closed_form(const FirstJet& j, double xi, double eta) {
  if (xi == 0.0 && eta == 0.0)
    throw ZeroDirectionError("symbol_det_closed_form: direction (xi, eta) must be nonzero");
  const double g11 = j.g11, g12 = j.g12, g22 = j.g22;
  const double a = j.a, b = j.b, c = j.c;
  const double q2 = g22 * xi * xi + g11 * eta * eta - 2.0 * g12 * xi * eta;
  const double q3 = g22 * xi * xi + g11 * eta * eta - 3.0 * g12 * xi * eta;
  const double ab2 = a * a + b * b;
  const double quartic =
      g11 * g11 * g12 * g12 * eta * eta * eta * eta +
      g22 * g22 * g12 * g12 * xi * xi * xi * xi +
      g12 * g12 * g11 * g22 * xi * xi * eta * eta -
      2.0 * g12 * g12 * g12 * g11 * xi * eta * eta * eta -
      2.0 * g12 * g12 * g12 * g22 * xi * xi * xi * eta;
  return c * c * c * c * q2 * q2 + c * c * ab2 * q3 * q3 +
         (c * c * ab2 / (g11 * g22)) * quartic;
}

// Seeded sampler of symplectic first jets: uniform first derivatives in
// [-1.5, 1.5], rejected unless c > 0.05 and detg > 0.05.
inline FirstJet sample_symplectic_jet(Rng& rng) {
  for (;;) {
    const double fx = rng.uniform(-1.5, 1.5);
    const double fy = rng.uniform(-1.5, 1.5);
    const double gx = rng.uniform(-1.5, 1.5);
    const double gy = rng.uniform(-1.5, 1.5);
    const FirstJet j = make_first_jet(fx, fy, gx, gy);
    if (j.c > 0.05 && j.detg > 0.05) return j;
  }
}

}  // namespace kaf
