// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>

#include "kaf/ambient.hpp"
#include "kaf/core.hpp"
#include "kaf/grid.hpp"

namespace kaf {

// Ambient mean curvature vector of the graph immersion at a node: the normal
// part of (0, 0, mf, mg), where mf, mg are the metric-contracted second
// derivatives. Frame-free and smooth through complex points.
inline Vec4 mean_curvature_vec(const SecondJet& j) {
  const double mf = (j.g22 * j.fxx - 2.0 * j.g12 * j.fxy + j.g11 * j.fyy) / j.detg;
  const double mg = (j.g22 * j.gxx - 2.0 * j.g12 * j.gxy + j.g11 * j.gyy) / j.detg;
  const Vec4 W{0.0, 0.0, mf, mg};
  return W - tangential_part(W, j);
}

inline Vec4 mean_curvature_vec(const GraphSurface& s, int i, int j) {
  return mean_curvature_vec(second_jet(s, i, j));
}

// Second fundamental form in the adapted orthonormal frame: h^alpha_{kl} with
// alpha in {3, 4} indexing the normals v3, v4, and H3 = h311 + h322,
// H4 = h411 + h422 the mean curvature components.
struct SecondFundamentalForm {
  double h311, h312, h322;
  double h411, h412, h422;
  double H3, H4;
  AdaptedFrame frame;
};

inline SecondFundamentalForm second_fundamental_form(const SecondJet& j,
                                                     double eps_frame = kEpsFrame) {
  const AdaptedFrame F = adapted_frame(j, eps_frame);
  // Coordinate-basis normal components <(d^2 F)_{kl}, v_alpha>; v3, v4 are
  // orthogonal to the tangent plane, so no explicit projection is needed.
  const Vec4 Wxx{0.0, 0.0, j.fxx, j.gxx};
  const Vec4 Wxy{0.0, 0.0, j.fxy, j.gxy};
  const Vec4 Wyy{0.0, 0.0, j.fyy, j.gyy};
  SecondFundamentalForm S;
  S.frame = F;
  const double p11 = F.p11, p21 = F.p21, p22 = F.p22;
  for (int alpha = 0; alpha < 2; ++alpha) {
    const Vec4& nv = (alpha == 0) ? F.v3 : F.v4;
    const double axx = dot(Wxx, nv);
    const double axy = dot(Wxy, nv);
    const double ayy = dot(Wyy, nv);
    // Convert coordinate components to the orthonormal tangent pair:
    // h = P hA P^T with P = [[p11, 0], [p21, p22]].
    const double h11 = p11 * p11 * axx;
    const double h12 = p11 * (p21 * axx + p22 * axy);
    const double h22 = p21 * p21 * axx + 2.0 * p21 * p22 * axy + p22 * p22 * ayy;
    if (alpha == 0) {
      S.h311 = h11;
      S.h312 = h12;
      S.h322 = h22;
    } else {
      S.h411 = h11;
      S.h412 = h12;
      S.h422 = h22;
    }
  }
  S.H3 = S.h311 + S.h322;
  S.H4 = S.h411 + S.h422;
  return S;
}

inline SecondFundamentalForm second_fundamental_form(const GraphSurface& s, int i, int j,
                                                     double eps_frame = kEpsFrame) {
  return second_fundamental_form(second_jet(s, i, j), eps_frame);
}

// Normal vector V = V3 v3 + V4 v4 built from angle derivatives; equals
// (d2_alpha) v3 + (d1_alpha) v4, with the derivatives taken along the
// orthonormal tangent directions.
struct VVector {
  double V3, V4;
};

inline VVector v_vector(const SecondFundamentalForm& S) {
  return {-(S.h322 + S.h412), -(S.h411 + S.h312)};
}

// Finite-difference cross-check of V: frame-direction derivatives of the
// cos(alpha) field give V3 = -d2(cos alpha)/sin(alpha) and
// V4 = -d1(cos alpha)/sin(alpha).
inline VVector v_vector_fd(const GraphSurface& s, int i, int j, double eps_frame = kEpsFrame) {
  s.require_interior(i, j, 2, "v_vector_fd");
  const FirstJet jc = first_jet(s, i, j);
  const AdaptedFrame F = adapted_frame(jc, eps_frame);
  const double cxp = first_jet(s, i + 1, j).cos_alpha;
  const double cxm = first_jet(s, i - 1, j).cos_alpha;
  const double cyp = first_jet(s, i, j + 1).cos_alpha;
  const double cym = first_jet(s, i, j - 1).cos_alpha;
  const double dcx = (cxp - cxm) / (2.0 * s.hx);
  const double dcy = (cyp - cym) / (2.0 * s.hy);
  const double d1 = F.p11 * dcx;
  const double d2 = F.p21 * dcx + F.p22 * dcy;
  return {-d2 / F.sin_alpha, -d1 / F.sin_alpha};
}

// ---------------------------------------------------------------------------
// Gauss curvature, two routes.

// Intrinsic Gauss curvature from the induced metric alone (Brioschi formula
// on finite-difference metric fields). Frame-free; defined wherever the
// nested stencils fit (margin 2 on an open patch).
inline double gauss_curvature_intrinsic(const GraphSurface& s, int i, int j) {
  s.require_interior(i, j, 2, "gauss_curvature_intrinsic");
  // Metric fields on the 3x3 neighborhood.
  double E[3][3], F[3][3], G[3][3];
  for (int di = -1; di <= 1; ++di) {
    for (int dj = -1; dj <= 1; ++dj) {
      const FirstJet jet = first_jet(s, i + di, j + dj);
      E[di + 1][dj + 1] = jet.g11;
      F[di + 1][dj + 1] = jet.g12;
      G[di + 1][dj + 1] = jet.g22;
    }
  }
  const double hx = s.hx, hy = s.hy;
  auto d1x = [&](double m[3][3]) { return (m[2][1] - m[0][1]) / (2.0 * hx); };
  auto d1y = [&](double m[3][3]) { return (m[1][2] - m[1][0]) / (2.0 * hy); };
  auto d2x = [&](double m[3][3]) { return (m[2][1] - 2.0 * m[1][1] + m[0][1]) / (hx * hx); };
  auto d2y = [&](double m[3][3]) { return (m[1][2] - 2.0 * m[1][1] + m[1][0]) / (hy * hy); };
  auto dcross = [&](double m[3][3]) {
    return (m[2][2] - m[2][0] - m[0][2] + m[0][0]) / (4.0 * hx * hy);
  };
  const double Ev = E[1][1], Fv = F[1][1], Gv = G[1][1];
  const double Ex = d1x(E), Ey = d1y(E), Gx = d1x(G), Gy = d1y(G);
  const double Fx = d1x(F), Fy = d1y(F);
  const double Eyy = d2y(E), Gxx = d2x(G), Fxy = dcross(F);
  auto det3 = [](double m00, double m01, double m02, double m10, double m11, double m12,
                 double m20, double m21, double m22) {
    return m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
           m02 * (m10 * m21 - m11 * m20);
  };
  const double D1 = det3(-0.5 * Eyy + Fxy - 0.5 * Gxx, 0.5 * Ex, Fx - 0.5 * Ey,  //
                         Fy - 0.5 * Gx, Ev, Fv,                                  //
                         0.5 * Gy, Fv, Gv);
  const double D2 = det3(0.0, 0.5 * Ey, 0.5 * Gx,  //
                         0.5 * Ey, Ev, Fv,         //
                         0.5 * Gx, Fv, Gv);
  const double d = Ev * Gv - Fv * Fv;
  return (D1 - D2) / (d * d);
}

struct GaussCurvatures {
  double K_intrinsic;       // Brioschi, metric only
  double R1212_extrinsic;   // sum over normals of (h11 h22 - h12^2)
  double R1234;             // normal-bundle curvature contraction
};

inline GaussCurvatures gauss_curvatures(const GraphSurface& s, int i, int j,
                                        double eps_frame = kEpsFrame) {
  const double K = gauss_curvature_intrinsic(s, i, j);
  const SecondFundamentalForm S = second_fundamental_form(s, i, j, eps_frame);
  const double R1212 = (S.h311 * S.h322 - S.h312 * S.h312) +  //
                       (S.h411 * S.h422 - S.h412 * S.h412);
  const double R1234 = (S.h311 * S.h412 + S.h312 * S.h422) -  //
                       (S.h411 * S.h312 + S.h412 * S.h322);
  return {K, R1212, R1234};
}

// Gauss-Bonnet style total curvature via the intrinsic route (frame-free, so
// it tolerates isolated complex points).
inline double total_gauss_curvature(const GraphSurface& s) {
  double acc = 0.0;
  for (const auto& q : quadrature_nodes(s, 2)) {
    acc += gauss_curvature_intrinsic(s, q.i, q.j) * std::sqrt(first_jet(s, q.i, q.j).detg) * q.w;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Complex second fundamental form.

struct ComplexSff {
  std::complex<double> a_c, b_c, c_c;
};

// Complexification of (h3, h4): b_c = (H3 + i H4)/4 identically, and a_c, c_c
// carry the trace-free parts.
inline ComplexSff complex_sff(const SecondFundamentalForm& S) {
  ComplexSff out;
  out.b_c = std::complex<double>(S.H3, S.H4) * 0.25;
  out.a_c = 0.25 * std::complex<double>((S.h311 - S.h322) + 2.0 * S.h412,
                                        (S.h411 - S.h422) - 2.0 * S.h312);
  out.c_c = 0.25 * std::complex<double>((S.h311 - S.h322) - 2.0 * S.h412,
                                        (S.h411 - S.h422) + 2.0 * S.h312);
  return out;
}

// Inverse of complex_sff: rebuild the six real components.
struct SffComponents {
  double h311, h312, h322, h411, h412, h422;
};

inline SffComponents reassemble_sff(const ComplexSff& C) {
  const std::complex<double> w11 = C.a_c + 2.0 * C.b_c + C.c_c;       // h311 + i h411
  const std::complex<double> w12 = std::complex<double>(0.0, 1.0) *
                                   (C.a_c - C.c_c);                   // h312 + i h412
  const std::complex<double> w22 = -C.a_c + 2.0 * C.b_c - C.c_c;      // h322 + i h422
  return {w11.real(), w12.real(), w22.real(), w11.imag(), w12.imag(), w22.imag()};
}

// ---------------------------------------------------------------------------
// Laplace-Beltrami operator and angle-Laplacian residuals.

// Divergence-form Laplace-Beltrami of a scalar field u(i, j) at a node, with
// half-node averaged coefficients: (1/sqrt(detg)) d_k(sqrt(detg) g^{kl} d_l u).
// Second order, self-adjoint. Needs u and the metric on the 3x3 neighborhood.
template <class Field>
double laplace_beltrami(const GraphSurface& s, Field&& u, int i, int j) {
  s.require_interior(i, j, 2, "laplace_beltrami");
  auto P = [&](int ii, int jj, int which) {
    const FirstJet jet = first_jet(s, ii, jj);
    const double sd = std::sqrt(jet.detg);
    if (which == 0) return jet.g22 / sd;   // coefficient of d_x . d_x
    if (which == 1) return jet.g11 / sd;   // coefficient of d_y . d_y
    return -jet.g12 / sd;                  // mixed coefficient
  };
  const double hx = s.hx, hy = s.hy;
  const double u0 = u(i, j);
  // Pure terms with half-node coefficient averaging.
  const double Pxp = 0.5 * (P(i, j, 0) + P(i + 1, j, 0));
  const double Pxm = 0.5 * (P(i, j, 0) + P(i - 1, j, 0));
  const double Pyp = 0.5 * (P(i, j, 1) + P(i, j + 1, 1));
  const double Pym = 0.5 * (P(i, j, 1) + P(i, j - 1, 1));
  const double pure_x = (Pxp * (u(i + 1, j) - u0) - Pxm * (u0 - u(i - 1, j))) / (hx * hx);
  const double pure_y = (Pyp * (u(i, j + 1) - u0) - Pym * (u0 - u(i, j - 1))) / (hy * hy);
  // Mixed terms: d_x(Pxy d_y u) + d_y(Pxy d_x u), centered throughout.
  auto dyu = [&](int ii, int jj) { return (u(ii, jj + 1) - u(ii, jj - 1)) / (2.0 * hy); };
  auto dxu = [&](int ii, int jj) { return (u(ii + 1, jj) - u(ii - 1, jj)) / (2.0 * hx); };
  const double mixed =
      (P(i + 1, j, 2) * dyu(i + 1, j) - P(i - 1, j, 2) * dyu(i - 1, j)) / (2.0 * hx) +
      (P(i, j + 1, 2) * dxu(i, j + 1) - P(i, j - 1, 2) * dxu(i, j - 1)) / (2.0 * hy);
  return (pure_x + pure_y + mixed) / std::sqrt(first_jet(s, i, j).detg);
}

inline double laplace_beltrami_cos_alpha(const GraphSurface& s, int i, int j) {
  return laplace_beltrami(
      s, [&](int ii, int jj) { return first_jet(s, ii, jj).cos_alpha; }, i, j);
}

// Residual of the angle-Laplacian identity
//   Lap(cos a) = cos a (-|h3_{1k} - h4_{2k}|^2 - |h4_{1k} + h3_{2k}|^2)
//              + sin a (H^4_{,1} + H^3_{,2}),
// where H^alpha_{,k} = <covariant frame-direction derivative of the mean
// curvature vector, v_alpha>. The derivative is realized by differencing the
// ambient mean curvature vector field and projecting; differencing the scalar
// components H3, H4 instead drops the normal-connection terms and does not
// converge. O(h^2) on smooth surfaces; needs margin 3 on an open patch.
inline double laplacian_cos_alpha_residual(const GraphSurface& s, int i, int j,
                                           double eps_frame = kEpsFrame) {
  s.require_interior(i, j, 3, "laplacian_cos_alpha_residual");
  const SecondFundamentalForm S = second_fundamental_form(s, i, j, eps_frame);
  const AdaptedFrame& F = S.frame;
  const double LB = laplace_beltrami_cos_alpha(s, i, j);
  const double T1 = (S.h311 - S.h412) * (S.h311 - S.h412) +  //
                    (S.h312 - S.h422) * (S.h312 - S.h422);
  const double T2 = (S.h411 + S.h312) * (S.h411 + S.h312) +  //
                    (S.h412 + S.h322) * (S.h412 + S.h322);
  const Vec4 Hxp = mean_curvature_vec(s, i + 1, j);
  const Vec4 Hxm = mean_curvature_vec(s, i - 1, j);
  const Vec4 Hyp = mean_curvature_vec(s, i, j + 1);
  const Vec4 Hym = mean_curvature_vec(s, i, j - 1);
  const Vec4 DxH = (1.0 / (2.0 * s.hx)) * (Hxp - Hxm);
  const Vec4 DyH = (1.0 / (2.0 * s.hy)) * (Hyp - Hym);
  const Vec4 d1H = F.p11 * DxH;
  const Vec4 d2H = F.p21 * DxH + F.p22 * DyH;
  const double H4_1 = dot(d1H, F.v4);
  const double H3_2 = dot(d2H, F.v3);
  return LB + F.cos_alpha * (T1 + T2) - F.sin_alpha * (H4_1 + H3_2);
}

// Diagnostic residual Lap(cos a) - ((3 sin^2 a - 2)/cos a) |grad a|^2; zero
// (to O(h^2)) exactly where the Euler-Lagrange residual vanishes.
inline double critical_angle_residual(const GraphSurface& s, int i, int j) {
  s.require_interior(i, j, 2, "critical_angle_residual");
  const FirstJet jet = first_jet(s, i, j);
  if (!(jet.c > 0.0)) throw NotSymplecticError("critical_angle_residual: c <= 0");
  auto alpha = [&](int ii, int jj) {
    const double c = first_jet(s, ii, jj).cos_alpha;
    return std::acos(c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c));
  };
  const double LB = laplace_beltrami_cos_alpha(s, i, j);
  const double ax = (alpha(i + 1, j) - alpha(i - 1, j)) / (2.0 * s.hx);
  const double ay = (alpha(i, j + 1) - alpha(i, j - 1)) / (2.0 * s.hy);
  const double grad2 =
      (jet.g22 * ax * ax - 2.0 * jet.g12 * ax * ay + jet.g11 * ay * ay) / jet.detg;
  return LB - ((3.0 * jet.sin2_alpha - 2.0) / jet.cos_alpha) * grad2;
}

}  // namespace kaf
