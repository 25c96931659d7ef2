// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "kaf/core.hpp"
#include "kaf/jets.hpp"

namespace kaf {

// Standard complex structure of flat C^2 = R^4 acting on (u1, u2, u3, u4).
inline Vec4 apply_J(const Vec4& u) { return {-u[1], u[0], -u[3], u[2]}; }

// Standard Kahler two-form: omega(u, v) = <J u, v>. Bilinear, antisymmetric,
// and omega(u, J u) = |u|^2.
inline double omega(const Vec4& u, const Vec4& v) { return dot(apply_J(u), v); }

// Orthonormal frame {e1, e2, v3, v4} adapted to a tangent plane: e1, e2 span
// the plane, v3, v4 the normal plane, and the Kahler form / complex structure
// take their canonical matrices:
//   omega(e1,e2) = omega(v3,v4) = cos_alpha,
//   omega(e1,v3) = sin_alpha,   omega(e2,v4) = -sin_alpha,
//   J e1 =  cos_alpha e2 + sin_alpha v3,
//   J e2 = -cos_alpha e1 - sin_alpha v4,
//   J v3 = -sin_alpha e1 + cos_alpha v4,
//   J v4 =  sin_alpha e2 - cos_alpha v3.
//
// p11, p21, p22 are the Gram-Schmidt coefficients mapping the input pair to
// the orthonormal tangent pair: e1 = p11 t1, e2 = p21 t1 + p22 t2.
struct AdaptedFrame {
  Vec4 e1, e2, v3, v4;
  double cos_alpha = 0, sin_alpha = 1;
  double p11 = 1, p21 = 0, p22 = 1;
};

// Builds the adapted frame from a (positively oriented) tangent pair.
// cos_alpha is orientation-sensitive; the caller's order is authoritative.
// Throws DegenerateTangent if t1, t2 are nearly parallel and ComplexPoint if
// sin(alpha) < eps_frame (the normal construction divides by sin(alpha)).
inline AdaptedFrame adapted_frame(const Vec4& t1, const Vec4& t2,
                                  double eps_frame = kEpsFrame) {
  const double m11 = dot(t1, t1);
  const double m12 = dot(t1, t2);
  const double m22 = dot(t2, t2);
  const double detm = m11 * m22 - m12 * m12;
  if (!(detm > kEpsGram)) {
    throw DegenerateTangentError("adapted_frame: tangent pair nearly parallel");
  }
  AdaptedFrame F;
  const double sq11 = std::sqrt(m11);
  const double sqdet = std::sqrt(detm);
  F.p11 = 1.0 / sq11;
  F.p21 = -m12 / (sq11 * sqdet);
  F.p22 = sq11 / sqdet;
  F.e1 = F.p11 * t1;
  F.e2 = F.p21 * t1 + F.p22 * t2;
  F.cos_alpha = omega(F.e1, F.e2);
  const double s2 = 1.0 - F.cos_alpha * F.cos_alpha;
  F.sin_alpha = std::sqrt(s2 > 0.0 ? s2 : 0.0);
  if (F.sin_alpha < eps_frame) {
    throw ComplexPointError("adapted_frame: tangent plane is a complex line");
  }
  const Vec4 Je1 = apply_J(F.e1), Je2 = apply_J(F.e2);
  F.v3 = (1.0 / F.sin_alpha) * (Je1 - F.cos_alpha * F.e2);
  F.v4 = (-1.0 / F.sin_alpha) * (Je2 + F.cos_alpha * F.e1);
  return F;
}

inline AdaptedFrame adapted_frame(const FirstJet& j, double eps_frame = kEpsFrame) {
  return adapted_frame(tangent1(j), tangent2(j), eps_frame);
}

}  // namespace kaf
