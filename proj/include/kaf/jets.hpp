// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "kaf/core.hpp"

namespace kaf {

// Pointwise first derivatives of the height functions (f, g) of a graph
// surface (x, y) -> (x, y, f, g), plus every derived algebraic quantity:
//   a = gx + fy, b = fx - gy, c = 1 + fx*gy - gx*fy,
//   induced metric g11, g12, g22 with detg = g11*g22 - g12^2 = a^2 + b^2 + c^2,
//   cos_alpha = c / sqrt(detg), sin2_alpha = (a^2 + b^2) / detg.
struct FirstJet {
  double fx = 0, fy = 0, gx = 0, gy = 0;
  double a = 0, b = 0, c = 1;
  double g11 = 1, g12 = 0, g22 = 1, detg = 1;
  double cos_alpha = 1, sin2_alpha = 0;
};

struct Metric2 {
  double g11, g12, g22, detg;
};

struct KahlerAngle {
  double cos_alpha, sin2_alpha;
};

inline FirstJet make_first_jet(double fx, double fy, double gx, double gy) {
  FirstJet j;
  j.fx = fx;
  j.fy = fy;
  j.gx = gx;
  j.gy = gy;
  j.a = gx + fy;
  j.b = fx - gy;
  j.c = 1.0 + fx * gy - gx * fy;
  j.g11 = 1.0 + fx * fx + gx * gx;
  j.g12 = fx * fy + gx * gy;
  j.g22 = 1.0 + fy * fy + gy * gy;
  j.detg = j.g11 * j.g22 - j.g12 * j.g12;
  j.cos_alpha = j.c / std::sqrt(j.detg);
  j.sin2_alpha = (j.a * j.a + j.b * j.b) / j.detg;
  return j;
}

inline Metric2 induced_metric(const FirstJet& j) { return {j.g11, j.g12, j.g22, j.detg}; }

inline KahlerAngle kahler_angle(const FirstJet& j) { return {j.cos_alpha, j.sin2_alpha}; }

// First jet plus pointwise second derivatives.
struct SecondJet : FirstJet {
  double fxx = 0, fxy = 0, fyy = 0;
  double gxx = 0, gxy = 0, gyy = 0;
};

inline SecondJet make_second_jet(double fx, double fy, double gx, double gy,  //
                                 double fxx, double fxy, double fyy,          //
                                 double gxx, double gxy, double gyy) {
  SecondJet j;
  static_cast<FirstJet&>(j) = make_first_jet(fx, fy, gx, gy);
  j.fxx = fxx;
  j.fxy = fxy;
  j.fyy = fyy;
  j.gxx = gxx;
  j.gxy = gxy;
  j.gyy = gyy;
  return j;
}

// Coordinate tangents of the graph immersion.
inline Vec4 tangent1(const FirstJet& j) { return {1.0, 0.0, j.fx, j.gx}; }
inline Vec4 tangent2(const FirstJet& j) { return {0.0, 1.0, j.fy, j.gy}; }

// Tangential projection of an ambient vector onto span{t1, t2} using the
// inverse induced metric.
inline Vec4 tangential_part(const Vec4& w, const FirstJet& j) {
  const Vec4 t1 = tangent1(j), t2 = tangent2(j);
  const double p = dot(w, t1), q = dot(w, t2);
  const double A = (j.g22 * p - j.g12 * q) / j.detg;
  const double B = (j.g11 * q - j.g12 * p) / j.detg;
  return A * t1 + B * t2;
}

}  // namespace kaf
