// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "kaf/core.hpp"
#include "kaf/grid.hpp"
#include "kaf/integrals.hpp"

namespace kaf {

// Initial surfaces. Torus presets live on the 2*pi-periodic square grid
// (hx = 2*pi/nx); patch presets take explicit spacings.

inline GraphSurface make_flat_torus(int nx, int ny) {
  return GraphSurface(nx, ny, 2.0 * kPi / nx, 2.0 * kPi / ny, DomainMode::PeriodicTorus);
}

// f = eps sin(kx x) sin(ky y), g = eps_g sin(kx x) cos(ky y).
inline GraphSurface make_perturbed_torus(int nx, int ny, double eps, int kx = 1, int ky = 1,
                                         double eps_g = 0.0) {
  GraphSurface s = make_flat_torus(nx, ny);
  for (int i = 0; i < nx; ++i) {
    const double x = i * s.hx;
    for (int j = 0; j < ny; ++j) {
      const double y = j * s.hy;
      s.f[s.idx(i, j)] = eps * std::sin(kx * x) * std::sin(ky * y);
      s.g[s.idx(i, j)] = eps_g * std::sin(kx * x) * std::cos(ky * y);
    }
  }
  return s;
}

// Totally geodesic graph plane f = slope * x, g = 0 on an open patch. The
// default spacing 1/(n-3) makes the quadrature sub-grid cover exactly the
// unit square, so the angle functional of the slope-1 plane is exactly 2.
inline GraphSurface make_sheared_plane(int nx, int ny, double slope, double hx = 0.0,
                                       double hy = 0.0) {
  if (hx <= 0.0) hx = 1.0 / (nx - 3);
  if (hy <= 0.0) hy = 1.0 / (ny - 3);
  GraphSurface s(nx, ny, hx, hy, DomainMode::OpenPatch);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) s.f[s.idx(i, j)] = slope * (i * hx);
  return s;
}

// Graph of the holomorphic map w = z^degree over a patch offset from the
// origin; a = b = 0 pointwise, so cos(alpha) = 1 and the surface is both
// area-minimizing and a critical point of the angle functional.
inline GraphSurface make_holomorphic_patch(int nx, int ny, double hx, double hy,
                                           double x0 = 0.3, double y0 = 0.3, int degree = 2) {
  GraphSurface s(nx, ny, hx, hy, DomainMode::OpenPatch);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const std::complex<double> z(x0 + i * hx, y0 + j * hy);
      std::complex<double> w(1.0, 0.0);
      for (int d = 0; d < degree; ++d) w *= z;
      s.f[s.idx(i, j)] = w.real();
      s.g[s.idx(i, j)] = w.imag();
    }
  }
  return s;
}

// Random trigonometric-polynomial torus with wavenumbers up to max_k and
// mode amplitudes amp/(1 + kx^2 + ky^2). Draws are rejected until
// min cos(alpha) >= min_cos and max cos(alpha) <= max_cos; the amplitude is
// shrunk every 25 consecutive rejections so the loop terminates.
inline GraphSurface make_random_fourier(int nx, int ny, std::uint64_t seed, double amp = 0.5,
                                        double min_cos = 0.1, double max_cos = 1.0,
                                        int max_k = 3) {
  Rng rng(seed);
  double a = amp;
  for (int attempt = 1; attempt <= 400; ++attempt) {
    GraphSurface s = make_flat_torus(nx, ny);
    for (std::vector<double>* field : {&s.f, &s.g}) {
      for (int kx = 0; kx <= max_k; ++kx) {
        for (int ky = 0; ky <= max_k; ++ky) {
          if (kx == 0 && ky == 0) continue;
          const double decay = 1.0 / (1.0 + kx * kx + ky * ky);
          const double c1 = rng.uniform(-a, a) * decay;
          const double c2 = rng.uniform(-a, a) * decay;
          const double c3 = rng.uniform(-a, a) * decay;
          const double c4 = rng.uniform(-a, a) * decay;
          for (int i = 0; i < nx; ++i) {
            const double cx = std::cos(kx * i * s.hx), sx = std::sin(kx * i * s.hx);
            for (int j = 0; j < ny; ++j) {
              const double cy = std::cos(ky * j * s.hy), sy = std::sin(ky * j * s.hy);
              (*field)[s.idx(i, j)] += c1 * cx * cy + c2 * sx * cy + c3 * cx * sy + c4 * sx * sy;
            }
          }
        }
      }
    }
    const CosAlphaRange r = cos_alpha_range(s);
    if (r.min_cos >= min_cos && r.max_cos <= max_cos) return s;
    if (attempt % 25 == 0) a *= 0.8;
  }
  throw Error("make_random_fourier: no admissible surface within 400 attempts");
}

// Seeded smooth ambient variation field on a torus grid: each of the four
// components is a trigonometric polynomial with wavenumbers up to max_k and
// coefficients U(-1,1)/(1 + kx^2 + ky^2). Used by the first-variation checks.
inline std::vector<Vec4> make_fourier_variation_field(const GraphSurface& s,
                                                      std::uint64_t seed, int max_k = 2) {
  Rng rng(seed);
  std::vector<Vec4> X(static_cast<std::size_t>(s.nx) * s.ny, Vec4{0.0, 0.0, 0.0, 0.0});
  for (int comp = 0; comp < 4; ++comp) {
    for (int kx = 0; kx <= max_k; ++kx) {
      for (int ky = 0; ky <= max_k; ++ky) {
        if (kx == 0 && ky == 0) continue;
        const double decay = 1.0 / (1.0 + kx * kx + ky * ky);
        const double c1 = rng.uniform(-1.0, 1.0) * decay;
        const double c2 = rng.uniform(-1.0, 1.0) * decay;
        const double c3 = rng.uniform(-1.0, 1.0) * decay;
        const double c4 = rng.uniform(-1.0, 1.0) * decay;
        for (int i = 0; i < s.nx; ++i) {
          const double cx = std::cos(kx * i * s.hx), sx = std::sin(kx * i * s.hx);
          for (int j = 0; j < s.ny; ++j) {
            const double cy = std::cos(ky * j * s.hy), sy = std::sin(ky * j * s.hy);
            X[s.idx(i, j)][comp] +=
                c1 * cx * cy + c2 * sx * cy + c3 * cx * sy + c4 * sx * sy;
          }
        }
      }
    }
  }
  return X;
}

// Fixed wavy torus used by convergence studies: analytic, symplectic
// everywhere (min cos(alpha) ~ 0.83), with all curvature quantities active.
inline GraphSurface make_reference_torus(int n) {
  GraphSurface s = make_flat_torus(n, n);
  for (int i = 0; i < n; ++i) {
    const double x = i * s.hx;
    for (int j = 0; j < n; ++j) {
      const double y = j * s.hy;
      s.f[s.idx(i, j)] = 0.5 * std::sin(x) + 0.1 * std::sin(x) * std::sin(y);
      s.g[s.idx(i, j)] = 0.5 * std::cos(x) + 0.1 * std::sin(y);
    }
  }
  return s;
}

}  // namespace kaf
