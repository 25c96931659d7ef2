// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kaf/core.hpp"
#include "kaf/jets.hpp"

namespace kaf {

enum class DomainMode { PeriodicTorus, OpenPatch };

inline const char* to_string(DomainMode m) {
  return m == DomainMode::PeriodicTorus ? "PeriodicTorus" : "OpenPatch";
}

// Discrete graph surface: height fields f, g sampled on an nx-by-ny grid with
// spacings hx, hy. Index i runs along x, j along y; storage is row-major with
// i outer. PeriodicTorus wraps indices; OpenPatch exposes jets only on
// interior nodes (margin 1 for first jets, margin 2 for second jets and every
// nested consumer). Immutable by convention once built: all operations are
// read-only, so concurrent per-node evaluation is safe.
struct GraphSurface {
  int nx = 0, ny = 0;
  double hx = 0, hy = 0;
  DomainMode mode = DomainMode::PeriodicTorus;
  std::vector<double> f, g;

  GraphSurface() = default;
  GraphSurface(int nx_, int ny_, double hx_, double hy_, DomainMode mode_)
      : nx(nx_), ny(ny_), hx(hx_), hy(hy_), mode(mode_) {
    if (nx < 8) throw ValidationError("nx", "grid size must be >= 8");
    if (ny < 8) throw ValidationError("ny", "grid size must be >= 8");
    if (!(hx > 0)) throw ValidationError("hx", "spacing must be > 0");
    if (!(hy > 0)) throw ValidationError("hy", "spacing must be > 0");
    f.assign(static_cast<size_t>(nx) * ny, 0.0);
    g.assign(static_cast<size_t>(nx) * ny, 0.0);
  }

  size_t idx(int i, int j) const { return static_cast<size_t>(i) * ny + j; }

  int wrap_x(int i) const { return ((i % nx) + nx) % nx; }
  int wrap_y(int j) const { return ((j % ny) + ny) % ny; }

  double fat(int i, int j) const { return f[idx(wrap_x(i), wrap_y(j))]; }
  double gat(int i, int j) const { return g[idx(wrap_x(i), wrap_y(j))]; }

  // True when (i, j) is at least `margin` nodes away from every boundary
  // (always true on the torus).
  bool interior(int i, int j, int margin) const {
    if (mode == DomainMode::PeriodicTorus) return i >= 0 && i < nx && j >= 0 && j < ny;
    return i >= margin && i < nx - margin && j >= margin && j < ny - margin;
  }

  void require_interior(int i, int j, int margin, const char* who) const {
    if (!interior(i, j, margin))
      throw OutOfDomainError(std::string(who) + ": node (" + std::to_string(i) + "," +
                             std::to_string(j) + ") lacks stencil margin " +
                             std::to_string(margin));
  }
};

namespace detail {

// Centered first/second differences of one height field.
inline double dx(const std::vector<double>& u, const GraphSurface& s, int i, int j) {
  return (u[s.idx(s.wrap_x(i + 1), s.wrap_y(j))] - u[s.idx(s.wrap_x(i - 1), s.wrap_y(j))]) /
         (2.0 * s.hx);
}
inline double dy(const std::vector<double>& u, const GraphSurface& s, int i, int j) {
  return (u[s.idx(s.wrap_x(i), s.wrap_y(j + 1))] - u[s.idx(s.wrap_x(i), s.wrap_y(j - 1))]) /
         (2.0 * s.hy);
}
inline double dxx(const std::vector<double>& u, const GraphSurface& s, int i, int j) {
  return (u[s.idx(s.wrap_x(i + 1), s.wrap_y(j))] - 2.0 * u[s.idx(s.wrap_x(i), s.wrap_y(j))] +
          u[s.idx(s.wrap_x(i - 1), s.wrap_y(j))]) /
         (s.hx * s.hx);
}
inline double dyy(const std::vector<double>& u, const GraphSurface& s, int i, int j) {
  return (u[s.idx(s.wrap_x(i), s.wrap_y(j + 1))] - 2.0 * u[s.idx(s.wrap_x(i), s.wrap_y(j))] +
          u[s.idx(s.wrap_x(i), s.wrap_y(j - 1))]) /
         (s.hy * s.hy);
}
inline double dxy(const std::vector<double>& u, const GraphSurface& s, int i, int j) {
  return (u[s.idx(s.wrap_x(i + 1), s.wrap_y(j + 1))] - u[s.idx(s.wrap_x(i + 1), s.wrap_y(j - 1))] -
          u[s.idx(s.wrap_x(i - 1), s.wrap_y(j + 1))] + u[s.idx(s.wrap_x(i - 1), s.wrap_y(j - 1))]) /
         (4.0 * s.hx * s.hy);
}

}  // namespace detail

// O(h^2) centered first jet at a node. Torus indices wrap, so stencil code
// may address i +/- 1 etc. without wrapping at the call site.
inline FirstJet first_jet(const GraphSurface& s, int i, int j) {
  if (s.mode == DomainMode::PeriodicTorus) {
    i = s.wrap_x(i);
    j = s.wrap_y(j);
  }
  s.require_interior(i, j, 1, "first_jet");
  return make_first_jet(detail::dx(s.f, s, i, j), detail::dy(s.f, s, i, j),
                        detail::dx(s.g, s, i, j), detail::dy(s.g, s, i, j));
}

// O(h^2) centered second jet (compact stencils: 3-point pure, 4-corner cross).
inline SecondJet second_jet(const GraphSurface& s, int i, int j) {
  if (s.mode == DomainMode::PeriodicTorus) {
    i = s.wrap_x(i);
    j = s.wrap_y(j);
  }
  s.require_interior(i, j, 2, "second_jet");
  return make_second_jet(detail::dx(s.f, s, i, j), detail::dy(s.f, s, i, j),
                         detail::dx(s.g, s, i, j), detail::dy(s.g, s, i, j),
                         detail::dxx(s.f, s, i, j), detail::dxy(s.f, s, i, j),
                         detail::dyy(s.f, s, i, j), detail::dxx(s.g, s, i, j),
                         detail::dxy(s.g, s, i, j), detail::dyy(s.g, s, i, j));
}

// Second jet whose second derivatives are iterated centered first differences
// (wide stencils). Still O(h^2), but exactly consistent with taking centered
// first differences of a centered-first-difference field -- the variant needed
// when a discrete derivative of a jet-built field must match a jet formula to
// truncation-error accuracy rather than to a wider h^2 floor.
inline SecondJet second_jet_wide(const GraphSurface& s, int i, int j) {
  if (s.mode == DomainMode::PeriodicTorus) {
    i = s.wrap_x(i);
    j = s.wrap_y(j);
  }
  s.require_interior(i, j, 2, "second_jet_wide");
  auto dfx = [&](int ii, int jj) { return detail::dx(s.f, s, ii, jj); };
  auto dfy = [&](int ii, int jj) { return detail::dy(s.f, s, ii, jj); };
  auto dgx = [&](int ii, int jj) { return detail::dx(s.g, s, ii, jj); };
  auto dgy = [&](int ii, int jj) { return detail::dy(s.g, s, ii, jj); };
  const double fxx = (dfx(i + 1, j) - dfx(i - 1, j)) / (2.0 * s.hx);
  const double fxy = (dfx(i, j + 1) - dfx(i, j - 1)) / (2.0 * s.hy);
  const double fyy = (dfy(i, j + 1) - dfy(i, j - 1)) / (2.0 * s.hy);
  const double gxx = (dgx(i + 1, j) - dgx(i - 1, j)) / (2.0 * s.hx);
  const double gxy = (dgx(i, j + 1) - dgx(i, j - 1)) / (2.0 * s.hy);
  const double gyy = (dgy(i, j + 1) - dgy(i, j - 1)) / (2.0 * s.hy);
  return make_second_jet(dfx(i, j), dfy(i, j), dgx(i, j), dgy(i, j),  //
                         fxx, fxy, fyy, gxx, gxy, gyy);
}

// Quadrature description: node list plus weights. On the torus every node
// carries weight hx*hy (the trapezoidal rule on a periodic grid). On an open
// patch the quadrature runs over the margin-1 interior sub-grid with
// trapezoidal edge weights (1/2 on sub-grid edges, 1/4 at its corners).
struct QuadratureNode {
  int i, j;
  double w;
};

inline std::vector<QuadratureNode> quadrature_nodes(const GraphSurface& s, int margin = 1) {
  std::vector<QuadratureNode> out;
  if (s.mode == DomainMode::PeriodicTorus) {
    out.reserve(static_cast<size_t>(s.nx) * s.ny);
    for (int i = 0; i < s.nx; ++i)
      for (int j = 0; j < s.ny; ++j) out.push_back({i, j, s.hx * s.hy});
    return out;
  }
  const int ilo = margin, ihi = s.nx - 1 - margin;
  const int jlo = margin, jhi = s.ny - 1 - margin;
  if (ihi <= ilo || jhi <= jlo)
    throw OutOfDomainError("quadrature_nodes: patch too small for margin " +
                           std::to_string(margin));
  for (int i = ilo; i <= ihi; ++i) {
    const double wi = (i == ilo || i == ihi) ? 0.5 : 1.0;
    for (int j = jlo; j <= jhi; ++j) {
      const double wj = (j == jlo || j == jhi) ? 0.5 : 1.0;
      out.push_back({i, j, wi * wj * s.hx * s.hy});
    }
  }
  return out;
}

}  // namespace kaf
