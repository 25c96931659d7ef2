// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kaf/core.hpp"
#include "kaf/el_system.hpp"
#include "kaf/flow.hpp"
#include "kaf/grid.hpp"

namespace kaf {

namespace detail {

inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Grid files. Header line "KAF1 nx ny hx hy mode", then nx*ny data lines
// "i j f g" in row-major order (i outer). Values are %.17g, so a write/read
// round trip is bit-exact.

inline void write_kaf(const std::string& path, const GraphSurface& s) {
  std::ofstream out(path);
  if (!out) throw IoError("write_kaf: cannot open " + path);
  out << "KAF1 " << s.nx << ' ' << s.ny << ' ' << detail::fmt17(s.hx) << ' '
      << detail::fmt17(s.hy) << ' ' << to_string(s.mode) << '\n';
  for (int i = 0; i < s.nx; ++i)
    for (int j = 0; j < s.ny; ++j)
      out << i << ' ' << j << ' ' << detail::fmt17(s.f[s.idx(i, j)]) << ' '
          << detail::fmt17(s.g[s.idx(i, j)]) << '\n';
  if (!out) throw IoError("write_kaf: write failed for " + path);
}

inline GraphSurface read_kaf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("read_kaf: cannot open " + path);
  std::string magic, mode_tok;
  int nx = 0, ny = 0;
  double hx = 0, hy = 0;
  if (!(in >> magic >> nx >> ny >> hx >> hy >> mode_tok))
    throw ParseError("read_kaf: malformed header in " + path);
  if (magic != "KAF1") throw ParseError("read_kaf: not a KAF1 file: " + path);
  DomainMode mode;
  if (mode_tok == "PeriodicTorus")
    mode = DomainMode::PeriodicTorus;
  else if (mode_tok == "OpenPatch")
    mode = DomainMode::OpenPatch;
  else
    throw ParseError("read_kaf: unknown mode token '" + mode_tok + "' in " + path);
  GraphSurface s(nx, ny, hx, hy, mode);  // throws ValidationError on bad dims
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      int ri, rj;
      double f, g;
      if (!(in >> ri >> rj >> f >> g))
        throw ParseError("read_kaf: truncated data at row (" + std::to_string(i) + "," +
                         std::to_string(j) + ") in " + path);
      if (ri != i || rj != j)
        throw ParseError("read_kaf: row order mismatch at (" + std::to_string(i) + "," +
                         std::to_string(j) + ") in " + path);
      s.f[s.idx(i, j)] = f;
      s.g[s.idx(i, j)] = g;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Diagnostics CSV. The header is fixed; rows are %.17g, so identical runs
// produce byte-identical files.

inline constexpr const char* kCsvHeader =
    "t,L,area,symplectic_area,min_cos_alpha,max_cos_alpha,residual_linf,"
    "dL_dt_observed,dL_dt_predicted";

inline void write_csv(const std::string& path, const std::vector<DiagnosticsRecord>& recs) {
  std::ofstream out(path);
  if (!out) throw IoError("write_csv: cannot open " + path);
  out << kCsvHeader << '\n';
  for (const DiagnosticsRecord& r : recs) {
    out << detail::fmt17(r.t) << ',' << detail::fmt17(r.L) << ',' << detail::fmt17(r.area)
        << ',' << detail::fmt17(r.symplectic_area) << ',' << detail::fmt17(r.min_cos_alpha)
        << ',' << detail::fmt17(r.max_cos_alpha) << ',' << detail::fmt17(r.residual_linf)
        << ',' << detail::fmt17(r.dL_dt_observed) << ',' << detail::fmt17(r.dL_dt_predicted)
        << '\n';
  }
  if (!out) throw IoError("write_csv: write failed for " + path);
}

// ---------------------------------------------------------------------------
// Heatmaps: binary PPM (P6), linear grayscale between the recorded min and
// max of the field; nodes where the field is undefined (stencil margin on an
// open patch) are painted black. The min/max go to a "<path>.txt" sidecar.

enum class HeatmapField { CosAlpha, Residual, GaussCurvature };

inline const char* to_string(HeatmapField f) {
  switch (f) {
    case HeatmapField::CosAlpha: return "cos_alpha";
    case HeatmapField::Residual: return "residual";
    default: return "gauss_curvature";
  }
}

inline void write_heatmap(const std::string& path, const GraphSurface& s, HeatmapField field) {
  const int margin = (field == HeatmapField::CosAlpha) ? 1 : 2;
  std::vector<double> val(static_cast<size_t>(s.nx) * s.ny, 0.0);
  std::vector<char> defined(static_cast<size_t>(s.nx) * s.ny, 0);
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (int i = 0; i < s.nx; ++i) {
    for (int j = 0; j < s.ny; ++j) {
      if (!s.interior(i, j, margin)) continue;
      double v;
      switch (field) {
        case HeatmapField::CosAlpha: v = first_jet(s, i, j).cos_alpha; break;
        case HeatmapField::Residual: v = norm(ambient_el(second_jet(s, i, j))); break;
        default: v = gauss_curvature_intrinsic(s, i, j); break;
      }
      val[s.idx(i, j)] = v;
      defined[s.idx(i, j)] = 1;
      lo = any ? std::min(lo, v) : v;
      hi = any ? std::max(hi, v) : v;
      any = true;
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("write_heatmap: cannot open " + path);
  out << "P6\n" << s.nx << ' ' << s.ny << "\n255\n";
  const double span = hi - lo;
  for (int row = 0; row < s.ny; ++row) {
    const int j = s.ny - 1 - row;  // image rows top-down, +y up
    for (int i = 0; i < s.nx; ++i) {
      unsigned char level = 0;
      if (defined[s.idx(i, j)]) {
        level = (span > 0.0)
                    ? static_cast<unsigned char>(
                          0.5 + 255.0 * (val[s.idx(i, j)] - lo) / span)
                    : static_cast<unsigned char>(128);
      }
      const char px[3] = {static_cast<char>(level), static_cast<char>(level),
                          static_cast<char>(level)};
      out.write(px, 3);
    }
  }
  if (!out) throw IoError("write_heatmap: write failed for " + path);
  std::ofstream side(path + ".txt");
  if (!side) throw IoError("write_heatmap: cannot open " + path + ".txt");
  side << "field " << to_string(field) << "\nmin " << detail::fmt17(lo) << "\nmax "
       << detail::fmt17(hi) << '\n';
  if (!side) throw IoError("write_heatmap: write failed for " + path + ".txt");
}

}  // namespace kaf
