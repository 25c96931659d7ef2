// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <set>
#include <sstream>
#include <string>

#include "kaf/core.hpp"
#include "kaf/io.hpp"
#include "kaf/presets.hpp"

namespace kaf {

// Run configuration: plain key=value text, '#' starts a comment, unknown keys
// are rejected. Spacings hx, hy of 0 mean "let the preset choose".
struct RunConfig {
  std::string preset = "flat";
  int nx = 64, ny = 64;
  double hx = 0.0, hy = 0.0;
  double eps = 0.05, eps_g = 0.0;  // perturbed_torus amplitudes
  int kx = 1, ky = 1;              // perturbed_torus wavenumbers
  double slope = 1.0;              // sheared_plane
  double x0 = 0.3, y0 = 0.3;       // holomorphic_patch offset
  double amp = 0.5;                // random_fourier amplitude
  double min_cos = 0.1, max_cos = 1.0;
  int max_k = 3;
  std::uint64_t seed = 1;
  double kappa = 0.1;
  double t_end = 1.0;
  long record_every = 10;
  double tol_converged = 1e-8;
  std::string out_dir = "out";
  std::string file;      // from_file source
  long samples = 10000;  // ellipticity sampling
  double delta_int = 0.05;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& v, int line) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": bad numeric value '" + v + "'");
  }
}

inline long parse_long(const std::string& v, int line) {
  try {
    size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": bad integer value '" + v + "'");
  }
}

inline std::uint64_t parse_u64(const std::string& v, int line) {
  try {
    size_t pos = 0;
    const unsigned long long d = std::stoull(v, &pos);
    if (pos != v.size() || v.find('-') != std::string::npos)
      throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": bad seed value '" + v + "'");
  }
}

}  // namespace detail

inline void validate_config(const RunConfig& c) {
  static const std::set<std::string> presets = {"flat",          "perturbed_torus",
                                                "sheared_plane", "holomorphic_patch",
                                                "random_fourier", "from_file"};
  if (!presets.count(c.preset))
    throw ValidationError("preset", "unknown preset '" + c.preset + "'");
  if (c.nx < 8) throw ValidationError("nx", "must be an integer >= 8");
  if (c.ny < 8) throw ValidationError("ny", "must be an integer >= 8");
  if (c.hx < 0.0) throw ValidationError("hx", "must be > 0 (or 0 for automatic)");
  if (c.hy < 0.0) throw ValidationError("hy", "must be > 0 (or 0 for automatic)");
  if (c.kx < 0) throw ValidationError("kx", "must be >= 0");
  if (c.ky < 0) throw ValidationError("ky", "must be >= 0");
  if (!(c.amp > 0.0)) throw ValidationError("amp", "must be > 0");
  if (!(c.min_cos > 0.0 && c.min_cos <= 1.0))
    throw ValidationError("min_cos", "must lie in (0, 1]");
  if (!(c.max_cos >= c.min_cos && c.max_cos <= 1.0))
    throw ValidationError("max_cos", "must lie in [min_cos, 1]");
  if (c.max_k < 1 || c.max_k > 16) throw ValidationError("max_k", "must lie in [1, 16]");
  if (!(c.kappa > 0.0)) throw ValidationError("kappa", "must be > 0");
  if (!(c.t_end > 0.0)) throw ValidationError("t_end", "must be > 0");
  if (c.record_every < 1) throw ValidationError("record_every", "must be >= 1");
  if (!(c.tol_converged > 0.0)) throw ValidationError("tol_converged", "must be > 0");
  if (c.samples < 1) throw ValidationError("samples", "must be >= 1");
  if (!(c.delta_int > 0.0 && c.delta_int < 1.0))
    throw ValidationError("delta_int", "must lie in (0, 1)");
  if (c.preset == "from_file" && c.file.empty())
    throw ValidationError("file", "required when preset=from_file");
}

inline RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string ln = detail::trim(raw);
    if (ln.empty()) continue;
    const auto eq = ln.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(line) + ": expected key=value");
    const std::string key = detail::trim(ln.substr(0, eq));
    const std::string val = detail::trim(ln.substr(eq + 1));
    if (key == "preset") c.preset = val;
    else if (key == "nx") c.nx = static_cast<int>(detail::parse_long(val, line));
    else if (key == "ny") c.ny = static_cast<int>(detail::parse_long(val, line));
    else if (key == "hx") c.hx = detail::parse_double(val, line);
    else if (key == "hy") c.hy = detail::parse_double(val, line);
    else if (key == "eps") c.eps = detail::parse_double(val, line);
    else if (key == "eps_g") c.eps_g = detail::parse_double(val, line);
    else if (key == "kx") c.kx = static_cast<int>(detail::parse_long(val, line));
    else if (key == "ky") c.ky = static_cast<int>(detail::parse_long(val, line));
    else if (key == "slope") c.slope = detail::parse_double(val, line);
    else if (key == "x0") c.x0 = detail::parse_double(val, line);
    else if (key == "y0") c.y0 = detail::parse_double(val, line);
    else if (key == "amp") c.amp = detail::parse_double(val, line);
    else if (key == "min_cos") c.min_cos = detail::parse_double(val, line);
    else if (key == "max_cos") c.max_cos = detail::parse_double(val, line);
    else if (key == "max_k") c.max_k = static_cast<int>(detail::parse_long(val, line));
    else if (key == "seed") c.seed = detail::parse_u64(val, line);
    else if (key == "kappa") c.kappa = detail::parse_double(val, line);
    else if (key == "t_end") c.t_end = detail::parse_double(val, line);
    else if (key == "record_every") c.record_every = detail::parse_long(val, line);
    else if (key == "tol_converged") c.tol_converged = detail::parse_double(val, line);
    else if (key == "out_dir") c.out_dir = val;
    else if (key == "file") c.file = val;
    else if (key == "samples") c.samples = detail::parse_long(val, line);
    else if (key == "delta_int") c.delta_int = detail::parse_double(val, line);
    else
      throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
  }
  validate_config(c);
  return c;
}

// Builds the initial surface a config describes. Torus presets fix the
// spacing at 2*pi/n; patch presets honor hx, hy when given.
inline GraphSurface build_surface(const RunConfig& c) {
  if (c.preset == "flat") return make_flat_torus(c.nx, c.ny);
  if (c.preset == "perturbed_torus")
    return make_perturbed_torus(c.nx, c.ny, c.eps, c.kx, c.ky, c.eps_g);
  if (c.preset == "sheared_plane")
    return make_sheared_plane(c.nx, c.ny, c.slope, c.hx, c.hy);
  if (c.preset == "holomorphic_patch")
    return make_holomorphic_patch(c.nx, c.ny, c.hx > 0 ? c.hx : 1.0 / (c.nx - 1),
                                  c.hy > 0 ? c.hy : 1.0 / (c.ny - 1), c.x0, c.y0);
  if (c.preset == "random_fourier")
    return make_random_fourier(c.nx, c.ny, c.seed, c.amp, c.min_cos, c.max_cos, c.max_k);
  return read_kaf(c.file);  // from_file; validate_config guaranteed the name
}

}  // namespace kaf
