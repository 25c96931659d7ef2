// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kaf {

inline constexpr double kPi = 3.14159265358979323846;

// Frame construction divides by sin(alpha); below this floor the tangent
// plane is treated as a complex line and frame-based formulas are refused.
inline constexpr double kEpsFrame = 1e-8;

// Gram determinant floor below which a tangent pair is considered parallel.
inline constexpr double kEpsGram = 1e-14;

// ---------------------------------------------------------------------------
// Ambient R^4 vectors.

struct Vec4 {
  double v[4]{0.0, 0.0, 0.0, 0.0};

  double& operator[](int i) { return v[i]; }
  double operator[](int i) const { return v[i]; }
};

inline Vec4 operator+(const Vec4& a, const Vec4& b) {
  return {a.v[0] + b.v[0], a.v[1] + b.v[1], a.v[2] + b.v[2], a.v[3] + b.v[3]};
}
inline Vec4 operator-(const Vec4& a, const Vec4& b) {
  return {a.v[0] - b.v[0], a.v[1] - b.v[1], a.v[2] - b.v[2], a.v[3] - b.v[3]};
}
inline Vec4 operator*(double s, const Vec4& a) {
  return {s * a.v[0], s * a.v[1], s * a.v[2], s * a.v[3]};
}
inline Vec4 operator-(const Vec4& a) { return {-a.v[0], -a.v[1], -a.v[2], -a.v[3]}; }

inline double dot(const Vec4& a, const Vec4& b) {
  return a.v[0] * b.v[0] + a.v[1] * b.v[1] + a.v[2] * b.v[2] + a.v[3] * b.v[3];
}
inline double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

// ---------------------------------------------------------------------------
// Error hierarchy. Every failure mode carries a message naming the condition.

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct OutOfDomainError : Error {
  using Error::Error;
};
struct NotSymplecticError : Error {
  using Error::Error;
};
struct ComplexPointError : Error {
  using Error::Error;
};
struct DegenerateTangentError : Error {
  using Error::Error;
};
struct NearComplexPointError : Error {
  using Error::Error;
};
struct StepTooLargeError : Error {
  using Error::Error;
};
struct SymplecticityLostError : Error {
  using Error::Error;
};
struct PerturbationTooLargeError : Error {
  using Error::Error;
};
struct ZeroDirectionError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& field, const std::string& why)
      : Error(field + ": " + why), field_name(field) {}
  std::string field_name;
};
struct IoError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Deterministic RNG shared by all randomized suites.

// SplitMix64: tiny, seedable, identical output on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [lo, hi) with 53-bit resolution.
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::uint64_t state_;
};

}  // namespace kaf
