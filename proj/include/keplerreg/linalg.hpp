#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace keplerreg {

using cxd = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;  // index 0 = scalar part, 1..3 spatial
using C2 = std::array<cxd, 2>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 spatial(const Vec4& v) { return {v[1], v[2], v[3]}; }
/// 4-vector norm sqrt(v0^2 + |v_spatial|^2).
inline double norm4(const Vec4& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

inline cxd inner(const C2& a, const C2& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}
inline double norm2(const C2& a) { return std::norm(a[0]) + std::norm(a[1]); }

/// sigma_k b for the Pauli matrices, k in {1,2,3}.
inline C2 pauli_apply(int k, const C2& b) {
  const cxd i(0.0, 1.0);
  switch (k) {
    case 1: return {b[1], b[0]};
    case 2: return {-i * b[1], i * b[0]};
    default: return {b[0], -b[1]};
  }
}

/// <a, sigma_k b>.
inline cxd pauli_form(int k, const C2& a, const C2& b) {
  return inner(a, pauli_apply(k, b));
}

}  // namespace keplerreg
