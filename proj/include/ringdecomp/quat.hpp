#pragma once

#include <cmath>
#include <complex>

namespace ringdecomp {

/// Real quaternion w + x i + y j + z k.
struct Quat {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

  constexpr Quat() = default;
  constexpr Quat(double w_) : w(w_) {}  // NOLINT(google-explicit-constructor)
  constexpr Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  friend constexpr Quat operator+(const Quat& a, const Quat& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Quat operator-(const Quat& a, const Quat& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Quat operator-(const Quat& a) { return {-a.w, -a.x, -a.y, -a.z}; }
  // Hamilton product: i^2 = j^2 = k^2 = ijk = -1.
  friend constexpr Quat operator*(const Quat& a, const Quat& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend constexpr Quat operator*(double s, const Quat& a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }
  friend constexpr Quat operator*(const Quat& a, double s) { return s * a; }
  friend constexpr Quat operator/(const Quat& a, double s) { return {a.w / s, a.x / s, a.y / s, a.z / s}; }
  Quat& operator+=(const Quat& b) { return *this = *this + b; }
  Quat& operator-=(const Quat& b) { return *this = *this - b; }
  friend constexpr bool operator==(const Quat&, const Quat&) = default;

  /// Complex pair (a, b) with q = a + b j.
  std::complex<double> simplex() const { return {w, x}; }
  std::complex<double> perplex() const { return {y, z}; }
};

constexpr Quat conj(const Quat& q) { return {q.w, -q.x, -q.y, -q.z}; }
constexpr double norm2(const Quat& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }
inline double abs(const Quat& q) { return std::sqrt(norm2(q)); }
constexpr double real(const Quat& q) { return q.w; }
inline Quat inverse(const Quat& q) { return conj(q) / norm2(q); }

}  // namespace ringdecomp
