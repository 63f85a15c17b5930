#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "ringdecomp/quat.hpp"

namespace ringdecomp {

/// A tag fixes both the carrier ring and its involution. The two dual tags share
/// the carrier R[eps]/(eps^2) and differ only in `*`.
enum class RingId {
  Zero,
  Real,
  Complex,
  DualTrivial,        // (a + b eps)* = a + b eps
  DualConj,           // (a + b eps)* = a - b eps
  Quaternion,
  DoubleComplexSwap,  // C (+) C with (z1, z2)* = (z2, z1)
  IntegerTrivial,
};

inline constexpr std::array<RingId, 8> kAllRings = {
    RingId::Zero,       RingId::Real,       RingId::Complex,           RingId::DualTrivial,
    RingId::DualConj,   RingId::Quaternion, RingId::DoubleComplexSwap, RingId::IntegerTrivial};

/// CLI / JSON name: zero, real, complex, dual-trivial, dual-conj, quaternion,
/// double-complex, integer.
std::string_view ring_name(RingId ring);
RingId parse_ring(std::string_view name);  // throws Error(Parse)

constexpr bool is_dual(RingId r) { return r == RingId::DualTrivial || r == RingId::DualConj; }

/// Element of one of the supported *-rings. Floating rings store binary64
/// components; the integer ring is exact.
///
/// Component layout: Real (a); Complex (a, b); Dual (a, b) = a + b eps;
/// Quaternion (a, b, c, d); DoubleComplexSwap (a, b, c, d) = (a + bi, c + di).
class Scalar {
 public:
  Scalar() = default;  // real zero

  static Scalar zero(RingId ring);
  static Scalar one(RingId ring);
  /// Image of a real number under the unital embedding R -> ring. For the
  /// integer ring `value` must be integral.
  static Scalar from_real(RingId ring, double value);
  static Scalar from_components(RingId ring, const std::array<double, 4>& c);
  static Scalar integer(std::int64_t n);
  static Scalar complex(std::complex<double> z);
  static Scalar dual(RingId ring, double a, double b);
  static Scalar quaternion(const Quat& q);
  static Scalar double_complex(std::complex<double> first, std::complex<double> second);

  RingId ring() const noexcept { return ring_; }
  double component(std::size_t i) const noexcept { return c_[i]; }
  const std::array<double, 4>& components() const noexcept { return c_; }
  std::int64_t integer_value() const noexcept { return n_; }

  // Typed views; only meaningful for the matching ring.
  std::complex<double> as_complex() const { return {c_[0], c_[1]}; }
  Quat as_quat() const { return {c_[0], c_[1], c_[2], c_[3]}; }
  std::complex<double> first() const { return {c_[0], c_[1]}; }
  std::complex<double> second() const { return {c_[2], c_[3]}; }

  bool is_zero() const noexcept;

  friend bool operator==(const Scalar& a, const Scalar& b) = default;

 private:
  RingId ring_ = RingId::Real;
  std::array<double, 4> c_{};
  std::int64_t n_ = 0;
};

Scalar operator+(const Scalar& x, const Scalar& y);
Scalar operator-(const Scalar& x, const Scalar& y);
Scalar operator-(const Scalar& x);
/// Ring product; respects operand order in the quaternions.
Scalar operator*(const Scalar& x, const Scalar& y);

inline Scalar mul(const Scalar& x, const Scalar& y) { return x * y; }
/// The involution. Anti-multiplicative: conj(x y) = conj(y) conj(x).
Scalar conj(const Scalar& x);
/// Two-sided inverse; throws Error(NotInvertible).
Scalar inv(const Scalar& x);

/// Largest absolute component (the per-entry piece of the max norm).
double max_abs(const Scalar& x);
bool approx_equal(const Scalar& x, const Scalar& y, double tol = 1e-9);

std::string to_string(const Scalar& x);

}  // namespace ringdecomp
