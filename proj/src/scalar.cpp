#include "ringdecomp/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ringdecomp/error.hpp"

namespace ringdecomp {

namespace {

struct RingEntry {
  RingId id;
  std::string_view name;
};

constexpr std::array<RingEntry, 8> kRingNames = {{
    {RingId::Zero, "zero"},
    {RingId::Real, "real"},
    {RingId::Complex, "complex"},
    {RingId::DualTrivial, "dual-trivial"},
    {RingId::DualConj, "dual-conj"},
    {RingId::Quaternion, "quaternion"},
    {RingId::DoubleComplexSwap, "double-complex"},
    {RingId::IntegerTrivial, "integer"},
}};

void require_same_ring(const Scalar& x, const Scalar& y) {
  if (x.ring() != y.ring()) {
    throw Error(ErrorCode::RingMismatch,
                std::string(ring_name(x.ring())) + " vs " + std::string(ring_name(y.ring())));
  }
}

}  // namespace

std::string_view ring_name(RingId ring) {
  for (const auto& e : kRingNames) {
    if (e.id == ring) return e.name;
  }
  return "unknown";
}

RingId parse_ring(std::string_view name) {
  for (const auto& e : kRingNames) {
    if (e.name == name) return e.id;
  }
  throw Error(ErrorCode::Parse, "unknown ring '" + std::string(name) + "'");
}

Scalar Scalar::zero(RingId ring) {
  Scalar s;
  s.ring_ = ring;
  return s;
}

Scalar Scalar::one(RingId ring) { return from_real(ring, 1.0); }

Scalar Scalar::from_real(RingId ring, double value) {
  Scalar s = zero(ring);
  switch (ring) {
    case RingId::Zero:
      break;
    case RingId::IntegerTrivial:
      if (std::nearbyint(value) != value) {
        throw Error(ErrorCode::NotInteger, "value " + std::to_string(value) + " is not integral");
      }
      s.n_ = static_cast<std::int64_t>(value);
      break;
    case RingId::DoubleComplexSwap:
      s.c_[0] = value;
      s.c_[2] = value;
      break;
    default:
      s.c_[0] = value;
      break;
  }
  return s;
}

Scalar Scalar::from_components(RingId ring, const std::array<double, 4>& c) {
  if (ring == RingId::IntegerTrivial) return from_real(ring, c[0]);
  Scalar s = zero(ring);
  switch (ring) {
    case RingId::Zero:
      break;
    case RingId::Real:
      s.c_[0] = c[0];
      break;
    case RingId::Complex:
    case RingId::DualTrivial:
    case RingId::DualConj:
      s.c_[0] = c[0];
      s.c_[1] = c[1];
      break;
    default:
      s.c_ = c;
      break;
  }
  return s;
}

Scalar Scalar::integer(std::int64_t n) {
  Scalar s = zero(RingId::IntegerTrivial);
  s.n_ = n;
  return s;
}

Scalar Scalar::complex(std::complex<double> z) { return from_components(RingId::Complex, {z.real(), z.imag(), 0, 0}); }

Scalar Scalar::dual(RingId ring, double a, double b) {
  if (!is_dual(ring)) throw Error(ErrorCode::RingMismatch, "dual() needs a dual ring");
  return from_components(ring, {a, b, 0, 0});
}

Scalar Scalar::quaternion(const Quat& q) { return from_components(RingId::Quaternion, {q.w, q.x, q.y, q.z}); }

Scalar Scalar::double_complex(std::complex<double> first, std::complex<double> second) {
  return from_components(RingId::DoubleComplexSwap, {first.real(), first.imag(), second.real(), second.imag()});
}

bool Scalar::is_zero() const noexcept {
  if (ring_ == RingId::IntegerTrivial) return n_ == 0;
  return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  require_same_ring(x, y);
  if (x.ring() == RingId::IntegerTrivial) return Scalar::integer(x.integer_value() + y.integer_value());
  const auto& a = x.components();
  const auto& b = y.components();
  return Scalar::from_components(x.ring(), {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]});
}

Scalar operator-(const Scalar& x) {
  if (x.ring() == RingId::IntegerTrivial) return Scalar::integer(-x.integer_value());
  const auto& a = x.components();
  return Scalar::from_components(x.ring(), {-a[0], -a[1], -a[2], -a[3]});
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
  require_same_ring(x, y);
  const auto& a = x.components();
  const auto& b = y.components();
  switch (x.ring()) {
    case RingId::Zero:
      return x;
    case RingId::Real:
      return Scalar::from_real(RingId::Real, a[0] * b[0]);
    case RingId::Complex:
      return Scalar::complex(x.as_complex() * y.as_complex());
    case RingId::DualTrivial:
    case RingId::DualConj:
      // eps^2 = 0
      return Scalar::dual(x.ring(), a[0] * b[0], a[0] * b[1] + a[1] * b[0]);
    case RingId::Quaternion:
      return Scalar::quaternion(x.as_quat() * y.as_quat());
    case RingId::DoubleComplexSwap:
      return Scalar::double_complex(x.first() * y.first(), x.second() * y.second());
    case RingId::IntegerTrivial:
      return Scalar::integer(x.integer_value() * y.integer_value());
  }
  return x;
}

Scalar conj(const Scalar& x) {
  const auto& a = x.components();
  switch (x.ring()) {
    case RingId::Complex:
      return Scalar::complex(std::conj(x.as_complex()));
    case RingId::DualConj:
      return Scalar::dual(RingId::DualConj, a[0], -a[1]);
    case RingId::Quaternion:
      return Scalar::quaternion(conj(x.as_quat()));
    case RingId::DoubleComplexSwap:
      return Scalar::double_complex(x.second(), x.first());
    default:
      return x;
  }
}

Scalar inv(const Scalar& x) {
  const auto fail = [&x]() { return Error(ErrorCode::NotInvertible, to_string(x)); };
  const auto& a = x.components();
  switch (x.ring()) {
    case RingId::Zero:
      // 0 = 1 in the zero ring.
      return x;
    case RingId::Real:
      if (a[0] == 0.0) throw fail();
      return Scalar::from_real(RingId::Real, 1.0 / a[0]);
    case RingId::Complex:
      if (x.is_zero()) throw fail();
      return Scalar::complex(1.0 / x.as_complex());
    case RingId::DualTrivial:
    case RingId::DualConj:
      // (a + b eps)^-1 = 1/a - (b/a^2) eps
      if (a[0] == 0.0) throw fail();
      return Scalar::dual(x.ring(), 1.0 / a[0], -a[1] / (a[0] * a[0]));
    case RingId::Quaternion:
      if (x.is_zero()) throw fail();
      return Scalar::quaternion(inverse(x.as_quat()));
    case RingId::DoubleComplexSwap:
      if (x.first() == 0.0 || x.second() == 0.0) throw fail();
      return Scalar::double_complex(1.0 / x.first(), 1.0 / x.second());
    case RingId::IntegerTrivial:
      if (x.integer_value() != 1 && x.integer_value() != -1) throw fail();
      return x;
  }
  return x;
}

double max_abs(const Scalar& x) {
  if (x.ring() == RingId::IntegerTrivial) return std::abs(static_cast<double>(x.integer_value()));
  double m = 0.0;
  for (double v : x.components()) m = std::max(m, std::abs(v));
  return m;
}

bool approx_equal(const Scalar& x, const Scalar& y, double tol) {
  if (x.ring() != y.ring()) return false;
  if (x.ring() == RingId::IntegerTrivial) return x.integer_value() == y.integer_value();
  return max_abs(x - y) <= tol;
}

std::string to_string(const Scalar& x) {
  std::ostringstream os;
  const auto& a = x.components();
  switch (x.ring()) {
    case RingId::Zero: os << "0"; break;
    case RingId::Real: os << a[0]; break;
    case RingId::Complex: os << a[0] << (a[1] < 0 ? "-" : "+") << std::abs(a[1]) << "i"; break;
    case RingId::DualTrivial:
    case RingId::DualConj: os << a[0] << (a[1] < 0 ? "-" : "+") << std::abs(a[1]) << "eps"; break;
    case RingId::Quaternion: os << a[0] << "+" << a[1] << "i+" << a[2] << "j+" << a[3] << "k"; break;
    case RingId::DoubleComplexSwap:
      os << "(" << a[0] << "+" << a[1] << "i, " << a[2] << "+" << a[3] << "i)";
      break;
    case RingId::IntegerTrivial: os << x.integer_value(); break;
  }
  return os.str();
}

}  // namespace ringdecomp
