#pragma once

#include <complex>
#include <vector>

#include "ringdecomp/decomp.hpp"

namespace th {

using namespace ringdecomp;

inline Scalar re(double x) { return Scalar::from_real(RingId::Real, x); }
inline Scalar cx(double a, double b = 0.0) { return Scalar::complex({a, b}); }
inline Scalar dt(double a, double b) { return Scalar::dual(RingId::DualTrivial, a, b); }
inline Scalar dc(double a, double b) { return Scalar::dual(RingId::DualConj, a, b); }
inline Scalar qt(double w, double x, double y, double z) { return Scalar::quaternion({w, x, y, z}); }
inline Scalar in(std::int64_t n) { return Scalar::integer(n); }

/// Row-major matrix of real values lifted into `ring`.
inline Matrix lift(RingId ring, std::size_t r, std::size_t c, const std::vector<double>& v) {
  Matrix m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar::from_real(ring, v[i * c + j]);
  return m;
}

inline Matrix ints(std::size_t n, const std::vector<std::int64_t>& v) {
  Matrix m(RingId::IntegerTrivial, n, n);
  for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = Scalar::integer(v[i]);
  return m;
}

inline Matrix cplx_matrix(const CMat& a) {
  Matrix m(RingId::Complex, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Scalar::complex(a(i, j));
  return m;
}

/// The 2 x 3 complex example with singular values 3 and 1.
inline Matrix example_2x3() { return lift(RingId::Complex, 2, 3, {1, 2, 0, 2, 1, 0}); }

}  // namespace th
