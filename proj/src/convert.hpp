#pragma once

// Matrix <-> dense numeric views used by the drivers.

#include <cstddef>

#include "ringdecomp/dense.hpp"
#include "ringdecomp/matrix.hpp"

namespace ringdecomp::detail {

inline RMat component(const Matrix& m, std::size_t c) {
  RMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).component(c);
  return r;
}

inline CMat complex_view(const Matrix& m, std::size_t first_component) {
  CMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(i, j) = cplx(m(i, j).component(first_component), m(i, j).component(first_component + 1));
  return r;
}

template <class K>
Dense<K> to_dense(const Matrix& m);

template <>
inline RMat to_dense<double>(const Matrix& m) {
  return component(m, 0);
}

template <>
inline CMat to_dense<cplx>(const Matrix& m) {
  return complex_view(m, 0);
}

template <>
inline QMat to_dense<Quat>(const Matrix& m) {
  QMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).as_quat();
  return r;
}

inline Scalar lift(RingId ring, double x) { return Scalar::from_real(ring, x); }
inline Scalar lift(RingId, const cplx& z) { return Scalar::complex(z); }
inline Scalar lift(RingId, const Quat& q) { return Scalar::quaternion(q); }

template <class K>
Matrix from_dense(RingId ring, const Dense<K>& d) {
  Matrix m(ring, d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) m(i, j) = lift(ring, d(i, j));
  return m;
}

inline Matrix from_dual(RingId ring, const RMat& a, const RMat& b) {
  Matrix m(ring, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Scalar::dual(ring, a(i, j), b(i, j));
  return m;
}

inline Matrix from_pair(const CMat& first, const CMat& second) {
  Matrix m(RingId::DoubleComplexSwap, first.rows(), first.cols());
  for (std::size_t i = 0; i < first.rows(); ++i)
    for (std::size_t j = 0; j < first.cols(); ++j) m(i, j) = Scalar::double_complex(first(i, j), second(i, j));
  return m;
}

}  // namespace ringdecomp::detail
