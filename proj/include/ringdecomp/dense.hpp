#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "ringdecomp/quat.hpp"

namespace ringdecomp {

using cplx = std::complex<double>;

// Field operations the generic kernels need. Quaternion operands keep their
// order, so every kernel written against these works over H as well.
inline double conj_of(double x) { return x; }
inline cplx conj_of(const cplx& z) { return std::conj(z); }
inline Quat conj_of(const Quat& q) { return conj(q); }

inline double abs2_of(double x) { return x * x; }
inline double abs2_of(const cplx& z) { return std::norm(z); }
inline double abs2_of(const Quat& q) { return norm2(q); }

inline double real_of(double x) { return x; }
inline double real_of(const cplx& z) { return z.real(); }
inline double real_of(const Quat& q) { return q.w; }

/// Small dense row-major matrix over double, complex or quaternion entries.
template <class K>
class Dense {
 public:
  Dense() = default;
  Dense(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K(0.0)) {}

  static Dense identity(std::size_t n) {
    Dense m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1.0);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Dense block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Dense b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Dense& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  std::vector<K> col(std::size_t j) const {
    std::vector<K> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_col(std::size_t j, const std::vector<K>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  friend Dense operator*(const Dense& a, const Dense& b) {
    Dense r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend Dense operator+(Dense a, const Dense& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Dense operator-(Dense a, const Dense& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Dense operator*(double s, Dense a) {
    for (auto& v : a.data_) v = s * v;
    return a;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> data_;
};

using RMat = Dense<double>;
using CMat = Dense<cplx>;
using QMat = Dense<Quat>;

template <class K>
Dense<K> adjoint(const Dense<K>& m) {
  Dense<K> t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = conj_of(m(i, j));
  return t;
}

template <class K>
Dense<K> transpose(const Dense<K>& m) {
  Dense<K> t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

template <class K>
double max_abs(const Dense<K>& m) {
  double v = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v = std::max(v, std::sqrt(abs2_of(m(i, j))));
  return v;
}

template <class K>
Dense<K> block_diag(const Dense<K>& a, const Dense<K>& b) {
  Dense<K> r(a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

template <class K>
Dense<K> permute_cols(const Dense<K>& m, const std::vector<std::size_t>& perm) {
  Dense<K> r(m.rows(), perm.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < perm.size(); ++k) r(i, k) = m(i, perm[k]);
  return r;
}

inline CMat to_complex(const RMat& m) {
  CMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

}  // namespace ringdecomp
