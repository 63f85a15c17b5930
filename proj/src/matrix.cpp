#include "ringdecomp/matrix.hpp"

#include <algorithm>
#include <string>

#include "ringdecomp/error.hpp"

namespace ringdecomp {

namespace {

void require_ring(RingId a, RingId b) {
  if (a != b) {
    throw Error(ErrorCode::RingMismatch, std::string(ring_name(a)) + " vs " + std::string(ring_name(b)));
  }
}

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

}  // namespace

Matrix::Matrix(RingId ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(ring)) {}

Matrix::Matrix(RingId ring, std::initializer_list<std::initializer_list<Scalar>> rows) : ring_(ring) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged row list");
    for (const auto& s : row) {
      require_ring(ring, s.ring());
      data_.push_back(s);
    }
  }
}

Matrix Matrix::identity(RingId ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(ring);
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::ShapeMismatch, "block out of range");
  Matrix b(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require_ring(ring_, b.ring());
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw Error(ErrorCode::ShapeMismatch, "block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_ring(a.ring(), b.ring());
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, shape(a) + " + " + shape(b));
  Matrix r(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_ring(a.ring(), b.ring());
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, shape(a) + " - " + shape(b));
  Matrix r(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

Matrix operator*(const Scalar& s, const Matrix& a) {
  Matrix r(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.ring(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Matrix adjoint(const Matrix& m) {
  Matrix t(m.ring(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = conj(m(i, j));
  return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  require_ring(a.ring(), b.ring());
  if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, shape(a) + " * " + shape(b));
  Matrix r(a.ring(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Scalar acc = Scalar::zero(a.ring());
      for (std::size_t k = 0; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
      r(i, j) = acc;
    }
  }
  return r;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  require_ring(a.ring(), b.ring());
  Matrix r(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

Matrix direct_sum(const std::vector<Matrix>& parts, RingId ring) {
  std::size_t rows = 0, cols = 0;
  for (const auto& p : parts) {
    require_ring(ring, p.ring());
    rows += p.rows();
    cols += p.cols();
  }
  Matrix r(ring, rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& p : parts) {
    r.set_block(r0, c0, p);
    r0 += p.rows();
    c0 += p.cols();
  }
  return r;
}

double max_norm(const Matrix& m) {
  double v = 0.0;
  for (const auto& s : m.entries()) v = std::max(v, max_abs(s));
  return v;
}

double max_diff(const Matrix& a, const Matrix& b) { return max_norm(a - b); }

bool is_unitary(const Matrix& m, double tol) {
  if (!m.is_square()) return false;
  const Matrix id = Matrix::identity(m.ring(), m.rows());
  const Matrix h = adjoint(m);
  return max_diff(m * h, id) <= tol && max_diff(h * m, id) <= tol;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (!m.is_square()) return false;
  return max_diff(m, adjoint(m)) <= tol;
}

Matrix bordered(const Matrix& m) {
  const std::size_t n = m.rows() + m.cols();
  Matrix b(m.ring(), n, n);
  b.set_block(0, m.cols(), adjoint(m));
  b.set_block(m.cols(), 0, m);
  return b;
}

Matrix permute_cols(const Matrix& m, const std::vector<std::size_t>& perm) {
  if (perm.size() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "column permutation size");
  Matrix r(m.ring(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < perm.size(); ++k) r(i, k) = m(i, perm[k]);
  return r;
}

Matrix permute_rows(const Matrix& m, const std::vector<std::size_t>& perm) {
  if (perm.size() != m.rows()) throw Error(ErrorCode::ShapeMismatch, "row permutation size");
  Matrix r(m.ring(), m.rows(), m.cols());
  for (std::size_t k = 0; k < perm.size(); ++k)
    for (std::size_t j = 0; j < m.cols(); ++j) r(k, j) = m(perm[k], j);
  return r;
}

}  // namespace ringdecomp
