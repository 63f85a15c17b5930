#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "ringdecomp/scalar.hpp"

namespace ringdecomp {

/// Dense row-major matrix over one *-ring. Zero rows or zero columns are
/// legal; such matrices carry no entries and compare equal iff their shapes do.
class Matrix {
 public:
  Matrix() = default;
  Matrix(RingId ring, std::size_t rows, std::size_t cols);
  /// Row-list constructor; every row must have the same length and every
  /// entry must belong to `ring`.
  Matrix(RingId ring, std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix zeros(RingId ring, std::size_t rows, std::size_t cols) { return {ring, rows, cols}; }
  static Matrix identity(RingId ring, std::size_t n);

  RingId ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Scalar>& entries() const noexcept { return data_; }

  /// Copy of the nr x nc window starting at (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  RingId ring_ = RingId::Real;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Scalar& s, const Matrix& a);

Matrix transpose(const Matrix& m);
/// (M*)_{ij} = (M_{ji})*.
Matrix adjoint(const Matrix& m);
/// Product respecting noncommutative scalar order. Throws on shape or ring mismatch.
Matrix matmul(const Matrix& a, const Matrix& b);
/// Block-diagonal composition; 0x0 is the identity, 1x0 / 0x1 pad a row / column.
Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix direct_sum(const std::vector<Matrix>& parts, RingId ring);

/// Max absolute scalar component over all entries.
double max_norm(const Matrix& m);
/// max_norm(a - b); shapes must agree.
double max_diff(const Matrix& a, const Matrix& b);

bool is_unitary(const Matrix& m, double tol);
bool is_hermitian(const Matrix& m, double tol);
/// The self-adjoint [[0, M*], [M, 0]] of size (m+n) x (m+n).
Matrix bordered(const Matrix& m);

/// Row and column permutation helpers: result column k is input column perm[k].
Matrix permute_cols(const Matrix& m, const std::vector<std::size_t>& perm);
Matrix permute_rows(const Matrix& m, const std::vector<std::size_t>& perm);

}  // namespace ringdecomp
