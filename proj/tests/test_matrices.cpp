#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ringdecomp/error.hpp"
#include "ringdecomp/testkit.hpp"

using namespace th;

namespace {

using poly = std::vector<std::complex<double>>;

// Faddeev-LeVerrier: coefficients c_0..c_n of det(t I - A), c_n = 1.
poly char_poly(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::complex<double>> m(n * n, 0.0), am(n * n);
  poly c(n + 1, 0.0);
  c[n] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] += c[n - k + 1];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> s = 0.0;
        for (std::size_t l = 0; l < n; ++l) s += a(i, l).as_complex() * m[l * n + j];
        am[i * n + j] = s;
      }
    std::complex<double> tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += am[i * n + i];
    c[n - k] = -tr / static_cast<double>(k);
    m = am;
  }
  return c;
}

std::complex<double> eval(const poly& c, std::complex<double> t) {
  std::complex<double> v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
  return v;
}

}  // namespace

TEST(Matrices, AdjointDualConj) {
  Matrix m(RingId::DualConj, {{dc(0, 1)}});
  EXPECT_EQ(adjoint(m)(0, 0), dc(0, -1));
}

TEST(Matrices, AdjointOfPairSwapsAndTransposes) {
  // (A, B) with A = first components, B = second components.
  Matrix m(RingId::DoubleComplexSwap, 2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = Scalar::double_complex({1.0 + i, 2.0 * j}, {3.0 * i - j, 0.5});
  const Matrix h = adjoint(m);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(h(i, j).first(), m(j, i).second());
      EXPECT_EQ(h(i, j).second(), m(j, i).first());
    }
}

TEST(Matrices, AdjointSwapsEmptyShape) {
  const Matrix h = adjoint(Matrix(RingId::Real, 0, 3));
  EXPECT_EQ(h.rows(), 3u);
  EXPECT_EQ(h.cols(), 0u);
}

TEST(Matrices, IdentityIsNeutral) {
  const Matrix m = testkit::random_matrix(RingId::Quaternion, 2, 3, 5);
  EXPECT_EQ(Matrix::identity(RingId::Quaternion, 2) * m, m);
}

TEST(Matrices, EmptyContraction) {
  const Matrix p = Matrix(RingId::Complex, 2, 0) * Matrix(RingId::Complex, 0, 3);
  EXPECT_EQ(p, Matrix::zeros(RingId::Complex, 2, 3));
}

TEST(Matrices, QuaternionScalarLift) {
  Matrix i(RingId::Quaternion, {{qt(0, 1, 0, 0)}}), j(RingId::Quaternion, {{qt(0, 0, 1, 0)}});
  EXPECT_EQ((i * j)(0, 0), qt(0, 0, 0, 1));
}

TEST(Matrices, DirectSumWithPadding) {
  const RingId r = RingId::Real;
  const Matrix s = direct_sum(std::vector<Matrix>{lift(r, 1, 1, {3}), lift(r, 1, 1, {-1}), Matrix(r, 0, 1)}, r);
  EXPECT_EQ(s, lift(r, 2, 3, {3, 0, 0, 0, -1, 0}));
}

TEST(Matrices, DirectSumWithEmptyIsIdentity) {
  const Matrix a = testkit::random_matrix(RingId::Complex, 2, 2, 1);
  EXPECT_EQ(direct_sum(a, Matrix(RingId::Complex, 0, 0)), a);
}

TEST(Matrices, DirectSumOfEmptyRowAndColumn) {
  EXPECT_EQ(direct_sum(Matrix(RingId::Real, 1, 0), Matrix(RingId::Real, 0, 1)), Matrix::zeros(RingId::Real, 1, 1));
}

TEST(Matrices, UnitaryIdentity) { EXPECT_TRUE(is_unitary(Matrix::identity(RingId::Complex, 3), 1e-12)); }

TEST(Matrices, InfinitesimalRotationDependsOnInvolution) {
  // I + e [[0,1],[-1,0]]: U U* = I + 2e[[0,1],[-1,0]] under the conjugate involution.
  const Matrix uc(RingId::DualConj, {{dc(1, 0), dc(0, 1)}, {dc(0, -1), dc(1, 0)}});
  const Matrix ut(RingId::DualTrivial, {{dt(1, 0), dt(0, 1)}, {dt(0, -1), dt(1, 0)}});
  EXPECT_FALSE(is_unitary(uc, 1e-12));
  EXPECT_TRUE(is_unitary(ut, 1e-12));
}

TEST(Matrices, SignedPermutationIsUnitary) { EXPECT_TRUE(is_unitary(ints(2, {0, -1, 1, 0}), 0.0)); }

TEST(Matrices, HermitianDualConj) {
  EXPECT_TRUE(is_hermitian(Matrix(RingId::DualConj, {{dc(1, 0), dc(0, -1)}, {dc(0, 1), dc(1, 0)}}), 1e-12));
  EXPECT_FALSE(is_hermitian(Matrix(RingId::DualConj, {{dc(0, 1)}}), 1e-12));
}

TEST(Matrices, TransposePairIsSelfAdjoint) {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const Matrix a = testkit::random_matrix(RingId::Complex, 3, 3, s);
    EXPECT_TRUE(is_hermitian(transpose_pair(a), 1e-14));
  }
}

TEST(Matrices, BorderedScalar) {
  EXPECT_EQ(bordered(lift(RingId::Real, 1, 1, {2.5})), lift(RingId::Real, 2, 2, {0, 2.5, 2.5, 0}));
}

TEST(Matrices, BorderedEmptyRow) { EXPECT_EQ(bordered(Matrix(RingId::Real, 1, 0)), Matrix::zeros(RingId::Real, 1, 1)); }

TEST(Matrices, BorderedSpectrumFromCharPoly) {
  const Matrix b = bordered(example_2x3());
  ASSERT_EQ(b.rows(), 5u);
  EXPECT_TRUE(is_hermitian(b, 0.0));
  const poly c = char_poly(b);
  for (double t : {3.0, -3.0, 1.0, -1.0, 0.0}) EXPECT_NEAR(std::abs(eval(c, t)), 0.0, 1e-9) << t;
  // t (t^2 - 1)(t^2 - 9) = t^5 - 10 t^3 + 9 t
  EXPECT_NEAR(c[3].real(), -10.0, 1e-12);
  EXPECT_NEAR(c[1].real(), 9.0, 1e-12);
}

TEST(Matrices, ShapeMismatchRejected) {
  try {
    (void)(Matrix(RingId::Real, 2, 3) * Matrix(RingId::Real, 2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
  }
}
