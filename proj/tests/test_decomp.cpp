#include <gtest/gtest.h>

#include <numbers>

#include "helpers.hpp"
#include "ringdecomp/error.hpp"
#include "ringdecomp/testkit.hpp"

using namespace th;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_blocks(const Factorization& f, const std::vector<Block>& want, double tol = 1e-9) {
  EXPECT_TRUE(multiset_eq(f.blocks, BlockMultiset(want), tol));
  EXPECT_EQ(f.blocks.size(), want.size());
}

void expect_valid(const Matrix& m, const Factorization& f, double tol = 1e-9) {
  const auto rep = testkit::verify_factorization(m, f, tol);
  EXPECT_TRUE(rep.pass) << (rep.failures.empty() ? "" : rep.failures.front());
}

}  // namespace

TEST(Decomp, SvdExample) {
  const Matrix m = example_2x3();
  const auto f = svd(m);
  expect_blocks(f, {Block::pos_scalar(3), Block::pos_scalar(1), Block::empty_col()});
  expect_valid(m, f);
}

TEST(Decomp, SvdOfEmptyRowIsTheGenerator) {
  for (RingId r : {RingId::Real, RingId::Complex, RingId::DualTrivial, RingId::DualConj, RingId::Quaternion,
                   RingId::DoubleComplexSwap}) {
    const auto f = svd(Matrix(r, 1, 0));
    expect_blocks(f, {Block::empty_row()});
  }
}

TEST(Decomp, SvdDualEps) {
  const Matrix m(RingId::DualConj, {{dc(0, 2)}});
  const auto f = svd(m);
  expect_blocks(f, {Block::dual_eps(2)});
  expect_valid(m, f);
}

TEST(Decomp, SvdDualConjRotation) {
  const Matrix g = to_matrix(Block::dual_rot2(1.5, 0.5), RingId::DualConj);
  const auto f = svd(testkit::sandwich(g, DecompKind::SVD, 3));
  expect_blocks(f, {Block::dual_rot2(1.5, 0.5)}, 1e-9);
}

TEST(Decomp, SvdDualTrivialKeepsInfinitesimalPart) {
  const Matrix g(RingId::DualTrivial, {{dt(2, 0.25)}});
  const auto f = svd(testkit::sandwich(g, DecompKind::SVD, 9));
  expect_blocks(f, {Block::dual_scalar(2, 0.25)}, 1e-9);
}

TEST(Decomp, SpectralRealCharPoly) {
  const Matrix m = lift(RingId::Real, 2, 2, {5, 4, 4, 5});
  const auto f = spectral(m);
  expect_blocks(f, {Block::signed_scalar(9), Block::signed_scalar(1)});
  expect_valid(m, f);
}

TEST(Decomp, SpectralKeepsSign) {
  const Matrix m = lift(RingId::Complex, 2, 2, {-2, 0, 0, 0});
  expect_blocks(spectral(m), {Block::signed_scalar(-2), Block::zero_scalar()});
}

TEST(Decomp, SpectralDualConjRotation) {
  const Matrix m(RingId::DualConj, {{dc(1, 0), dc(0, -1)}, {dc(0, 1), dc(1, 0)}});
  const auto f = spectral(m);
  expect_blocks(f, {Block::dual_rot2(1, 1)});
  expect_valid(m, f);
}

TEST(Decomp, SpectralNilpotentPair) {
  const Matrix m = transpose_pair(cplx_matrix(engines::jordan_block(2, 0.0)));
  const auto f = spectral(m);
  expect_blocks(f, {Block::jordan_pair(2, 0, 0, 2 * kPi)});
  expect_valid(m, f);
}

TEST(Decomp, SpectralRejectsNonSelfAdjoint) {
  try {
    spectral(lift(RingId::Real, 2, 2, {0, 1, 0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(Decomp, TransposePairScalar) {
  expect_blocks(spectral(transpose_pair(lift(RingId::Complex, 1, 1, {2}))), {Block::jordan_pair(1, 2, 0, 2 * kPi)});
  const Matrix i(RingId::Complex, {{cx(0, 1)}});
  const auto f = spectral(transpose_pair(i));
  expect_blocks(f, {Block::jordan_pair(1, 1, kPi / 2, 2 * kPi)});
}

TEST(Decomp, JordanNilpotent) {
  const Matrix a = cplx_matrix(engines::jordan_block(2, 0.0));
  const auto f = jordan(a);
  expect_blocks(f, {Block::jordan_block(2, 0)});
  expect_valid(a, f);
}

TEST(Decomp, JordanDiagonal) {
  const Matrix a = lift(RingId::Complex, 3, 3, {3, 0, 0, 0, 3, 0, 0, 0, 5});
  expect_blocks(jordan(a), {Block::jordan_block(1, 3), Block::jordan_block(1, 3), Block::jordan_block(1, 5)});
}

TEST(Decomp, JordanPlanted) {
  const CMat j = block_diag(engines::jordan_block(2, 1.0), engines::jordan_block(1, 1.0));
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const Matrix p = testkit::random_invertible(3, s);
    CMat pd(3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) pd(r, c) = p(r, c).as_complex();
    const Matrix a = cplx_matrix(pd * j * engines::inverse(pd));
    const auto f = jordan(a);
    expect_blocks(f, {Block::jordan_block(2, 1), Block::jordan_block(1, 1)}, 1e-6);
    expect_valid(a, f, 1e-6);
  }
}

TEST(Decomp, JordanUnsupportedElsewhere) {
  try {
    jordan(lift(RingId::Real, 1, 1, {1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedRingKind);
  }
}

TEST(Decomp, PairSvdRecoversGenerators) {
  const std::vector<Block> gens = {Block::singular_pair_row(1), Block::singular_pair_row(2), Block::singular_pair_col(2),
                                   Block::jordan_zero_left(3),  Block::jordan_zero_right(2), Block::empty_col(),
                                   Block::jordan_pair(2, 1.5, 0.4, kPi)};
  for (const auto& g : gens) {
    const Matrix m = testkit::sandwich(to_matrix(g, RingId::DoubleComplexSwap), DecompKind::SVD, 17);
    const auto f = svd(m);
    expect_blocks(f, {g}, 1e-6);
    expect_valid(m, f, 1e-8);
  }
}

TEST(Decomp, PairSvdOfDirectSum) {
  std::vector<Matrix> parts;
  const std::vector<Block> gens = {Block::singular_pair_row(2), Block::jordan_zero_left(2), Block::jordan_pair(1, 2, 1.0, kPi),
                                   Block::empty_row()};
  for (const auto& g : gens) parts.push_back(to_matrix(g, RingId::DoubleComplexSwap));
  const Matrix m = testkit::sandwich(direct_sum(parts, RingId::DoubleComplexSwap), DecompKind::SVD, 5);
  expect_blocks(svd(m), gens, 1e-6);
}

TEST(Decomp, IntegerComponents) {
  const auto edge = herm_integer_canonical(ints(2, {0, 1, 1, 0}));
  ASSERT_EQ(edge.size(), 1u);
  EXPECT_EQ(edge.items()[0].graph, (std::vector<std::int64_t>{0, 1, 1, 0}));
  const auto two = herm_integer_canonical(ints(3, {0, 1, 0, 1, 0, 0, 0, 0, 7}));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_TRUE(two == herm_integer_canonical(ints(3, {7, 0, 0, 0, 0, -1, 0, -1, 0})));
}

TEST(Decomp, IntegerRelabeledPath) {
  const Matrix p3 = ints(3, {0, 1, 0, 1, 0, 1, 0, 1, 0});
  const Matrix q3 = ints(3, {0, 0, 1, 0, 0, 1, 1, 1, 0});
  EXPECT_TRUE(herm_integer_canonical(p3) == herm_integer_canonical(q3));
  const auto f = spectral(q3);
  expect_valid(q3, f, 0.0);
}

TEST(Decomp, BorderedPairingTable) {
  const auto b = bordered_pairing(BlockMultiset({Block::dual_eps(2), Block::pos_scalar(1), Block::empty_col()}),
                                  RingId::DualConj);
  EXPECT_TRUE(multiset_eq(b, BlockMultiset({Block::dual_rot2(0, 2), Block::signed_scalar(1), Block::signed_scalar(-1),
                                            Block::zero_scalar()}),
                          0.0));
  EXPECT_THROW(bordered_pairing(BlockMultiset(), RingId::DoubleComplexSwap), Error);
}

TEST(Decomp, BorderedMatchesSvd) {
  for (RingId r : {RingId::Real, RingId::Complex, RingId::DualTrivial, RingId::DualConj, RingId::Quaternion}) {
    const Matrix m = testkit::random_matrix(r, 3, 2, 4);
    EXPECT_TRUE(multiset_eq(spectral(bordered(m)).blocks, bordered_pairing(svd(m).blocks, r), 1e-8)) << ring_name(r);
  }
}

TEST(Decomp, JordanToPairsHalfTurn) {
  const auto p = jordan_to_pairs(BlockMultiset({Block::jordan_block(2, {-1.0, 0.0})}), kPi);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_NEAR(p.items()[0].params[0], 1.0, 1e-15);
  EXPECT_NEAR(p.items()[0].params[1], 0.0, 1e-15);
}

TEST(Decomp, RecombineEveryRing) {
  for (RingId r : kAllRings)
    for (DecompKind k : {DecompKind::SVD, DecompKind::Spectral, DecompKind::Jordan}) {
      try {
        require_supported(r, k);
      } catch (const Error&) {
        continue;
      }
      for (std::uint64_t s = 1; s <= 10; ++s) {
        const Matrix m = k == DecompKind::Spectral ? testkit::random_hermitian(r, 4, s)
                         : k == DecompKind::SVD    ? testkit::random_matrix(r, 4, 3, s)
                                                   : testkit::random_matrix(r, 4, 4, s);
        const auto f = decompose(m, k);
        EXPECT_TRUE(testkit::verify_factorization(m, f, 1e-9).pass) << ring_name(r) << " " << kind_name(k) << " " << s;
        for (const auto& b : f.blocks.items()) EXPECT_TRUE(is_generator(b, r, k));
      }
    }
}
