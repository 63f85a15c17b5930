#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ringdecomp/error.hpp"

using namespace th;

TEST(Scalars, ConjDualConj) { EXPECT_EQ(conj(dc(1, 2)), dc(1, -2)); }

TEST(Scalars, ConjDualTrivialIsIdentity) { EXPECT_EQ(conj(dt(1, 2)), dt(1, 2)); }

TEST(Scalars, ConjQuaternion) { EXPECT_EQ(conj(qt(1, 1, 1, 1)), qt(1, -1, -1, -1)); }

TEST(Scalars, ConjDoubleComplexSwaps) {
  const Scalar s = Scalar::double_complex({3, 0}, {5, 0});
  EXPECT_EQ(conj(s), Scalar::double_complex({5, 0}, {3, 0}));
}

TEST(Scalars, ConjIsAntiMultiplicativeOnQuaternions) {
  const Scalar a = qt(0.3, -1.2, 0.5, 2.0), b = qt(-0.7, 0.1, 1.4, -0.2);
  EXPECT_TRUE(approx_equal(conj(a * b), conj(b) * conj(a), 1e-14));
}

TEST(Scalars, DualProductCancels) {
  EXPECT_EQ(dt(1, 1) * dt(1, -1), dt(1, 0));
  EXPECT_EQ(dc(0, 1) * dc(0, 1), dc(0, 0));
}

TEST(Scalars, QuaternionTable) {
  const Scalar i = qt(0, 1, 0, 0), j = qt(0, 0, 1, 0);
  EXPECT_EQ(i * j, qt(0, 0, 0, 1));
  EXPECT_EQ(j * i, qt(0, 0, 0, -1));
}

TEST(Scalars, DoubleComplexComponentwise) {
  const Scalar a = Scalar::double_complex({2, 0}, {3, 0}), b = Scalar::double_complex({5, 0}, {7, 0});
  EXPECT_EQ(a * b, Scalar::double_complex({10, 0}, {21, 0}));
}

TEST(Scalars, DualInverse) {
  // (2 + 6e)(p + qe) = 1 gives p = 1/2, 2q + 6p = 0.
  EXPECT_TRUE(approx_equal(inv(dt(2, 6)), dt(0.5, -1.5), 1e-15));
  EXPECT_TRUE(approx_equal(dt(2, 6) * inv(dt(2, 6)), dt(1, 0), 1e-15));
}

TEST(Scalars, NilpotentHasNoInverse) {
  try {
    inv(dc(0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvertible);
  }
}

TEST(Scalars, QuaternionUnitInverse) { EXPECT_TRUE(approx_equal(inv(qt(0, 1, 0, 0)), qt(0, -1, 0, 0), 1e-15)); }

TEST(Scalars, MixedRingsRejected) {
  try {
    (void)(cx(1) + re(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RingMismatch);
  }
}

TEST(Scalars, RingNamesRoundTrip) {
  for (RingId r : kAllRings) EXPECT_EQ(parse_ring(ring_name(r)), r);
  EXPECT_THROW(parse_ring("octonion"), Error);
}
