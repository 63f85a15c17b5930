#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringdecomp/decomp.hpp"

namespace ringdecomp::testkit {

/// SplitMix64. Fixed constants so samples are reproducible across builds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, 1) from the top 53 bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller).
  double gaussian();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

/// Components uniform in [-1, 1]; integer entries uniform in {-3..3}.
Matrix random_matrix(RingId ring, std::size_t rows, std::size_t cols, std::uint64_t seed);
/// (X + X*) / 2 of a random X; integer case symmetric with entries in {-3..3}.
Matrix random_hermitian(RingId ring, std::size_t n, std::uint64_t seed);
/// Unitary over `ring`. Double-complex samples are (P, P^-T) with cond(P) <= 5.
Matrix random_unitary(RingId ring, std::size_t n, std::uint64_t seed);
/// Complex W1 diag(s) W2 with s uniform in [1, cond], so cond(P) <= cond.
Matrix random_invertible(std::size_t n, std::uint64_t seed, double cond = 10.0);

/// Complex adjoint embedding of a quaternion matrix:
/// A + B j -> [[A, B], [-conj(B), conj(A)]].
CMat chi_embed(const Matrix& q);

struct VerifyReport {
  double residual = 0.0;        // |recombine(F) - M|_max
  double left_residual = 0.0;   // unitarity of left, or |left right - I| for Jordan
  double right_residual = 0.0;  // unitarity of right; 0 for Jordan
  std::vector<bool> generator;  // per block
  std::vector<std::string> failures;
  bool pass = false;
};

/// Residuals are compared against tol * (1 + |M|_max).
VerifyReport verify_factorization(const Matrix& m, const Factorization& f, double tol);

/// Equivalence-class sandwich of the given kind: U M V* (SVD), V M V*
/// (spectral) or P M P^-1 (Jordan), factors drawn from `seed`.
Matrix sandwich(const Matrix& m, DecompKind kind, std::uint64_t seed);

/// True iff every sandwich has a multiset within `tol` of blocks(M).
bool uniqueness_probe(const Matrix& m, DecompKind kind, std::size_t trials, std::uint64_t seed,
                      const DecompOptions& opts = {}, double tol = 1e-6);

/// blocks(A (+) B) == blocks(A) + blocks(B) within tol.
bool additivity_check(const Matrix& a, const Matrix& b, DecompKind kind, const DecompOptions& opts = {},
                      double tol = 1e-6);

/// One (ring, kind) cell of the self-test matrix.
struct CellResult {
  RingId ring = RingId::Zero;
  DecompKind kind = DecompKind::SVD;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::size_t refusals = 0;  // ClusterAmbiguity, resampled
  std::vector<std::string> notes;
  bool pass() const { return failures == 0; }
};

struct SelftestOptions {
  std::size_t trials = 50;
  std::uint64_t seed = 7;
  std::optional<RingId> ring;
  std::optional<DecompKind> kind;
  DecompOptions decomp;
  double tol = 1e-6;
};

/// Additivity, uniqueness, bordered consistency and the transpose-pair
/// correspondence on every supported (ring, kind).
std::vector<CellResult> run_selftest(const SelftestOptions& opts);

}  // namespace ringdecomp::testkit
