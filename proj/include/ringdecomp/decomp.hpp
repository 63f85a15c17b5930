#pragma once

#include <cstddef>

#include "ringdecomp/canonical.hpp"
#include "ringdecomp/engines.hpp"
#include "ringdecomp/matrix.hpp"

namespace ringdecomp {

struct DecompOptions {
  /// Self-adjointness check and residual budget.
  double tol = 1e-8;
  /// Eigenvalue / singular-value clustering radius.
  double cluster_tol = engines::kDefaultClusterTol;
  /// Largest connected component handled by the integer canonicalizer.
  std::size_t graph_cap = 8;
};

/// M = left * S * right* for SVD and Spectral, M = left * S * right for Jordan
/// (right = left^-1), where S is the direct sum of `blocks` in stored order.
struct Factorization {
  DecompKind kind = DecompKind::SVD;
  Matrix left;
  Matrix right;
  BlockMultiset blocks;
  double residual = 0.0;
};

/// Direct sum of the materialized blocks, in multiset order.
Matrix block_matrix(const BlockMultiset& blocks, RingId ring);

/// Rebuilds the input from a factorization.
Matrix recombine(const Factorization& f);

/// U* M V = S with U, V unitary over the ring of M. Any shape.
Factorization svd(const Matrix& m, const DecompOptions& opts = {});

/// V* M V = S for self-adjoint M.
Factorization spectral(const Matrix& m, const DecompOptions& opts = {});

/// P^-1 A P = (+) J_m(lambda) for square complex A.
Factorization jordan(const Matrix& a, const DecompOptions& opts = {});

Factorization decompose(const Matrix& m, DecompKind kind, const DecompOptions& opts = {});

/// Canonical GraphComponent multiset of a symmetric integer matrix.
BlockMultiset herm_integer_canonical(const Matrix& m, std::size_t cap = 8);

/// (A, A^T) over the double-complex ring; self-adjoint for every square complex A.
Matrix transpose_pair(const Matrix& a);

/// JordanBlock(m, lambda) -> JordanPair(m, |lambda|, arg lambda) with the
/// angle reduced mod `period`.
BlockMultiset jordan_to_pairs(const BlockMultiset& jordan_blocks, double period);

/// JordanPair angles reduced mod `period` (other blocks pass through).
BlockMultiset reduce_pair_angles(const BlockMultiset& blocks, double period);

/// Expected spectral multiset of bordered(M) given the SVD multiset of M.
///   PosScalar(x)      -> SignedScalar(x), SignedScalar(-x)
///   DualScalar(x, y)  -> DualScalar(x, y), DualScalar(-x, -y)
///   DualEps(y)        -> DualEps(y), DualEps(-y)          (trivial involution)
///   DualEps(y)        -> DualRot2(0, y)                   (conjugate involution)
///   DualRot2(x, y)    -> DualRot2(x, y), DualRot2(-x, y)
///   EmptyRow/EmptyCol -> ZeroScalar
/// Throws Error(UnsupportedRingKind) for the double-complex and integer rings.
BlockMultiset bordered_pairing(const BlockMultiset& svd_blocks, RingId ring);

}  // namespace ringdecomp
