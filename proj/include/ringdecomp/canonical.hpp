#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ringdecomp/matrix.hpp"

namespace ringdecomp {

enum class DecompKind { SVD, Spectral, Jordan };

std::string_view kind_name(DecompKind kind);  // svd, spectral, jordan
DecompKind parse_kind(std::string_view name);

/// Generator shapes. Declaration order is the canonical sort order.
enum class BlockKind {
  PosScalar,        // [x], x > 0
  SignedScalar,     // [x], x != 0
  DualScalar,       // [x + y eps]
  DualEps,          // [y eps]
  DualRot2,         // [[x, -y eps], [y eps, x]]
  JordanPair,       // (J_m(r e^{i theta}), J_m(r e^{i theta})^T)
  SingularPairRow,  // ((I_m 0), (0; I_m)^T), m x (m+1)
  SingularPairCol,  // ((0; I_m), (I_m 0)^T), (m+1) x m
  JordanZeroLeft,   // (J_m(0), I_m^T)
  JordanZeroRight,  // (I_m, J_m(0)^T)
  ZeroScalar,       // [0]
  EmptyRow,         // 0_{1,0}
  EmptyCol,         // 0_{0,1}
  JordanBlock,      // J_m(lambda) over C
  GraphComponent,   // connected integer symmetric matrix
};

std::string_view block_kind_name(BlockKind kind);
BlockKind parse_block_kind(std::string_view name);

struct Block {
  BlockKind kind = BlockKind::ZeroScalar;
  std::size_t size = 1;
  /// PosScalar/SignedScalar {x}; DualScalar/DualRot2 {x, y}; DualEps {y};
  /// JordanPair {r, theta, theta_period}; JordanBlock {re, im}; others {}.
  std::vector<double> params;
  /// GraphComponent only: row-major size x size entries.
  std::vector<std::int64_t> graph;

  static Block pos_scalar(double x) { return {BlockKind::PosScalar, 1, {x}, {}}; }
  static Block signed_scalar(double x) { return {BlockKind::SignedScalar, 1, {x}, {}}; }
  static Block dual_scalar(double x, double y) { return {BlockKind::DualScalar, 1, {x, y}, {}}; }
  static Block dual_eps(double y) { return {BlockKind::DualEps, 1, {y}, {}}; }
  static Block dual_rot2(double x, double y) { return {BlockKind::DualRot2, 2, {x, y}, {}}; }
  /// theta_period is pi for SVD blocks (mu and -mu are equivalent) and 2 pi for
  /// spectral blocks.
  static Block jordan_pair(std::size_t m, double r, double theta, double theta_period) {
    return {BlockKind::JordanPair, m, {r, theta, theta_period}, {}};
  }
  static Block singular_pair_row(std::size_t m) { return {BlockKind::SingularPairRow, m, {}, {}}; }
  static Block singular_pair_col(std::size_t m) { return {BlockKind::SingularPairCol, m, {}, {}}; }
  static Block jordan_zero_left(std::size_t m) { return {BlockKind::JordanZeroLeft, m, {}, {}}; }
  static Block jordan_zero_right(std::size_t m) { return {BlockKind::JordanZeroRight, m, {}, {}}; }
  static Block zero_scalar() { return {BlockKind::ZeroScalar, 1, {}, {}}; }
  static Block empty_row() { return {BlockKind::EmptyRow, 1, {}, {}}; }
  static Block empty_col() { return {BlockKind::EmptyCol, 1, {}, {}}; }
  static Block jordan_block(std::size_t m, std::complex<double> lambda) {
    return {BlockKind::JordanBlock, m, {lambda.real(), lambda.imag()}, {}};
  }
  static Block graph_component(std::size_t n, std::vector<std::int64_t> entries) {
    return {BlockKind::GraphComponent, n, {}, std::move(entries)};
  }

  /// Shape of the materialized block.
  std::size_t rows() const;
  std::size_t cols() const;

  friend bool operator==(const Block&, const Block&) = default;
};

std::vector<std::string_view> param_names(BlockKind kind);

/// Deterministic total order: kind, then size, then parameters (descending),
/// then graph entries.
bool block_less(const Block& a, const Block& b);

/// Concrete matrix of the block over `ring`.
Matrix to_matrix(const Block& b, RingId ring);

/// Membership in the generator set of (ring, kind). Spectral sets keep the
/// sign of real scalars (unitary similarity cannot flip it). Throws
/// Error(UnsupportedRingKind) for combinations outside the supported tables.
bool is_generator(const Block& b, RingId ring, DecompKind kind);

/// Throws Error(UnsupportedRingKind) unless (ring, kind) is supported.
void require_supported(RingId ring, DecompKind kind);

/// The generator representative of `b`'s equivalence class.
/// Throws Error(NotEquivalentToGenerator).
Block normalize_block(const Block& b, RingId ring, DecompKind kind);

/// Canonically sorted multiset of blocks.
class BlockMultiset {
 public:
  BlockMultiset() = default;
  explicit BlockMultiset(std::vector<Block> items);

  void insert(Block b);
  const std::vector<Block>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }

  /// Multiset sum.
  friend BlockMultiset operator+(const BlockMultiset& a, const BlockMultiset& b);
  friend bool operator==(const BlockMultiset&, const BlockMultiset&) = default;

 private:
  std::vector<Block> items_;
};

/// Distance between two blocks' parameters; infinity when kind, size or graph differ.
double param_distance(const Block& a, const Block& b);

/// True iff a bijection matches blocks of equal kind and size with parameter
/// distance <= tol.
bool multiset_eq(const BlockMultiset& s1, const BlockMultiset& s2, double tol);

/// Lexicographically least image of a symmetric integer matrix under
/// M -> P M P^T, P a signed permutation. Entries are ordered by absolute value
/// with +v before -v. canonical(i, j) = sign[i] sign[j] m(perm[i], perm[j]).
struct GraphCanonical {
  std::vector<std::int64_t> entries;
  std::vector<std::size_t> perm;
  std::vector<int> sign;
};

/// Throws Error(SizeCapExceeded) if n > cap.
GraphCanonical canonical_graph(std::size_t n, const std::vector<std::int64_t>& entries, std::size_t cap = 8);

bool graph_connected(std::size_t n, const std::vector<std::int64_t>& entries);

}  // namespace ringdecomp
