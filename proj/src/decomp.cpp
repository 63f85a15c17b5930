#include "ringdecomp/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "convert.hpp"
#include "drivers.hpp"
#include "ringdecomp/error.hpp"

namespace ringdecomp {

using detail::Raw;

namespace {

Raw zero_ring_svd(const Matrix& m) {
  Raw raw{Matrix::identity(RingId::Zero, m.rows()), Matrix::identity(RingId::Zero, m.cols()), {}};
  for (std::size_t i = 0; i < m.rows(); ++i) raw.blocks.push_back(Block::empty_row());
  for (std::size_t j = 0; j < m.cols(); ++j) raw.blocks.push_back(Block::empty_col());
  return raw;
}

template <class K>
Raw field_svd(const Matrix& m) {
  const auto res = engines::jacobi_svd(detail::to_dense<K>(m));
  Raw raw{detail::from_dense(m.ring(), res.u), detail::from_dense(m.ring(), res.v), {}};
  for (std::size_t i = 0; i < res.rank; ++i) raw.blocks.push_back(Block::pos_scalar(res.sigma[i]));
  for (std::size_t i = res.rank; i < m.rows(); ++i) raw.blocks.push_back(Block::empty_row());
  for (std::size_t j = res.rank; j < m.cols(); ++j) raw.blocks.push_back(Block::empty_col());
  return raw;
}

template <class K>
Raw field_spectral(const Matrix& m) {
  const auto res = engines::jacobi_eig(detail::to_dense<K>(m));
  const Matrix v = detail::from_dense(m.ring(), res.vectors);
  Raw raw{v, v, {}};
  double top = 0.0;
  for (double x : res.values) top = std::max(top, std::abs(x));
  const double zero = static_cast<double>(std::max<std::size_t>(m.rows(), 1)) * engines::kRankTol * top;
  for (double x : res.values)
    raw.blocks.push_back(std::abs(x) <= zero ? Block::zero_scalar() : Block::signed_scalar(x));
  return raw;
}

void require_symmetric_integer(const Matrix& m) {
  if (m.ring() != RingId::IntegerTrivial) throw Error(ErrorCode::RingMismatch, "expected an integer matrix");
  if (!m.is_square()) throw Error(ErrorCode::NotSymmetric, "matrix is not square");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.rows(); ++j)
      if (m(i, j).integer_value() != m(j, i).integer_value())
        throw Error(ErrorCode::NotSymmetric, "integer matrix is not symmetric");
}

// Connected components of the off-diagonal support, each as sorted vertices.
std::vector<std::vector<std::size_t>> components(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (std::size_t w = 0; w < n; ++w)
        if (w != v && comp[w] < 0 && m(v, w).integer_value() != 0) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

Raw integer_spectral(const Matrix& m, std::size_t cap) {
  require_symmetric_integer(m);
  const std::size_t n = m.rows();
  Matrix v(RingId::IntegerTrivial, n, n);
  Raw raw;
  std::size_t col = 0;
  for (const auto& comp : components(m)) {
    const std::size_t k = comp.size();
    std::vector<std::int64_t> sub(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i * k + j] = m(comp[i], comp[j]).integer_value();
    const auto canon = canonical_graph(k, sub, cap);
    for (std::size_t i = 0; i < k; ++i) v(comp[canon.perm[i]], col + i) = Scalar::integer(canon.sign[i]);
    raw.blocks.push_back(Block::graph_component(k, canon.entries));
    col += k;
  }
  raw.left = v;
  raw.right = v;
  return raw;
}

Raw zero_ring_spectral(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotHermitian, "matrix is not square");
  Raw raw{Matrix::identity(RingId::Zero, m.rows()), Matrix::identity(RingId::Zero, m.rows()), {}};
  for (std::size_t i = 0; i < m.rows(); ++i) raw.blocks.push_back(Block::zero_scalar());
  return raw;
}

struct Span {
  std::size_t row, col;
};

Factorization finalize(DecompKind kind, Raw raw, const Matrix& input) {
  const std::size_t nb = raw.blocks.size();
  std::vector<Span> start(nb);
  std::size_t r = 0, c = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    start[b] = {r, c};
    r += raw.blocks[b].rows();
    c += raw.blocks[b].cols();
  }
  std::vector<std::size_t> order(nb);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&raw](std::size_t a, std::size_t b) { return block_less(raw.blocks[a], raw.blocks[b]); });

  std::vector<std::size_t> row_perm, col_perm;
  for (std::size_t b : order) {
    for (std::size_t i = 0; i < raw.blocks[b].rows(); ++i) row_perm.push_back(start[b].row + i);
    for (std::size_t j = 0; j < raw.blocks[b].cols(); ++j) col_perm.push_back(start[b].col + j);
  }

  Factorization f;
  f.kind = kind;
  f.left = permute_cols(raw.left, row_perm);
  f.right = kind == DecompKind::Jordan ? permute_rows(raw.right, col_perm) : permute_cols(raw.right, col_perm);
  f.blocks = BlockMultiset(std::move(raw.blocks));
  f.residual = max_diff(recombine(f), input);
  return f;
}

}  // namespace

Matrix block_matrix(const BlockMultiset& blocks, RingId ring) {
  std::vector<Matrix> parts;
  parts.reserve(blocks.size());
  for (const auto& b : blocks.items()) parts.push_back(to_matrix(b, ring));
  return direct_sum(parts, ring);
}

Matrix recombine(const Factorization& f) {
  const Matrix s = block_matrix(f.blocks, f.left.ring());
  if (f.kind == DecompKind::Jordan) return f.left * s * f.right;
  return f.left * s * adjoint(f.right);
}

Factorization svd(const Matrix& m, const DecompOptions& opts) {
  require_supported(m.ring(), DecompKind::SVD);
  Raw raw;
  switch (m.ring()) {
    case RingId::Zero: raw = zero_ring_svd(m); break;
    case RingId::Real: raw = field_svd<double>(m); break;
    case RingId::Complex: raw = field_svd<cplx>(m); break;
    case RingId::Quaternion: raw = field_svd<Quat>(m); break;
    case RingId::DualTrivial:
    case RingId::DualConj: raw = detail::dual_svd(m, opts); break;
    case RingId::DoubleComplexSwap: raw = detail::pair_svd(m, opts); break;
    case RingId::IntegerTrivial: break;
  }
  return finalize(DecompKind::SVD, std::move(raw), m);
}

Factorization spectral(const Matrix& m, const DecompOptions& opts) {
  require_supported(m.ring(), DecompKind::Spectral);
  if (!m.is_square()) throw Error(ErrorCode::NotHermitian, "matrix is not square");
  if (m.ring() != RingId::IntegerTrivial && !is_hermitian(m, opts.tol * std::max(1.0, max_norm(m))))
    throw Error(ErrorCode::NotHermitian, "matrix is not self-adjoint");
  Raw raw;
  switch (m.ring()) {
    case RingId::Zero: raw = zero_ring_spectral(m); break;
    case RingId::Real: raw = field_spectral<double>(m); break;
    case RingId::Complex: raw = field_spectral<cplx>(m); break;
    case RingId::Quaternion: raw = field_spectral<Quat>(m); break;
    case RingId::DualTrivial:
    case RingId::DualConj: raw = detail::dual_spectral(m, opts); break;
    case RingId::DoubleComplexSwap: raw = detail::pair_spectral(m, opts); break;
    case RingId::IntegerTrivial: raw = integer_spectral(m, opts.graph_cap); break;
  }
  return finalize(DecompKind::Spectral, std::move(raw), m);
}

Factorization jordan(const Matrix& a, const DecompOptions& opts) {
  require_supported(a.ring(), DecompKind::Jordan);
  if (!a.is_square()) throw Error(ErrorCode::ShapeMismatch, "Jordan form needs a square matrix");
  const auto js = engines::complex_jordan(detail::to_dense<cplx>(a), opts.cluster_tol);
  Raw raw{detail::from_dense(RingId::Complex, js.transform),
          detail::from_dense(RingId::Complex, engines::inverse(js.transform)),
          {}};
  for (const auto& c : js.clusters)
    for (std::size_t m : c.segre) raw.blocks.push_back(Block::jordan_block(m, c.eigenvalue));
  return finalize(DecompKind::Jordan, std::move(raw), a);
}

Factorization decompose(const Matrix& m, DecompKind kind, const DecompOptions& opts) {
  switch (kind) {
    case DecompKind::SVD: return svd(m, opts);
    case DecompKind::Spectral: return spectral(m, opts);
    case DecompKind::Jordan: return jordan(m, opts);
  }
  throw Error(ErrorCode::UnsupportedRingKind, "unknown decomposition kind");
}

BlockMultiset herm_integer_canonical(const Matrix& m, std::size_t cap) {
  return BlockMultiset(integer_spectral(m, cap).blocks);
}

Matrix transpose_pair(const Matrix& a) {
  if (a.ring() != RingId::Complex) throw Error(ErrorCode::RingMismatch, "expected a complex matrix");
  if (!a.is_square()) throw Error(ErrorCode::ShapeMismatch, "expected a square matrix");
  const CMat c = detail::to_dense<cplx>(a);
  return detail::from_pair(c, transpose(c));
}

BlockMultiset jordan_to_pairs(const BlockMultiset& jordan_blocks, double period) {
  BlockMultiset out;
  for (const auto& b : jordan_blocks.items()) {
    if (b.kind != BlockKind::JordanBlock) throw Error(ErrorCode::NotEquivalentToGenerator, "expected JordanBlock");
    const cplx lambda(b.params[0], b.params[1]);
    const double r = std::abs(lambda);
    double theta = 0.0;
    if (r > 0.0) {
      theta = std::fmod(std::arg(lambda), period);
      if (theta < 0.0) theta += period;
      if (theta >= period) theta = 0.0;
    }
    out.insert(Block::jordan_pair(b.size, r, theta, period));
  }
  return out;
}

BlockMultiset reduce_pair_angles(const BlockMultiset& blocks, double period) {
  BlockMultiset out;
  for (const auto& b : blocks.items()) {
    if (b.kind != BlockKind::JordanPair) {
      out.insert(b);
      continue;
    }
    double theta = std::fmod(b.params[1], period);
    if (theta < 0.0) theta += period;
    if (theta >= period) theta = 0.0;
    out.insert(Block::jordan_pair(b.size, b.params[0], theta, period));
  }
  return out;
}

BlockMultiset bordered_pairing(const BlockMultiset& svd_blocks, RingId ring) {
  if (ring == RingId::DoubleComplexSwap || ring == RingId::IntegerTrivial)
    throw Error(ErrorCode::UnsupportedRingKind, "no bordered pairing over " + std::string(ring_name(ring)));
  BlockMultiset out;
  for (const auto& b : svd_blocks.items()) {
    const auto& p = b.params;
    switch (b.kind) {
      case BlockKind::PosScalar:
        out.insert(Block::signed_scalar(p[0]));
        out.insert(Block::signed_scalar(-p[0]));
        break;
      case BlockKind::DualScalar:
        out.insert(Block::dual_scalar(p[0], p[1]));
        out.insert(Block::dual_scalar(-p[0], -p[1]));
        break;
      case BlockKind::DualEps:
        if (ring == RingId::DualConj) {
          out.insert(Block::dual_rot2(0.0, p[0]));
        } else {
          out.insert(Block::dual_eps(p[0]));
          out.insert(Block::dual_eps(-p[0]));
        }
        break;
      case BlockKind::DualRot2:
        out.insert(Block::dual_rot2(p[0], p[1]));
        out.insert(Block::dual_rot2(-p[0], p[1]));
        break;
      case BlockKind::EmptyRow:
      case BlockKind::EmptyCol: out.insert(Block::zero_scalar()); break;
      default:
        throw Error(ErrorCode::NotEquivalentToGenerator,
                    std::string(block_kind_name(b.kind)) + " is not an SVD block of " + std::string(ring_name(ring)));
    }
  }
  return out;
}

}  // namespace ringdecomp
