#include "ringdecomp/canonical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "ringdecomp/error.hpp"

namespace ringdecomp {

namespace {

constexpr std::array<std::string_view, 15> kBlockNames = {
    "PosScalar",      "SignedScalar",    "DualScalar",      "DualEps",        "DualRot2",
    "JordanPair",     "SingularPairRow", "SingularPairCol", "JordanZeroLeft", "JordanZeroRight",
    "ZeroScalar",     "EmptyRow",        "EmptyCol",        "JordanBlock",    "GraphComponent"};

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double theta, double period) {
  double t = std::fmod(theta, period);
  if (t < 0.0) t += period;
  if (t >= period) t = 0.0;
  return t;
}

[[noreturn]] void not_generator(const Block& b, RingId ring, DecompKind kind) {
  throw Error(ErrorCode::NotEquivalentToGenerator, std::string(block_kind_name(b.kind)) + " over " +
                                                       std::string(ring_name(ring)) + " (" +
                                                       std::string(kind_name(kind)) + ")");
}

void require_ring(bool ok, const Block& b, RingId ring) {
  if (!ok)
    throw Error(ErrorCode::RingMismatch, std::string(block_kind_name(b.kind)) + " cannot be materialized over " +
                                             std::string(ring_name(ring)));
}

}  // namespace

std::string_view kind_name(DecompKind kind) {
  switch (kind) {
    case DecompKind::SVD: return "svd";
    case DecompKind::Spectral: return "spectral";
    case DecompKind::Jordan: return "jordan";
  }
  return "unknown";
}

DecompKind parse_kind(std::string_view name) {
  if (name == "svd") return DecompKind::SVD;
  if (name == "spectral") return DecompKind::Spectral;
  if (name == "jordan") return DecompKind::Jordan;
  throw Error(ErrorCode::Parse, "unknown decomposition kind '" + std::string(name) + "'");
}

std::string_view block_kind_name(BlockKind kind) { return kBlockNames[static_cast<std::size_t>(kind)]; }

BlockKind parse_block_kind(std::string_view name) {
  for (std::size_t i = 0; i < kBlockNames.size(); ++i)
    if (kBlockNames[i] == name) return static_cast<BlockKind>(i);
  throw Error(ErrorCode::Parse, "unknown block kind '" + std::string(name) + "'");
}

std::vector<std::string_view> param_names(BlockKind kind) {
  switch (kind) {
    case BlockKind::PosScalar:
    case BlockKind::SignedScalar: return {"x"};
    case BlockKind::DualScalar:
    case BlockKind::DualRot2: return {"x", "y"};
    case BlockKind::DualEps: return {"y"};
    case BlockKind::JordanPair: return {"r", "theta", "theta_period"};
    case BlockKind::JordanBlock: return {"re", "im"};
    default: return {};
  }
}

std::size_t Block::rows() const {
  switch (kind) {
    case BlockKind::DualRot2: return 2;
    case BlockKind::JordanPair:
    case BlockKind::SingularPairRow:
    case BlockKind::JordanZeroLeft:
    case BlockKind::JordanZeroRight:
    case BlockKind::JordanBlock:
    case BlockKind::GraphComponent: return size;
    case BlockKind::SingularPairCol: return size + 1;
    case BlockKind::EmptyCol: return 0;
    default: return 1;
  }
}

std::size_t Block::cols() const {
  switch (kind) {
    case BlockKind::DualRot2: return 2;
    case BlockKind::JordanPair:
    case BlockKind::SingularPairCol:
    case BlockKind::JordanZeroLeft:
    case BlockKind::JordanZeroRight:
    case BlockKind::JordanBlock:
    case BlockKind::GraphComponent: return size;
    case BlockKind::SingularPairRow: return size + 1;
    case BlockKind::EmptyRow: return 0;
    default: return 1;
  }
}

bool block_less(const Block& a, const Block& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.size != b.size) return a.size < b.size;
  for (std::size_t i = 0; i < std::min(a.params.size(), b.params.size()); ++i)
    if (a.params[i] != b.params[i]) return a.params[i] > b.params[i];
  if (a.params.size() != b.params.size()) return a.params.size() < b.params.size();
  return a.graph < b.graph;
}

Matrix to_matrix(const Block& b, RingId ring) {
  const auto one = [ring]() { return Scalar::one(ring); };
  switch (b.kind) {
    case BlockKind::PosScalar:
    case BlockKind::SignedScalar: {
      require_ring(ring != RingId::DoubleComplexSwap, b, ring);
      Matrix m(ring, 1, 1);
      m(0, 0) = Scalar::from_real(ring, b.params[0]);
      return m;
    }
    case BlockKind::ZeroScalar: return Matrix(ring, 1, 1);
    case BlockKind::EmptyRow: return Matrix(ring, 1, 0);
    case BlockKind::EmptyCol: return Matrix(ring, 0, 1);
    case BlockKind::DualScalar: {
      require_ring(is_dual(ring), b, ring);
      Matrix m(ring, 1, 1);
      m(0, 0) = Scalar::dual(ring, b.params[0], b.params[1]);
      return m;
    }
    case BlockKind::DualEps: {
      require_ring(is_dual(ring), b, ring);
      Matrix m(ring, 1, 1);
      m(0, 0) = Scalar::dual(ring, 0.0, b.params[0]);
      return m;
    }
    case BlockKind::DualRot2: {
      require_ring(is_dual(ring), b, ring);
      const double x = b.params[0], y = b.params[1];
      return Matrix(ring, {{Scalar::dual(ring, x, 0.0), Scalar::dual(ring, 0.0, -y)},
                           {Scalar::dual(ring, 0.0, y), Scalar::dual(ring, x, 0.0)}});
    }
    case BlockKind::JordanPair: {
      require_ring(ring == RingId::DoubleComplexSwap, b, ring);
      const std::complex<double> mu = std::polar(b.params[0], b.params[1]);
      Matrix m(ring, b.size, b.size);
      for (std::size_t i = 0; i < b.size; ++i) {
        m(i, i) = Scalar::double_complex(mu, mu);
        if (i + 1 < b.size) {
          m(i, i + 1) = Scalar::double_complex(1.0, 0.0);
          m(i + 1, i) = Scalar::double_complex(0.0, 1.0);
        }
      }
      return m;
    }
    case BlockKind::SingularPairRow:
    case BlockKind::SingularPairCol:
    case BlockKind::JordanZeroLeft:
    case BlockKind::JordanZeroRight: {
      require_ring(ring == RingId::DoubleComplexSwap, b, ring);
      Matrix m(ring, b.rows(), b.cols());
      const auto put = [&m](std::size_t i, std::size_t j, double first, double second) {
        const auto cur = m(i, j);
        m(i, j) = Scalar::double_complex(cur.first() + first, cur.second() + second);
      };
      const std::size_t k = b.size;
      for (std::size_t i = 0; i < k; ++i) {
        switch (b.kind) {
          case BlockKind::SingularPairRow:  // A = (I 0), C = (0 I)
            put(i, i, 1, 0);
            put(i, i + 1, 0, 1);
            break;
          case BlockKind::SingularPairCol:  // A = (0; I), C = (I; 0)
            put(i + 1, i, 1, 0);
            put(i, i, 0, 1);
            break;
          case BlockKind::JordanZeroLeft:  // A = J(0), C = I
            if (i + 1 < k) put(i, i + 1, 1, 0);
            put(i, i, 0, 1);
            break;
          default:  // A = I, C = J(0)^T
            put(i, i, 1, 0);
            if (i + 1 < k) put(i + 1, i, 0, 1);
            break;
        }
      }
      return m;
    }
    case BlockKind::JordanBlock: {
      require_ring(ring == RingId::Complex, b, ring);
      Matrix m(ring, b.size, b.size);
      for (std::size_t i = 0; i < b.size; ++i) {
        m(i, i) = Scalar::complex({b.params[0], b.params[1]});
        if (i + 1 < b.size) m(i, i + 1) = one();
      }
      return m;
    }
    case BlockKind::GraphComponent: {
      require_ring(ring == RingId::IntegerTrivial, b, ring);
      Matrix m(ring, b.size, b.size);
      for (std::size_t i = 0; i < b.size; ++i)
        for (std::size_t j = 0; j < b.size; ++j) m(i, j) = Scalar::integer(b.graph[i * b.size + j]);
      return m;
    }
  }
  return {};
}

void require_supported(RingId ring, DecompKind kind) {
  bool ok = false;
  switch (kind) {
    case DecompKind::SVD: ok = ring != RingId::IntegerTrivial; break;
    case DecompKind::Spectral: ok = true; break;
    case DecompKind::Jordan: ok = ring == RingId::Complex; break;
  }
  if (!ok)
    throw Error(ErrorCode::UnsupportedRingKind,
                std::string(kind_name(kind)) + " over " + std::string(ring_name(ring)) + " is not supported");
}

bool is_generator(const Block& b, RingId ring, DecompKind kind) {
  require_supported(ring, kind);
  const auto& p = b.params;
  const auto arity_ok = [&b]() { return b.params.size() == param_names(b.kind).size(); };
  if (!arity_ok()) return false;
  if (kind == DecompKind::SVD) {
    if (b.kind == BlockKind::EmptyRow || b.kind == BlockKind::EmptyCol) return true;
    switch (ring) {
      case RingId::Real:
      case RingId::Complex:
      case RingId::Quaternion: return b.kind == BlockKind::PosScalar && p[0] > 0;
      case RingId::DualTrivial:
        return (b.kind == BlockKind::DualScalar && p[0] > 0) || (b.kind == BlockKind::DualEps && p[0] > 0);
      case RingId::DualConj:
        return (b.kind == BlockKind::PosScalar && p[0] > 0) ||
               (b.kind == BlockKind::DualRot2 && p[0] > 0 && p[1] > 0) ||
               (b.kind == BlockKind::DualEps && p[0] > 0);
      case RingId::DoubleComplexSwap:
        if (b.size == 0) return false;
        if (b.kind == BlockKind::JordanPair)
          return p[0] > 0 && p[1] >= 0 && p[1] < std::numbers::pi && p[2] == std::numbers::pi;
        return b.kind == BlockKind::SingularPairRow || b.kind == BlockKind::SingularPairCol ||
               b.kind == BlockKind::JordanZeroLeft || b.kind == BlockKind::JordanZeroRight;
      default: return false;
    }
  }
  if (kind == DecompKind::Spectral) {
    if (b.kind == BlockKind::ZeroScalar) return ring != RingId::DoubleComplexSwap && ring != RingId::IntegerTrivial;
    switch (ring) {
      case RingId::Real:
      case RingId::Complex:
      case RingId::Quaternion: return b.kind == BlockKind::SignedScalar && p[0] != 0;
      case RingId::DualTrivial:
        return (b.kind == BlockKind::DualScalar && p[0] != 0) || (b.kind == BlockKind::DualEps && p[0] != 0);
      case RingId::DualConj:
        return (b.kind == BlockKind::SignedScalar && p[0] != 0) || (b.kind == BlockKind::DualRot2 && p[1] > 0);
      case RingId::DoubleComplexSwap:
        return b.kind == BlockKind::JordanPair && b.size >= 1 && p[0] >= 0 && p[1] >= 0 && p[1] < kTwoPi &&
               p[2] == kTwoPi && (p[0] > 0 || p[1] == 0);
      case RingId::IntegerTrivial: {
        if (b.kind != BlockKind::GraphComponent || b.size == 0 || b.graph.size() != b.size * b.size) return false;
        for (std::size_t i = 0; i < b.size; ++i)
          for (std::size_t j = 0; j < b.size; ++j)
            if (b.graph[i * b.size + j] != b.graph[j * b.size + i]) return false;
        return graph_connected(b.size, b.graph);
      }
      default: return false;
    }
  }
  return b.kind == BlockKind::JordanBlock && b.size >= 1;
}

Block normalize_block(const Block& b, RingId ring, DecompKind kind) {
  require_supported(ring, kind);
  if (b.params.size() != param_names(b.kind).size()) not_generator(b, ring, kind);
  const auto& p = b.params;
  Block out = b;
  if (kind == DecompKind::SVD) {
    switch (b.kind) {
      case BlockKind::PosScalar:
      case BlockKind::SignedScalar:
        if (p[0] == 0) not_generator(b, ring, kind);
        // one-sided sign flip
        out = ring == RingId::DualTrivial ? Block::dual_scalar(std::abs(p[0]), 0.0) : Block::pos_scalar(std::abs(p[0]));
        break;
      case BlockKind::DualScalar:
        if (p[0] == 0 && p[1] == 0) not_generator(b, ring, kind);
        if (p[0] == 0) {
          out = Block::dual_eps(std::abs(p[1]));
        } else if (ring == RingId::DualConj) {
          // (1 + b eps) [x + y eps] (1 - c eps) clears y when x != 0
          out = Block::pos_scalar(std::abs(p[0]));
        } else {
          out = p[0] > 0 ? Block::dual_scalar(p[0], p[1]) : Block::dual_scalar(-p[0], -p[1]);
        }
        break;
      case BlockKind::DualEps:
        if (p[0] == 0) not_generator(b, ring, kind);
        out = Block::dual_eps(std::abs(p[0]));
        break;
      case BlockKind::DualRot2:
        if (ring != RingId::DualConj || p[0] == 0 || p[1] == 0) not_generator(b, ring, kind);
        out = Block::dual_rot2(std::abs(p[0]), std::abs(p[1]));
        break;
      case BlockKind::JordanPair:
        if (p[0] <= 0) not_generator(b, ring, kind);
        out = Block::jordan_pair(b.size, p[0], reduce_angle(p[1], std::numbers::pi), std::numbers::pi);
        break;
      default:
        break;
    }
  } else if (kind == DecompKind::Spectral) {
    switch (b.kind) {
      case BlockKind::PosScalar:
      case BlockKind::SignedScalar:
        if (ring == RingId::DualTrivial) {
          out = p[0] == 0 ? Block::zero_scalar() : Block::dual_scalar(p[0], 0.0);
        } else {
          out = p[0] == 0 ? Block::zero_scalar() : Block::signed_scalar(p[0]);
        }
        break;
      case BlockKind::DualScalar:
        if (ring == RingId::DualConj) {
          if (p[1] != 0) not_generator(b, ring, kind);
          out = p[0] == 0 ? Block::zero_scalar() : Block::signed_scalar(p[0]);
        } else if (p[0] == 0) {
          out = p[1] == 0 ? Block::zero_scalar() : Block::dual_eps(p[1]);
        }
        break;
      case BlockKind::DualEps:
        if (ring != RingId::DualTrivial) not_generator(b, ring, kind);
        if (p[0] == 0) out = Block::zero_scalar();
        break;
      case BlockKind::DualRot2:
        // conjugation by diag(1, -1) flips the sign of y
        if (ring != RingId::DualConj || p[1] == 0) not_generator(b, ring, kind);
        out = Block::dual_rot2(p[0], std::abs(p[1]));
        break;
      case BlockKind::JordanPair: {
        if (p[0] < 0) not_generator(b, ring, kind);
        const double theta = p[0] == 0 ? 0.0 : reduce_angle(p[1], kTwoPi);
        out = Block::jordan_pair(b.size, p[0], theta, kTwoPi);
        break;
      }
      case BlockKind::GraphComponent: {
        const auto canon = canonical_graph(b.size, b.graph, std::max<std::size_t>(b.size, 8));
        out = Block::graph_component(b.size, canon.entries);
        break;
      }
      default:
        break;
    }
  }
  if (!is_generator(out, ring, kind)) not_generator(b, ring, kind);
  return out;
}

BlockMultiset::BlockMultiset(std::vector<Block> items) : items_(std::move(items)) {
  std::stable_sort(items_.begin(), items_.end(), block_less);
}

void BlockMultiset::insert(Block b) {
  const auto pos = std::upper_bound(items_.begin(), items_.end(), b, block_less);
  items_.insert(pos, std::move(b));
}

BlockMultiset operator+(const BlockMultiset& a, const BlockMultiset& b) {
  std::vector<Block> all = a.items_;
  all.insert(all.end(), b.items_.begin(), b.items_.end());
  return BlockMultiset(std::move(all));
}

double param_distance(const Block& a, const Block& b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (a.kind != b.kind || a.size != b.size || a.params.size() != b.params.size() || a.graph != b.graph) return inf;
  if (a.kind == BlockKind::JordanPair) {
    if (a.params[2] != b.params[2]) return inf;
    // Compare r e^{2 pi i theta / period} so theta and theta + period coincide.
    const double scale = kTwoPi / a.params[2];
    return std::abs(std::polar(a.params[0], scale * a.params[1]) - std::polar(b.params[0], scale * b.params[1]));
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.params.size(); ++i) d = std::max(d, std::abs(a.params[i] - b.params[i]));
  return d;
}

bool multiset_eq(const BlockMultiset& s1, const BlockMultiset& s2, double tol) {
  const auto& a = s1.items();
  const auto& b = s2.items();
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (param_distance(a[i], b[j]) <= tol) adj[i].push_back(j);

  // Kuhn's augmenting paths.
  std::vector<long> match_b(n, -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j : adj[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (match_b[j] < 0 || augment(static_cast<std::size_t>(match_b[j]))) {
        match_b[j] = static_cast<long>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    seen.assign(n, 0);
    if (!augment(i)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Signed-permutation canonical form

bool graph_connected(std::size_t n, const std::vector<std::int64_t>& entries) {
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < n; ++w) {
      if (w != v && !seen[w] && entries[v * n + w] != 0) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

namespace {

// Entry order: by |v|, then +v before -v.
bool entry_less(std::int64_t a, std::int64_t b) {
  const auto aa = a < 0 ? -a : a;
  const auto bb = b < 0 ? -b : b;
  if (aa != bb) return aa < bb;
  return a > b;
}

// Lexicographically least sign pattern for a fixed relabeling: walk the upper
// triangle in row-major order and make every entry whose sign is still free
// positive (parity union-find over vertices).
void best_signs(std::size_t n, const std::vector<std::int64_t>& m, const std::vector<std::size_t>& perm,
                std::vector<int>& sign) {
  std::vector<std::size_t> parent(n);
  std::vector<int> parity(n, 0);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    int par = 0;
    while (parent[x] != x) {
      par ^= parity[x];
      x = parent[x];
    }
    return std::pair{x, par};
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::int64_t v = m[perm[i] * n + perm[j]];
      if (v == 0) continue;
      auto [ri, pi] = find(i);
      auto [rj, pj] = find(j);
      if (ri == rj) continue;
      // want s_i s_j v > 0, i.e. pi ^ pj ^ link == (v < 0)
      parent[rj] = ri;
      parity[rj] = pi ^ pj ^ (v < 0 ? 1 : 0);
    }
  }
  sign.assign(n, 1);
  for (std::size_t i = 0; i < n; ++i) sign[i] = find(i).second ? -1 : 1;
}

}  // namespace

GraphCanonical canonical_graph(std::size_t n, const std::vector<std::int64_t>& entries, std::size_t cap) {
  if (n > cap)
    throw Error(ErrorCode::SizeCapExceeded, "component of size " + std::to_string(n) + " exceeds cap " +
                                                std::to_string(cap));
  if (entries.size() != n * n) throw Error(ErrorCode::ShapeMismatch, "graph entries do not match size");
  GraphCanonical best;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> sign;
  std::vector<std::int64_t> cand(n * n);
  bool have = false;
  do {
    best_signs(n, entries, perm, sign);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cand[i * n + j] = sign[i] * sign[j] * entries[perm[i] * n + perm[j]];
    if (!have ||
        std::lexicographical_compare(cand.begin(), cand.end(), best.entries.begin(), best.entries.end(), entry_less)) {
      best.entries = cand;
      best.perm = perm;
      best.sign = sign;
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace ringdecomp
