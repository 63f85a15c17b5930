// Dual-number drivers. Both reduce to the real part first and then absorb the
// eps-part with first-order corrections U = U0 (I + eps K), where K is
// antisymmetric under the trivial involution and symmetric under the
// conjugate one.

#include <algorithm>
#include <cmath>

#include "convert.hpp"
#include "drivers.hpp"
#include "ringdecomp/error.hpp"

namespace ringdecomp::detail {

namespace {

using engines::cluster;
using engines::require_separated;

// Right-multiplies columns [c0, c0 + q.rows()) of u by q.
void rotate_cols(RMat& u, std::size_t c0, const RMat& q) {
  u.set_block(0, c0, u.block(0, c0, u.rows(), q.rows()) * q);
}

double zero_level(const Matrix& m) {
  const double dim = static_cast<double>(std::max<std::size_t>({m.rows(), m.cols(), 1}));
  return dim * engines::kRankTol * std::max(1.0, max_norm(m));
}

// Index ranges of clustered, descending values.
struct Range {
  std::size_t begin, end;
  double value;
};

std::vector<Range> clustered_ranges(const std::vector<double>& values, double tol) {
  std::vector<cplx> vals(values.begin(), values.end());
  const auto groups = cluster(vals, tol);
  require_separated(groups, tol);
  std::vector<Range> out;
  for (const auto& g : groups) {
    const auto [lo, hi] = std::minmax_element(g.members.begin(), g.members.end());
    out.push_back({*lo, *hi + 1, g.value.real()});
  }
  std::sort(out.begin(), out.end(), [](const Range& a, const Range& b) { return a.begin < b.begin; });
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t expect = i == 0 ? 0 : out[i - 1].end;
    if (out[i].begin != expect) throw Error(ErrorCode::ClusterAmbiguity, "clusters interleave");
  }
  return out;
}

RMat sym_part(const RMat& a, double sign) { return 0.5 * (a + sign * transpose(a)); }

}  // namespace

Raw dual_svd(const Matrix& m, const DecompOptions& opts) {
  const RingId ring = m.ring();
  const double s = ring == RingId::DualTrivial ? -1.0 : 1.0;
  const std::size_t rows = m.rows(), cols = m.cols();
  const RMat m0 = component(m, 0);
  const RMat m1 = component(m, 1);
  const double zero = zero_level(m);

  const auto base = engines::real_svd(m0);
  RMat u0 = base.u, v0 = base.v;
  const std::size_t r = base.rank;
  std::vector<double> sigma(base.sigma.begin(), base.sigma.begin() + static_cast<std::ptrdiff_t>(r));
  const auto ranges = clustered_ranges(sigma, opts.cluster_tol);

  std::vector<Block> blocks;
  std::vector<double> sig(r);
  for (const auto& c : ranges) {
    const std::size_t k = c.end - c.begin;
    for (std::size_t i = c.begin; i < c.end; ++i) sig[i] = c.value;
    const RMat proj = (transpose(u0) * m1 * v0).block(c.begin, c.begin, k, k);
    if (s < 0) {
      // Symmetric residue survives; diagonalize it inside the cluster.
      const auto eig = engines::symmetric_eig(sym_part(proj, 1.0));
      rotate_cols(u0, c.begin, eig.vectors);
      rotate_cols(v0, c.begin, eig.vectors);
      for (double y : eig.values) blocks.push_back(Block::dual_scalar(c.value, y));
    } else {
      const auto ac = engines::antisymmetric_canonical(sym_part(proj, -1.0), zero);
      rotate_cols(u0, c.begin, ac.q);
      rotate_cols(v0, c.begin, ac.q);
      for (double y : ac.pairs) blocks.push_back(Block::dual_rot2(c.value, y));
      for (std::size_t z = 0; z < ac.zeros; ++z) blocks.push_back(Block::pos_scalar(c.value));
    }
  }

  // eps-part on the common null space of the real part.
  std::size_t t = 0;
  if (rows > r && cols > r) {
    const RMat z = (transpose(u0) * m1 * v0).block(r, r, rows - r, cols - r);
    const auto zs = engines::real_svd(z);
    rotate_cols(u0, r, zs.u);
    rotate_cols(v0, r, zs.v);
    while (t < zs.rank && zs.sigma[t] > zero) {
      blocks.push_back(Block::dual_eps(zs.sigma[t]));
      ++t;
    }
  }
  for (std::size_t i = r + t; i < rows; ++i) blocks.push_back(Block::empty_row());
  for (std::size_t j = r + t; j < cols; ++j) blocks.push_back(Block::empty_col());

  // e_ij = M'_ij - K_ij sigma_j + sigma_i L_ij; clear everything off the blocks.
  const RMat mp = transpose(u0) * m1 * v0;
  RMat k(rows, rows), l(cols, cols);
  std::vector<std::size_t> cluster_of(r);
  for (std::size_t c = 0; c < ranges.size(); ++c)
    for (std::size_t i = ranges[c].begin; i < ranges[c].end; ++i) cluster_of[i] = c;
  for (std::size_t i = 0; i < r; ++i) {
    if (s > 0) l(i, i) = -mp(i, i) / sig[i];
    for (std::size_t j = i + 1; j < r; ++j) {
      const double a = mp(i, j), b = mp(j, i);
      if (cluster_of[i] == cluster_of[j]) {
        const double d = -(a + s * b) / (2.0 * sig[i]);
        l(i, j) = d;
        l(j, i) = s * d;
      } else {
        // [[-sj, si], [-s si, s sj]] (K, L) = -(a, b)
        const double si = sig[i], sj = sig[j];
        const double det = s * (si * si - sj * sj);
        const double kk = (-a * s * sj + si * b) / det;
        const double ll = (sj * b - s * si * a) / det;
        k(i, j) = kk;
        k(j, i) = s * kk;
        l(i, j) = ll;
        l(j, i) = s * ll;
      }
    }
    for (std::size_t j = r; j < cols; ++j) {
      l(i, j) = -mp(i, j) / sig[i];
      l(j, i) = s * l(i, j);
    }
    for (std::size_t j = r; j < rows; ++j) {
      k(j, i) = mp(j, i) / sig[i];
      k(i, j) = s * k(j, i);
    }
  }

  return {from_dual(ring, u0, u0 * k), from_dual(ring, v0, v0 * l), std::move(blocks)};
}

Raw dual_spectral(const Matrix& m, const DecompOptions& opts) {
  const RingId ring = m.ring();
  const double s = ring == RingId::DualTrivial ? -1.0 : 1.0;
  const std::size_t n = m.rows();
  const RMat m0 = component(m, 0);
  const RMat m1 = component(m, 1);
  const double zero = zero_level(m);

  const auto base = engines::symmetric_eig(sym_part(m0, 1.0));
  RMat v0 = base.vectors;
  const auto ranges = clustered_ranges(base.values, opts.cluster_tol);

  std::vector<Block> blocks;
  std::vector<double> d(n);
  for (const auto& c : ranges) {
    const std::size_t k = c.end - c.begin;
    const double x = std::abs(c.value) <= zero ? 0.0 : c.value;
    for (std::size_t i = c.begin; i < c.end; ++i) d[i] = x;
    const RMat proj = (transpose(v0) * m1 * v0).block(c.begin, c.begin, k, k);
    if (s < 0) {
      const auto eig = engines::symmetric_eig(sym_part(proj, 1.0));
      rotate_cols(v0, c.begin, eig.vectors);
      for (double y : eig.values) {
        if (x != 0.0)
          blocks.push_back(Block::dual_scalar(x, y));
        else
          blocks.push_back(std::abs(y) > zero ? Block::dual_eps(y) : Block::zero_scalar());
      }
    } else {
      const auto ac = engines::antisymmetric_canonical(sym_part(proj, -1.0), zero);
      rotate_cols(v0, c.begin, ac.q);
      for (double y : ac.pairs) blocks.push_back(Block::dual_rot2(x, y));
      for (std::size_t z = 0; z < ac.zeros; ++z)
        blocks.push_back(x != 0.0 ? Block::signed_scalar(x) : Block::zero_scalar());
    }
  }

  // e_ij = M'_ij + (d_i - d_j) K_ij
  const RMat mp = transpose(v0) * m1 * v0;
  RMat k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i] == d[j]) continue;
      k(i, j) = -mp(i, j) / (d[i] - d[j]);
      k(j, i) = s * k(i, j);
    }
  const Matrix v = from_dual(ring, v0, v0 * k);
  return {v, v, std::move(blocks)};
}

}  // namespace ringdecomp::detail
