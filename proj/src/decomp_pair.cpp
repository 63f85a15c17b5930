// Double-complex ring. A matrix is a pair (A, C); unitaries are (P, P^-T), so
// the SVD is the contragredient action (A, B) -> (P^-1 A Q, Q^-1 B P) with
// B = C^T, and the spectral form of (A, A^T) is the Jordan form of A.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "convert.hpp"
#include "drivers.hpp"
#include "ringdecomp/error.hpp"

namespace ringdecomp::detail {

namespace {

using engines::inverse;

Matrix unitary_of(const CMat& p) { return from_pair(p, transpose(inverse(p))); }

double zero_level(const CMat& a) {
  const double dim = static_cast<double>(std::max<std::size_t>({a.rows(), a.cols(), 1}));
  return dim * engines::kRankTol * std::max(1.0, max_abs(a));
}

std::vector<cplx> matvec(const CMat& a, const std::vector<cplx>& v) {
  std::vector<cplx> out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

// Orthonormal completion helper: removes the span of `basis` from v.
void project_out(std::vector<cplx>& v, const std::vector<std::vector<cplx>>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) {
      cplx dot = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) dot += std::conj(b[i]) * v[i];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * b[i];
    }
}

double norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

struct GradedResult {
  CMat p;  // m0 x m0, columns y
  CMat q;  // n0 x n0, columns x
  std::vector<Block> blocks;
};

// Strings of the nilpotent pair (A0: X -> Y, B0: Y -> X).
GradedResult graded_strings(const CMat& a0, const CMat& b0) {
  const std::size_t n0 = a0.cols(), m0 = a0.rows();
  const std::size_t dim = n0 + m0;
  GradedResult out{CMat(m0, m0), CMat(n0, n0), {}};
  if (dim == 0) return out;

  // Coordinates (x; y).
  CMat h(dim, dim);
  h.set_block(0, n0, b0);
  h.set_block(n0, 0, a0);
  const std::size_t off[2] = {0, n0};
  const std::size_t len[2] = {n0, m0};

  const double scale = std::max(1.0, max_abs(h));
  const double floor = 1e-8 * scale;
  std::vector<CMat> powers{CMat::identity(dim)};
  std::vector<double> floors{0.0};
  for (std::size_t t = 1; t <= dim + 1; ++t) {
    powers.push_back(powers.back() * h);
    floors.push_back(t == 1 ? floor : floors.back() * scale);
  }
  // rho[s][t] = rank(h^t restricted to side s)
  std::vector<std::size_t> rho[2];
  for (int s = 0; s < 2; ++s)
    for (std::size_t t = 0; t <= dim + 1; ++t)
      rho[s].push_back(len[s] == 0 ? 0 : engines::numerical_rank(powers[t].block(0, off[s], dim, len[s]), floors[t]));
  if (rho[0][dim] + rho[1][dim] != 0)
    throw Error(ErrorCode::ClusterAmbiguity, "nilpotent part of the pair is not nilpotent at working precision");

  // count[s][L]: strings of length L whose top lies on side s.
  std::vector<std::size_t> count[2];
  std::size_t total = 0;
  for (int s = 0; s < 2; ++s) {
    count[s].assign(dim + 1, 0);
    for (std::size_t l = 1; l <= dim; ++l) {
      const long c = (static_cast<long>(rho[s][l - 1]) - static_cast<long>(rho[s][l])) -
                     (static_cast<long>(rho[1 - s][l]) - static_cast<long>(rho[1 - s][l + 1]));
      if (c < 0) throw Error(ErrorCode::ClusterAmbiguity, "inconsistent rank chain in the nilpotent part");
      count[s][l] = static_cast<std::size_t>(c);
      total += l * count[s][l];
    }
  }
  if (total != dim) throw Error(ErrorCode::ClusterAmbiguity, "string lengths do not fill the nilpotent part");

  struct Chain {
    int side;
    std::vector<std::vector<cplx>> v;  // v[0] = top, v[j + 1] = h v[j]
  };
  std::vector<Chain> chains;
  std::vector<std::vector<cplx>> bottoms;
  for (std::size_t l = dim; l >= 1; --l) {
    for (int s = 0; s < 2; ++s) {
      if (count[s][l] == 0) continue;
      const CMat ker = engines::null_space(powers[l].block(0, off[s], dim, len[s]), floors[l]);
      CMat w(dim, ker.cols());
      w.set_block(off[s], 0, ker);
      CMat img = powers[l - 1] * w;
      for (std::size_t j = 0; j < img.cols(); ++j) {
        auto c = img.col(j);
        project_out(c, bottoms);
        img.set_col(j, c);
      }
      const auto sv = engines::complex_svd(img);
      const std::size_t need = count[s][l];
      if (sv.sigma.size() < need || sv.sigma[need - 1] < 1e-6 * std::pow(scale, static_cast<double>(l - 1)))
        throw Error(ErrorCode::ClusterAmbiguity, "string selection degenerated");
      for (std::size_t c = 0; c < need; ++c) {
        Chain ch{s, {matvec(w, sv.v.col(c))}};
        for (std::size_t j = 1; j < l; ++j) ch.v.push_back(matvec(h, ch.v.back()));
        auto b = ch.v.back();
        project_out(b, bottoms);
        const double nb = norm(b);
        for (auto& z : b) z /= nb;
        bottoms.push_back(std::move(b));
        chains.push_back(std::move(ch));
      }
    }
    if (l == 1) break;
  }

  std::size_t pc = 0, qc = 0;
  const auto put = [&](int side, const std::vector<cplx>& v) {
    if (side == 0) {
      for (std::size_t i = 0; i < n0; ++i) out.q(i, qc) = v[i];
      ++qc;
    } else {
      for (std::size_t i = 0; i < m0; ++i) out.p(i, pc) = v[n0 + i];
      ++pc;
    }
  };
  for (const auto& ch : chains) {
    const std::size_t l = ch.v.size();
    const std::size_t k = l / 2;
    if (l % 2 == 1) {
      // top side gets the odd positions in order, the other side the even ones
      for (std::size_t j = 0; j < l; j += 2) put(ch.side, ch.v[j]);
      for (std::size_t j = 1; j < l; j += 2) put(1 - ch.side, ch.v[j]);
      if (ch.side == 0)
        out.blocks.push_back(k == 0 ? Block::empty_col() : Block::singular_pair_row(k));
      else
        out.blocks.push_back(k == 0 ? Block::empty_row() : Block::singular_pair_col(k));
    } else {
      // positions run from the last index down
      for (std::size_t j = l; j >= 2; j -= 2) put(ch.side, ch.v[j - 2]);
      for (std::size_t j = l; j >= 2; j -= 2) put(1 - ch.side, ch.v[j - 1]);
      out.blocks.push_back(ch.side == 0 ? Block::jordan_zero_right(k) : Block::jordan_zero_left(k));
    }
  }
  return out;
}

// Zero keys for a spectrum. A nilpotent block of index k smears its eigenvalues
// to radius ~ eps^(1/k), so the zero radius grows with the size of the zero group.
std::vector<int> zero_keys(const std::vector<cplx>& vals, double tol, double scale) {
  const auto radius = [&](std::size_t k) {
    return std::max(tol, scale * std::pow(1e-14, 1.0 / static_cast<double>(std::max<std::size_t>(k, 1))));
  };
  double t = tol;
  for (std::size_t m = vals.size(); m >= 1; --m) {
    std::size_t c = 0;
    for (const auto& z : vals) c += std::abs(z) <= radius(m) ? 1 : 0;
    if (c >= m) {
      t = radius(m);
      break;
    }
  }
  std::vector<int> keys;
  for (const auto& z : vals) {
    const double a = std::abs(z);
    if (a > t && a <= 10.0 * t)
      throw Error(ErrorCode::ClusterAmbiguity, "eigenvalue of modulus " + std::to_string(a) + " is too close to zero");
    keys.push_back(a <= t ? 0 : 1);
  }
  return keys;
}

std::size_t zero_block_size(const engines::SchurSplit& split) {
  return !split.group_keys.empty() && split.group_keys.front() == 0 ? split.blocks.front().rows() : 0;
}

}  // namespace

Raw pair_spectral(const Matrix& m, const DecompOptions& opts) {
  const CMat a = complex_view(m, 0);
  const auto js = engines::complex_jordan(a, opts.cluster_tol);
  const double zero = zero_level(a);
  Raw raw{unitary_of(js.transform), Matrix(), {}};
  raw.right = raw.left;
  for (const auto& c : js.clusters) {
    const double r = std::abs(c.eigenvalue) <= zero ? 0.0 : std::abs(c.eigenvalue);
    double theta = r == 0.0 ? 0.0 : std::arg(c.eigenvalue);
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;
    if (theta >= 2.0 * std::numbers::pi) theta = 0.0;
    for (std::size_t k : c.segre) raw.blocks.push_back(Block::jordan_pair(k, r, theta, 2.0 * std::numbers::pi));
  }
  return raw;
}

Raw pair_svd(const Matrix& m, const DecompOptions& opts) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const CMat a = complex_view(m, 0);
  const CMat b = transpose(complex_view(m, 2));
  if (rows == 0 || cols == 0) {
    Raw raw{unitary_of(CMat::identity(rows)), unitary_of(CMat::identity(cols)), {}};
    for (std::size_t i = 0; i < rows; ++i) raw.blocks.push_back(Block::empty_row());
    for (std::size_t j = 0; j < cols; ++j) raw.blocks.push_back(Block::empty_col());
    return raw;
  }

  // Fitting split: generalized kernels of AB and BA versus the invertible part.
  const CMat ab = a * b, ba = b * a;
  const double scale = std::max(1.0, std::max(max_abs(ab), max_abs(ba)));
  const double ztol = opts.cluster_tol * scale;
  const auto grouping = [ztol, scale](const std::vector<cplx>& vals) { return zero_keys(vals, ztol, scale); };
  const auto sy = engines::schur_split(ab, grouping);
  const auto sx = engines::schur_split(ba, grouping);
  const std::size_t m0 = zero_block_size(sy), n0 = zero_block_size(sx);
  if (rows - m0 != cols - n0) throw Error(ErrorCode::ClusterAmbiguity, "AB and BA disagree on the invertible part");
  const std::size_t d = rows - m0;

  const CMat at = inverse(sy.transform) * a * sx.transform;
  const CMat bt = inverse(sx.transform) * b * sy.transform;

  const auto nil = graded_strings(at.block(0, 0, m0, n0), bt.block(0, 0, n0, m0));

  // Invertible part: A1 B1 = R J(nu) R^-1, then J(nu) ~ J(mu)^2 with mu^2 = nu.
  const CMat a1 = at.block(m0, n0, d, d), b1 = bt.block(n0, m0, d, d);
  const auto js = engines::complex_jordan(a1 * b1, opts.cluster_tol);
  CMat winv(d, d), kmat(d, d);
  std::vector<Block> inv_blocks;
  std::size_t pos = 0;
  for (const auto& c : js.clusters) {
    cplx mu = std::sqrt(c.eigenvalue);
    if (std::arg(mu) < 0.0) mu = -mu;
    const double theta = std::arg(mu);
    for (std::size_t k : c.segre) {
      // w_j = N'^(k-j) e_k with N' = J(mu)^2 - nu = 2 mu N + N^2
      const CMat jm = engines::jordan_block(k, mu);
      CMat np = jm * jm;
      for (std::size_t i = 0; i < k; ++i) np(i, i) -= mu * mu;
      CMat w(k, k);
      std::vector<cplx> v(k, 0.0);
      v[k - 1] = 1.0;
      for (std::size_t j = k; j-- > 0;) {
        w.set_col(j, v);
        v = matvec(np, v);
      }
      winv.set_block(pos, pos, inverse(w));
      kmat.set_block(pos, pos, jm);
      inv_blocks.push_back(Block::jordan_pair(k, std::abs(mu), theta, std::numbers::pi));
      pos += k;
    }
  }
  const CMat p1 = js.transform * winv;
  const CMat q1 = inverse(a1) * p1 * kmat;

  const CMat p = sy.transform * block_diag(nil.p, p1);
  const CMat q = sx.transform * block_diag(nil.q, q1);
  Raw raw{unitary_of(p), unitary_of(q), nil.blocks};
  raw.blocks.insert(raw.blocks.end(), inv_blocks.begin(), inv_blocks.end());
  return raw;
}

}  // namespace ringdecomp::detail
