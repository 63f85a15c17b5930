#include "ringdecomp/engines.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "ringdecomp/error.hpp"

namespace ringdecomp::engines {

namespace {

template <class K>
struct Rotation {
  K g00, g01, g10, g11;
};

// Unitary G = diag(1, w) * [[c, s], [-s, c]] with G* [[app, apq], [apq*, aqq]] G
// diagonal; w strips the phase of apq so the remaining problem is real.
template <class K>
Rotation<K> hermitian_rotation(double app, double aqq, const K& apq) {
  const double ag = std::sqrt(abs2_of(apq));
  const K w = conj_of(apq) / ag;
  const double tau = (aqq - app) / (2.0 * ag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  return {K(c), K(s), -s * w, c * w};
}

template <class K>
void apply_right(Dense<K>& m, std::size_t p, std::size_t q, const Rotation<K>& g) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const K mp = m(i, p);
    const K mq = m(i, q);
    m(i, p) = mp * g.g00 + mq * g.g10;
    m(i, q) = mp * g.g01 + mq * g.g11;
  }
}

template <class K>
void apply_left_adjoint(Dense<K>& m, std::size_t p, std::size_t q, const Rotation<K>& g) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const K rp = m(p, j);
    const K rq = m(q, j);
    m(p, j) = conj_of(g.g00) * rp + conj_of(g.g10) * rq;
    m(q, j) = conj_of(g.g01) * rp + conj_of(g.g11) * rq;
  }
}

template <class K>
K inner(const std::vector<K>& u, const std::vector<K>& v) {
  K acc(0.0);
  for (std::size_t i = 0; i < u.size(); ++i) acc += conj_of(u[i]) * v[i];
  return acc;
}

template <class K>
double norm(const std::vector<K>& v) {
  double acc = 0.0;
  for (const auto& x : v) acc += abs2_of(x);
  return std::sqrt(acc);
}

// v <- v - sum_q q <q, v>, applied twice for stability.
template <class K>
void project_out(std::vector<K>& v, const std::vector<std::vector<K>>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) {
      const K c = inner(q, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= q[i] * c;
    }
  }
}

template <class K>
std::vector<K> scaled(const std::vector<K>& v, double s) {
  std::vector<K> r(v);
  for (auto& x : r) x = s * x;
  return r;
}

std::vector<double> matvec(const RMat& a, const std::vector<double>& v) {
  std::vector<double> r(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

CMat to_cmat(const Eigen::MatrixXcd& e) {
  CMat m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

std::string fmt_cplx(cplx z) {
  std::ostringstream os;
  os.precision(12);
  os << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Eigensolvers and SVD

template <class K>
EigResult<K> jacobi_eig(const Dense<K>& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorCode::NotHermitian, "eigensolver needs a square matrix");
  const double scale = std::max(1.0, max_abs(a));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::sqrt(abs2_of(a(i, j) - conj_of(a(j, i)))) > 1e-9 * scale)
        throw Error(ErrorCode::NotHermitian, "matrix is not self-adjoint");

  Dense<K> h = a;
  for (std::size_t i = 0; i < n; ++i) h(i, i) = K(real_of(h(i, i)));
  Dense<K> v = Dense<K>::identity(n);

  for (int sweep = 0; sweep < 80; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      diag += abs2_of(h(p, p));
      for (std::size_t q = p + 1; q < n; ++q) off += abs2_of(h(p, q));
    }
    if (off == 0.0 || off <= 1e-34 * (off + diag)) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (abs2_of(h(p, q)) <= 1e-40 * (off + diag)) continue;
        const auto g = hermitian_rotation(real_of(h(p, p)), real_of(h(q, q)), h(p, q));
        apply_right(h, p, q, g);
        apply_left_adjoint(h, p, q, g);
        apply_right(v, p, q, g);
        h(p, q) = K(0.0);
        h(q, p) = K(0.0);
        h(p, p) = K(real_of(h(p, p)));
        h(q, q) = K(real_of(h(q, q)));
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&h](std::size_t x, std::size_t y) { return real_of(h(x, x)) > real_of(h(y, y)); });
  EigResult<K> out;
  out.vectors = permute_cols(v, order);
  for (std::size_t k : order) out.values.push_back(real_of(h(k, k)));
  return out;
}

EigResult<double> symmetric_eig(const RMat& a) {
  try {
    return jacobi_eig(a);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotHermitian) throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");
    throw;
  }
}

EigResult<cplx> hermitian_eig(const CMat& a) { return jacobi_eig(a); }

template <class K>
Dense<K> complete_unitary(const Dense<K>& basis, std::size_t k) {
  const std::size_t n = basis.rows();
  std::vector<std::vector<K>> cols;
  for (std::size_t j = 0; j < k; ++j) {
    auto c = basis.col(j);
    project_out(c, cols);
    const double nc = norm(c);
    if (nc > 1e-12) cols.push_back(scaled(c, 1.0 / nc));
  }
  while (cols.size() < n) {
    std::vector<K> best;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<K> e(n, K(0.0));
      e[i] = K(1.0);
      project_out(e, cols);
      const double ne = norm(e);
      if (ne > best_norm) {
        best_norm = ne;
        best = std::move(e);
      }
    }
    cols.push_back(scaled(best, 1.0 / best_norm));
  }
  Dense<K> u(n, n);
  for (std::size_t j = 0; j < n; ++j) u.set_col(j, cols[j]);
  return u;
}

template <class K>
SvdResult<K> jacobi_svd(const Dense<K>& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) {
    // Wide input: work on the adjoint so rotations act on the short side.
    auto t = jacobi_svd(adjoint(a));
    std::swap(t.u, t.v);
    return t;
  }
  Dense<K> w = a;
  Dense<K> v = Dense<K>::identity(n);
  double frob2 = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) frob2 += abs2_of(a(i, j));
  // Columns below this squared norm are numerically zero; rotating them
  // against each other only amplifies round-off.
  const double negligible = 1e-34 * frob2;

  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        K gamma(0.0);
        for (std::size_t i = 0; i < m; ++i) {
          alpha += abs2_of(w(i, p));
          beta += abs2_of(w(i, q));
          gamma += conj_of(w(i, p)) * w(i, q);
        }
        if (alpha <= negligible || beta <= negligible) continue;
        if (std::sqrt(abs2_of(gamma)) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        const auto g = hermitian_rotation(alpha, beta, gamma);
        apply_right(w, p, q, g);
        apply_right(v, p, q, g);
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = norm(w.col(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&norms](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdResult<K> out;
  const std::size_t k = std::min(m, n);
  for (std::size_t j = 0; j < k; ++j) out.sigma.push_back(norms[order[j]]);
  const double smax = out.sigma.empty() ? 0.0 : out.sigma.front();
  const double thr = static_cast<double>(std::max(m, n)) * kRankTol * smax;
  while (out.rank < k && out.sigma[out.rank] > thr) ++out.rank;

  Dense<K> ub(m, out.rank);
  for (std::size_t j = 0; j < out.rank; ++j) ub.set_col(j, scaled(w.col(order[j]), 1.0 / out.sigma[j]));
  out.u = complete_unitary(ub, out.rank);
  out.v = permute_cols(v, order);
  return out;
}

SvdResult<double> real_svd(const RMat& a) { return jacobi_svd(a); }
SvdResult<cplx> complex_svd(const CMat& a) { return jacobi_svd(a); }

template <class K>
std::size_t numerical_rank(const Dense<K>& a, double abs_floor) {
  const auto s = jacobi_svd(a);
  if (s.sigma.empty()) return 0;
  const double thr = std::max(static_cast<double>(std::max(a.rows(), a.cols())) * kRankTol * s.sigma.front(), abs_floor);
  return static_cast<std::size_t>(std::count_if(s.sigma.begin(), s.sigma.end(), [thr](double x) { return x > thr; }));
}

CMat null_space(const CMat& a, double abs_floor) {
  const auto s = jacobi_svd(a);
  const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
  const double thr = std::max(static_cast<double>(std::max(a.rows(), a.cols())) * kRankTol * smax, abs_floor);
  std::size_t r = 0;
  while (r < s.sigma.size() && s.sigma[r] > thr) ++r;
  const std::size_t n = a.cols();
  return s.v.block(0, r, n, n - r);
}

template EigResult<double> jacobi_eig(const Dense<double>&);
template EigResult<cplx> jacobi_eig(const Dense<cplx>&);
template EigResult<Quat> jacobi_eig(const Dense<Quat>&);
template SvdResult<double> jacobi_svd(const Dense<double>&);
template SvdResult<cplx> jacobi_svd(const Dense<cplx>&);
template SvdResult<Quat> jacobi_svd(const Dense<Quat>&);
template Dense<double> complete_unitary(const Dense<double>&, std::size_t);
template Dense<cplx> complete_unitary(const Dense<cplx>&, std::size_t);
template Dense<Quat> complete_unitary(const Dense<Quat>&, std::size_t);
template std::size_t numerical_rank(const Dense<double>&, double);
template std::size_t numerical_rank(const Dense<cplx>&, double);
template std::size_t numerical_rank(const Dense<Quat>&, double);

// ---------------------------------------------------------------------------
// Antisymmetric canonical form

AntisymCanonical antisymmetric_canonical(const RMat& a, double zero_tol) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorCode::NotAntisymmetric, "matrix is not square");
  const double scale = std::max(1.0, max_abs(a));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(a(i, j) + a(j, i)) > 1e-9 * scale)
        throw Error(ErrorCode::NotAntisymmetric, "matrix is not antisymmetric");

  // Eigenvectors of a^T a span the invariant planes; each accepted v brings its
  // partner a v / |a v| along.
  const auto gram = jacobi_eig(transpose(a) * a);
  if (zero_tol < 0.0) {
    const double ymax = gram.values.empty() ? 0.0 : std::sqrt(std::max(0.0, gram.values.front()));
    zero_tol = static_cast<double>(std::max<std::size_t>(n, 1)) * kRankTol * ymax;
  }

  std::vector<std::vector<double>> candidates;
  for (std::size_t j = 0; j < n; ++j) candidates.push_back(gram.vectors.col(j));

  struct Plane {
    std::vector<double> q1, q2;
    double y;
  };
  std::vector<Plane> planes;
  std::vector<std::vector<double>> zeros;
  std::vector<std::vector<double>> accepted;

  while (accepted.size() < n && !candidates.empty()) {
    std::size_t best = 0;
    double best_norm = -1.0;
    std::vector<double> best_res;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      auto r = candidates[c];
      project_out(r, accepted);
      const double nr = norm(r);
      if (nr > best_norm) {
        best_norm = nr;
        best = c;
        best_res = std::move(r);
      }
    }
    if (best_norm < 0.1) break;
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
    auto v = scaled(best_res, 1.0 / best_norm);
    auto av = matvec(a, v);
    const double y = norm(av);
    if (y > zero_tol && accepted.size() + 2 <= n) {
      auto w = scaled(av, 1.0 / y);
      auto basis = accepted;
      basis.push_back(v);
      project_out(w, basis);
      w = scaled(w, 1.0 / norm(w));
      // y = w^T a v
      double yy = 0.0;
      for (std::size_t i = 0; i < n; ++i) yy += w[i] * av[i];
      accepted.push_back(v);
      accepted.push_back(w);
      planes.push_back({v, w, yy});
    } else {
      accepted.push_back(v);
      zeros.push_back(v);
    }
  }
  if (accepted.size() < n) {
    RMat partial(n, accepted.size());
    for (std::size_t j = 0; j < accepted.size(); ++j) partial.set_col(j, accepted[j]);
    const RMat full = complete_unitary(partial, accepted.size());
    for (std::size_t j = accepted.size(); j < n; ++j) zeros.push_back(full.col(j));
  }

  std::stable_sort(planes.begin(), planes.end(), [](const Plane& x, const Plane& y) { return x.y > y.y; });
  AntisymCanonical out;
  out.q = RMat(n, n);
  std::size_t col = 0;
  for (const auto& p : planes) {
    out.q.set_col(col++, p.q1);
    out.q.set_col(col++, p.q2);
    out.pairs.push_back(p.y);
  }
  for (const auto& z : zeros) out.q.set_col(col++, z);
  out.zeros = zeros.size();
  return out;
}

// ---------------------------------------------------------------------------
// Clustering

std::vector<Cluster> cluster(const std::vector<cplx>& values, double tol) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(values[i] - values[j]) <= tol) parent[find(i)] = find(j);

  std::vector<Cluster> out;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.size());
      out.push_back({});
    }
    out[static_cast<std::size_t>(slot[r])].members.push_back(i);
  }
  for (auto& c : out) {
    cplx sum = 0.0;
    for (std::size_t m : c.members) sum += values[m];
    c.value = sum / static_cast<double>(c.members.size());
  }
  std::stable_sort(out.begin(), out.end(), [](const Cluster& x, const Cluster& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return out;
}

void require_separated(const std::vector<Cluster>& clusters, double tol) {
  for (std::size_t i = 0; i < clusters.size(); ++i)
    for (std::size_t j = i + 1; j < clusters.size(); ++j)
      if (std::abs(clusters[i].value - clusters[j].value) < 10.0 * tol)
        throw Error(ErrorCode::ClusterAmbiguity, "eigenvalue clusters " + fmt_cplx(clusters[i].value) + " and " +
                                                     fmt_cplx(clusters[j].value) + " are closer than 10 * cluster_tol");
}

// ---------------------------------------------------------------------------
// Schur splitting

SchurSplit schur_split(const CMat& a, const std::function<std::vector<int>(const std::vector<cplx>&)>& grouping) {
  const std::size_t n = a.rows();
  SchurSplit out;
  if (n == 0) {
    out.transform = CMat(0, 0);
    return out;
  }
  Eigen::MatrixXcd e(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(e, true);
  CMat t = to_cmat(schur.matrixT());
  CMat q = to_cmat(schur.matrixU());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) t(i, j) = 0.0;

  std::vector<cplx> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = t(i, i);
  std::vector<int> keys = grouping(diag);

  // Bubble the diagonal into key order with adjacent Givens swaps.
  for (bool swapped = true; swapped;) {
    swapped = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (keys[k] <= keys[k + 1]) continue;
      const cplx t11 = t(k, k), t22 = t(k + 1, k + 1), t12 = t(k, k + 1);
      cplx v0 = t12, v1 = t22 - t11;
      const double nv = std::sqrt(std::norm(v0) + std::norm(v1));
      if (nv == 0.0) {
        std::swap(keys[k], keys[k + 1]);
        continue;
      }
      v0 /= nv;
      v1 /= nv;
      const Rotation<cplx> g{v0, -std::conj(v1), v1, std::conj(v0)};
      apply_right(t, k, k + 1, g);
      apply_left_adjoint(t, k, k + 1, g);
      apply_right(q, k, k + 1, g);
      t(k + 1, k) = 0.0;
      std::swap(keys[k], keys[k + 1]);
      swapped = true;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || keys[i] != keys[i - 1]) {
      out.offsets.push_back(i);
      out.group_keys.push_back(keys[i]);
    }
  }

  // Decouple block b from everything after it: solve T11 X - X T22 = -T12.
  CMat y = CMat::identity(n);
  for (std::size_t b = 0; b + 1 < out.offsets.size(); ++b) {
    const std::size_t o = out.offsets[b];
    const std::size_t s = out.offsets[b + 1];
    const std::size_t na = s - o;
    const std::size_t nb = n - s;
    CMat x(na, nb);
    for (std::size_t j = 0; j < nb; ++j) {
      std::vector<cplx> rhs(na);
      for (std::size_t i = 0; i < na; ++i) {
        cplx r = -t(o + i, s + j);
        for (std::size_t l = 0; l < j; ++l) r += x(i, l) * t(s + l, s + j);
        rhs[i] = r;
      }
      const cplx mu = t(s + j, s + j);
      for (std::size_t ii = na; ii-- > 0;) {
        cplx r = rhs[ii];
        for (std::size_t l = ii + 1; l < na; ++l) r -= t(o + ii, o + l) * x(l, j);
        x(ii, j) = r / (t(o + ii, o + ii) - mu);
      }
    }
    // T <- S^-1 T S with S = [[I, X], [0, I]] on the trailing window.
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j) t(o + i, s + j) = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t j = 0; j < nb; ++j) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < na; ++i) acc += y(r, o + i) * x(i, j);
        y(r, s + j) += acc;
      }
  }

  out.transform = q * y;
  for (std::size_t b = 0; b < out.offsets.size(); ++b) {
    const std::size_t o = out.offsets[b];
    const std::size_t e2 = b + 1 < out.offsets.size() ? out.offsets[b + 1] : n;
    out.blocks.push_back(t.block(o, o, e2 - o, e2 - o));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Jordan structure

CMat jordan_block(std::size_t m, cplx lambda) {
  CMat j(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    j(i, i) = lambda;
    if (i + 1 < m) j(i, i + 1) = 1.0;
  }
  return j;
}

namespace {

// Chains for a nilpotent n: returns c with n c = c (+)_k J_{size_k}(0).
CMat nilpotent_chains(const CMat& nil, const std::vector<std::size_t>& counts, double floor, double scale) {
  const std::size_t a = nil.rows();
  std::size_t maxk = 0;
  for (std::size_t k = 1; k < counts.size(); ++k)
    if (counts[k] > 0) maxk = k;

  std::vector<CMat> kernels(maxk + 1);
  kernels[0] = CMat(a, 0);
  CMat power = CMat::identity(a);
  double fl = floor;
  for (std::size_t j = 1; j <= maxk; ++j) {
    power = power * nil;
    kernels[j] = null_space(power, fl);
    fl *= scale;
  }

  struct Chain {
    std::vector<cplx> top;
    std::size_t len;
  };
  std::vector<Chain> chains;
  for (std::size_t len = maxk; len >= 1; --len) {
    if (counts[len] == 0) continue;
    std::vector<std::vector<cplx>> span;
    const auto add_to_span = [&span](std::vector<cplx> v) {
      project_out(v, span);
      const double nv = norm(v);
      if (nv > 1e-10) span.push_back(scaled(v, 1.0 / nv));
    };
    for (std::size_t j = 0; j < kernels[len - 1].cols(); ++j) add_to_span(kernels[len - 1].col(j));
    for (const auto& ch : chains) {
      std::vector<cplx> v = ch.top;
      for (std::size_t s = 0; s < ch.len - len; ++s) {
        std::vector<cplx> nv(a, 0.0);
        for (std::size_t i = 0; i < a; ++i)
          for (std::size_t l = 0; l < a; ++l) nv[i] += nil(i, l) * v[l];
        v = std::move(nv);
      }
      add_to_span(v);
    }
    for (std::size_t pick = 0; pick < counts[len]; ++pick) {
      double best_norm = -1.0;
      std::vector<cplx> best;
      for (std::size_t j = 0; j < kernels[len].cols(); ++j) {
        auto v = kernels[len].col(j);
        project_out(v, span);
        const double nv = norm(v);
        if (nv > best_norm) {
          best_norm = nv;
          best = std::move(v);
        }
      }
      if (best_norm < 1e-6) throw Error(ErrorCode::ClusterAmbiguity, "Jordan chain selection degenerated");
      auto top = scaled(best, 1.0 / best_norm);
      span.push_back(top);
      chains.push_back({top, len});
    }
    if (len == 1) break;
  }

  CMat c(a, a);
  std::size_t col = 0;
  for (const auto& ch : chains) {
    std::vector<std::vector<cplx>> vecs{ch.top};
    for (std::size_t s = 1; s < ch.len; ++s) {
      std::vector<cplx> nv(a, 0.0);
      for (std::size_t i = 0; i < a; ++i)
        for (std::size_t l = 0; l < a; ++l) nv[i] += nil(i, l) * vecs.back()[l];
      vecs.push_back(std::move(nv));
    }
    // p_1 = n^{len-1} top, ..., p_len = top
    for (std::size_t s = ch.len; s-- > 0;) c.set_col(col++, vecs[s]);
  }
  return c;
}

// A Jordan block of size m smears its eigenvalue over a circle of radius about
// scale * (backward error)^(1/m). Clusters are the topmost nodes of the
// single-linkage tree whose merge height fits inside that circle for their
// size; a rejected merge within 10x of fitting is ambiguous.
double merge_threshold(std::size_t m, double tol, double scale) {
  return std::max(tol, 2.0 * scale * std::pow(kJordanBackwardError, 1.0 / static_cast<double>(m)));
}

std::vector<Cluster> cluster_defective(const std::vector<cplx>& values, double tol, double scale) {
  const std::size_t n = values.size();
  struct Edge {
    double d;
    std::size_t i, j;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({std::abs(values[i] - values[j]), i, j});
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.d < y.d; });

  struct Node {
    std::vector<std::size_t> members;
    std::vector<std::vector<std::size_t>> groups;
    bool near_miss = false;
  };
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<Node> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = {{i}, {{i}}, false};

  for (const auto& e : edges) {
    const std::size_t ra = find(e.i), rb = find(e.j);
    if (ra == rb) continue;
    Node& na = nodes[ra];
    Node& nb = nodes[rb];
    na.members.insert(na.members.end(), nb.members.begin(), nb.members.end());
    const double thr = merge_threshold(na.members.size(), tol, scale);
    if (e.d <= thr) {
      na.groups = {na.members};
      na.near_miss = false;
    } else {
      na.groups.insert(na.groups.end(), nb.groups.begin(), nb.groups.end());
      na.near_miss = na.near_miss || nb.near_miss || e.d < 10.0 * thr;
    }
    nb = Node{};
    parent[rb] = ra;
  }

  std::vector<Cluster> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (find(i) != i) continue;
    if (nodes[i].near_miss)
      throw Error(ErrorCode::ClusterAmbiguity, "eigenvalue clusters near " + fmt_cplx(values[i]) +
                                                   " are too close to separate");
    for (auto& g : nodes[i].groups) {
      Cluster c;
      c.members = std::move(g);
      std::sort(c.members.begin(), c.members.end());
      cplx sum = 0.0;
      for (std::size_t m : c.members) sum += values[m];
      c.value = sum / static_cast<double>(c.members.size());
      out.push_back(std::move(c));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Cluster& x, const Cluster& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return out;
}

}  // namespace

JordanStructure complex_jordan(const CMat& a, double cluster_tol) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorCode::ShapeMismatch, "Jordan structure needs a square matrix");
  JordanStructure out;
  if (n == 0) {
    out.transform = CMat(0, 0);
    return out;
  }
  const double scale = std::max(1.0, max_abs(a));
  const auto grouping = [cluster_tol, scale](const std::vector<cplx>& values) {
    const auto groups = cluster_defective(values, cluster_tol, scale);
    std::vector<int> keys(values.size());
    for (std::size_t g = 0; g < groups.size(); ++g)
      for (std::size_t m : groups[g].members) keys[m] = static_cast<int>(g);
    return keys;
  };
  const SchurSplit split = schur_split(a, grouping);

  const double floor = 1e-8 * scale;
  CMat chains(n, n);
  for (std::size_t b = 0; b < split.blocks.size(); ++b) {
    const CMat& t = split.blocks[b];
    const std::size_t dim = t.rows();
    cplx lambda = 0.0;
    for (std::size_t i = 0; i < dim; ++i) lambda += t(i, i);
    lambda /= static_cast<double>(dim);
    CMat nil = t;
    for (std::size_t i = 0; i < dim; ++i) nil(i, i) -= lambda;

    // r_k = rank(nil^k), k = 0..dim+1
    std::vector<std::size_t> ranks{dim};
    CMat power = CMat::identity(dim);
    double fl = floor;
    for (std::size_t k = 1; k <= dim + 1; ++k) {
      power = power * nil;
      ranks.push_back(numerical_rank(power, fl));
      fl *= scale;
    }
    if (ranks[dim] != 0)
      throw Error(ErrorCode::ClusterAmbiguity, "cluster at " + fmt_cplx(lambda) + " is not nilpotent after shifting");
    std::vector<std::size_t> counts(dim + 1, 0);
    for (std::size_t k = 1; k <= dim; ++k) {
      const long nk = static_cast<long>(ranks[k - 1]) - 2 * static_cast<long>(ranks[k]) + static_cast<long>(ranks[k + 1]);
      if (nk < 0) throw Error(ErrorCode::ClusterAmbiguity, "inconsistent rank chain at " + fmt_cplx(lambda));
      counts[k] = static_cast<std::size_t>(nk);
    }
    JordanCluster jc{lambda, {}};
    for (std::size_t k = dim; k >= 1; --k)
      for (std::size_t c = 0; c < counts[k]; ++c) jc.segre.push_back(k);
    out.clusters.push_back(jc);
    chains.set_block(split.offsets[b], split.offsets[b], nilpotent_chains(nil, counts, floor, scale));
  }
  out.transform = split.transform * chains;
  if (numerical_rank(out.transform) < n) throw Error(ErrorCode::ClusterAmbiguity, "Jordan basis is singular");
  return out;
}

CMat inverse(const CMat& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorCode::NotInvertible, "matrix is not square");
  CMat m = a;
  CMat inv = CMat::identity(n);
  const double scale = std::max(1e-300, max_abs(a));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    if (std::abs(m(piv, c)) <= 1e-14 * scale) throw Error(ErrorCode::NotInvertible, "singular matrix");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(c, j), m(piv, j));
        std::swap(inv(c, j), inv(piv, j));
      }
    }
    const cplx d = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= d;
      inv(c, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const cplx f = m(r, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace ringdecomp::engines
