#include "ringdecomp/testkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <limits>

#include "convert.hpp"
#include "ringdecomp/error.hpp"

namespace ringdecomp::testkit {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::gaussian() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t SplitMix64::below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

namespace {

using detail::from_dense;
using detail::from_dual;
using detail::from_pair;

Scalar random_scalar(RingId ring, SplitMix64& rng) {
  const auto u = [&rng]() { return rng.uniform(-1.0, 1.0); };
  switch (ring) {
    case RingId::Zero: return Scalar::zero(ring);
    case RingId::Real: return Scalar::from_real(ring, u());
    case RingId::Complex: {
      const double a = u();
      return Scalar::complex({a, u()});
    }
    case RingId::DualTrivial:
    case RingId::DualConj: {
      const double a = u();
      return Scalar::dual(ring, a, u());
    }
    case RingId::Quaternion:
    case RingId::DoubleComplexSwap: {
      std::array<double, 4> c{};
      for (auto& x : c) x = u();
      return Scalar::from_components(ring, c);
    }
    case RingId::IntegerTrivial: return Scalar::integer(static_cast<std::int64_t>(rng.below(7)) - 3);
  }
  return {};
}

template <class K>
K gaussian_entry(SplitMix64& rng);
template <>
double gaussian_entry<double>(SplitMix64& rng) {
  return rng.gaussian();
}
template <>
cplx gaussian_entry<cplx>(SplitMix64& rng) {
  const double a = rng.gaussian();
  return {a, rng.gaussian()};
}
template <>
Quat gaussian_entry<Quat>(SplitMix64& rng) {
  Quat q;
  q.w = rng.gaussian();
  q.x = rng.gaussian();
  q.y = rng.gaussian();
  q.z = rng.gaussian();
  return q;
}

// Gram-Schmidt on a Gaussian sample. Coefficients multiply from the right so
// the quaternion case stays a right-module projection.
template <class K>
Dense<K> gaussian_unitary(std::size_t n, SplitMix64& rng) {
  Dense<K> g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = gaussian_entry<K>(rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        K dot(0.0);
        for (std::size_t i = 0; i < n; ++i) dot += conj_of(g(i, k)) * g(i, j);
        for (std::size_t i = 0; i < n; ++i) g(i, j) -= g(i, k) * dot;
      }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += abs2_of(g(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) g(i, j) = (1.0 / nrm) * g(i, j);
  }
  return g;
}

CMat conditioned(std::size_t n, SplitMix64& rng, double cond) {
  const CMat w1 = gaussian_unitary<cplx>(n, rng);
  CMat w2 = gaussian_unitary<cplx>(n, rng);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = rng.uniform(1.0, cond);
    for (std::size_t j = 0; j < n; ++j) w2(i, j) *= s;
  }
  return w1 * w2;
}

}  // namespace

Matrix random_matrix(RingId ring, std::size_t rows, std::size_t cols, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Matrix m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar(ring, rng);
  return m;
}

Matrix random_hermitian(RingId ring, std::size_t n, std::uint64_t seed) {
  const Matrix x = random_matrix(ring, n, n, seed);
  if (ring == RingId::IntegerTrivial) {
    Matrix m = x;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) m(i, j) = m(j, i);
    return m;
  }
  return Scalar::from_real(ring, 0.5) * (x + adjoint(x));
}

Matrix random_unitary(RingId ring, std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  switch (ring) {
    case RingId::Zero: return Matrix::identity(ring, n);
    case RingId::Real: return from_dense(ring, gaussian_unitary<double>(n, rng));
    case RingId::Complex: return from_dense(ring, gaussian_unitary<cplx>(n, rng));
    case RingId::Quaternion: return from_dense(ring, gaussian_unitary<Quat>(n, rng));
    case RingId::DualTrivial: {
      // U0 (I + eps K), K antisymmetric
      const RMat u0 = gaussian_unitary<double>(n, rng);
      RMat k(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          k(i, j) = rng.gaussian();
          k(j, i) = -k(i, j);
        }
      return from_dual(ring, u0, u0 * k);
    }
    case RingId::DualConj: {
      // (I + eps S) U0, S symmetric
      const RMat u0 = gaussian_unitary<double>(n, rng);
      RMat s(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) s(i, j) = s(j, i) = rng.gaussian();
      return from_dual(ring, u0, s * u0);
    }
    case RingId::DoubleComplexSwap: {
      const CMat p = conditioned(n, rng, 5.0);
      return from_pair(p, transpose(engines::inverse(p)));
    }
    case RingId::IntegerTrivial: {
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
      Matrix m(ring, n, n);
      for (std::size_t i = 0; i < n; ++i) m(i, perm[i]) = Scalar::integer(rng.below(2) == 0 ? 1 : -1);
      return m;
    }
  }
  return {};
}

Matrix random_invertible(std::size_t n, std::uint64_t seed, double cond) {
  SplitMix64 rng(seed);
  return from_dense(RingId::Complex, conditioned(n, rng, cond));
}

CMat chi_embed(const Matrix& q) {
  if (q.ring() != RingId::Quaternion) throw Error(ErrorCode::RingMismatch, "expected a quaternion matrix");
  const std::size_t m = q.rows(), n = q.cols();
  CMat c(2 * m, 2 * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Quat e = q(i, j).as_quat();
      const cplx a(e.w, e.x), b(e.y, e.z);
      c(i, j) = a;
      c(i, n + j) = b;
      c(m + i, j) = -std::conj(b);
      c(m + i, n + j) = std::conj(a);
    }
  return c;
}

VerifyReport verify_factorization(const Matrix& m, const Factorization& f, double tol) {
  VerifyReport rep;
  const double budget = tol * (1.0 + max_norm(m));
  const auto fail = [&rep](const std::string& what) { rep.failures.push_back(what); };
  const auto unitarity = [](const Matrix& u) {
    const Matrix id = Matrix::identity(u.ring(), u.rows());
    const Matrix h = adjoint(u);
    return std::max(max_diff(u * h, id), max_diff(h * u, id));
  };

  try {
    if (f.left.ring() != m.ring() || f.right.ring() != m.ring()) throw Error(ErrorCode::RingMismatch, "ring");
    rep.residual = max_diff(recombine(f), m);
    if (f.kind == DecompKind::Jordan) {
      rep.left_residual = max_diff(f.left * f.right, Matrix::identity(m.ring(), f.left.rows()));
    } else {
      if (!f.left.is_square() || !f.right.is_square()) throw Error(ErrorCode::ShapeMismatch, "factor shape");
      rep.left_residual = unitarity(f.left);
      rep.right_residual = unitarity(f.right);
      if (f.kind == DecompKind::Spectral && max_diff(f.left, f.right) > budget) fail("spectral factors differ");
    }
  } catch (const Error& e) {
    fail(std::string("shape: ") + e.what());
    rep.residual = rep.left_residual = rep.right_residual = std::numeric_limits<double>::infinity();
  }
  if (!(rep.residual <= budget)) fail("reconstruction residual");
  if (!(rep.left_residual <= budget)) fail(f.kind == DecompKind::Jordan ? "left * right != I" : "left not unitary");
  if (!(rep.right_residual <= budget)) fail("right not unitary");

  for (const auto& b : f.blocks.items()) {
    bool ok = false;
    try {
      ok = is_generator(b, m.ring(), f.kind);
    } catch (const Error&) {
      ok = false;
    }
    rep.generator.push_back(ok);
    if (!ok) fail("block " + std::string(block_kind_name(b.kind)) + " is not a generator");
  }
  rep.pass = rep.failures.empty();
  return rep;
}

Matrix sandwich(const Matrix& m, DecompKind kind, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const std::uint64_t s1 = rng.next(), s2 = rng.next();
  switch (kind) {
    case DecompKind::SVD:
      return random_unitary(m.ring(), m.rows(), s1) * m * adjoint(random_unitary(m.ring(), m.cols(), s2));
    case DecompKind::Spectral: {
      const Matrix v = random_unitary(m.ring(), m.rows(), s1);
      return v * m * adjoint(v);
    }
    case DecompKind::Jordan: {
      const Matrix p = random_invertible(m.rows(), s1, 10.0);
      const CMat pinv = engines::inverse(detail::to_dense<cplx>(p));
      return p * m * from_dense(RingId::Complex, pinv);
    }
  }
  return m;
}

bool uniqueness_probe(const Matrix& m, DecompKind kind, std::size_t trials, std::uint64_t seed,
                      const DecompOptions& opts, double tol) {
  const BlockMultiset base = decompose(m, kind, opts).blocks;
  SplitMix64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const Matrix s = sandwich(m, kind, rng.next());
    if (!multiset_eq(decompose(s, kind, opts).blocks, base, tol)) return false;
  }
  return true;
}

bool additivity_check(const Matrix& a, const Matrix& b, DecompKind kind, const DecompOptions& opts, double tol) {
  const BlockMultiset whole = decompose(direct_sum(a, b), kind, opts).blocks;
  const BlockMultiset parts = decompose(a, kind, opts).blocks + decompose(b, kind, opts).blocks;
  return multiset_eq(whole, parts, tol);
}

// ---------------------------------------------------------------------------
// Self-test

namespace {

Matrix random_rect(RingId ring, SplitMix64& rng) {
  const std::size_t rows = rng.below(6), cols = rng.below(6);
  return random_matrix(ring, rows, cols, rng.next());
}

Matrix random_square(RingId ring, DecompKind kind, SplitMix64& rng) {
  const std::size_t n = 1 + rng.below(5);
  const std::uint64_t seed = rng.next();
  return kind == DecompKind::Spectral ? random_hermitian(ring, n, seed) : random_matrix(ring, n, n, seed);
}

// Retries `body` on ClusterAmbiguity; returns false only when every attempt
// was refused.
template <class F>
bool with_resample(CellResult& cell, F&& body) {
  for (int attempt = 0; attempt < 5; ++attempt) {
    try {
      if (!body()) {
        ++cell.failures;
      }
      return true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ClusterAmbiguity) throw;
      ++cell.refusals;
    }
  }
  return false;
}

void note(CellResult& cell, const std::string& what, std::size_t trial) {
  if (cell.notes.size() < 5) cell.notes.push_back(what + " failed at trial " + std::to_string(trial));
}

}  // namespace

std::vector<CellResult> run_selftest(const SelftestOptions& opts) {
  std::vector<CellResult> cells;
  SplitMix64 master(opts.seed);
  const auto& dopts = opts.decomp;
  for (RingId ring : kAllRings) {
    if (opts.ring && *opts.ring != ring) continue;
    for (DecompKind kind : {DecompKind::SVD, DecompKind::Spectral, DecompKind::Jordan}) {
      if (opts.kind && *opts.kind != kind) continue;
      try {
        require_supported(ring, kind);
      } catch (const Error&) {
        continue;
      }
      CellResult cell;
      cell.ring = ring;
      cell.kind = kind;
      const double tol = ring == RingId::IntegerTrivial ? 0.0 : opts.tol;
      SplitMix64 rng(master.next());
      for (std::size_t t = 0; t < opts.trials; ++t) {
        ++cell.trials;
        const std::size_t before = cell.failures;
        try {
          with_resample(cell, [&] {
            const Matrix a = kind == DecompKind::SVD ? random_rect(ring, rng) : random_square(ring, kind, rng);
            const Matrix b = kind == DecompKind::SVD ? random_rect(ring, rng) : random_square(ring, kind, rng);
            const bool ok = additivity_check(a, b, kind, dopts, tol);
            if (!ok) note(cell, "additivity", t);
            return ok;
          });
          with_resample(cell, [&] {
            const Matrix a = kind == DecompKind::SVD ? random_rect(ring, rng) : random_square(ring, kind, rng);
            const bool ok = uniqueness_probe(a, kind, 1, rng.next(), dopts, tol);
            if (!ok) note(cell, "uniqueness", t);
            return ok;
          });
          const bool borderable = kind == DecompKind::SVD && ring != RingId::DoubleComplexSwap;
          if (borderable) {
            with_resample(cell, [&] {
              const Matrix a = random_rect(ring, rng);
              const auto expect = bordered_pairing(svd(a, dopts).blocks, ring);
              const bool ok = multiset_eq(spectral(bordered(a), dopts).blocks, expect, tol);
              if (!ok) note(cell, "bordered consistency", t);
              return ok;
            });
          }
          if (kind == DecompKind::Jordan) {
            with_resample(cell, [&] {
              const Matrix a = random_square(ring, kind, rng);
              const auto jb = jordan(a, dopts).blocks;
              const auto sb = spectral(transpose_pair(a), dopts).blocks;
              const bool ok = multiset_eq(sb, jordan_to_pairs(jb, 2.0 * std::numbers::pi), tol) &&
                              multiset_eq(reduce_pair_angles(sb, std::numbers::pi),
                                          jordan_to_pairs(jb, std::numbers::pi), tol);
              if (!ok) note(cell, "transpose-pair correspondence", t);
              return ok;
            });
          }
        } catch (const Error& e) {
          ++cell.failures;
          note(cell, std::string("error ") + std::string(error_code_name(e.code())), t);
        }
        if (cell.failures > before) cell.failures = before + 1;  // one failure per trial
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace ringdecomp::testkit
