// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ringdecomp/error.hpp"
#include "ringdecomp/testkit.hpp"

using namespace ringdecomp;
using testkit::SplitMix64;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool is_ambiguity(const Error& e) { return e.code() == ErrorCode::ClusterAmbiguity; }

std::vector<std::pair<RingId, DecompKind>> cells() {
  std::vector<std::pair<RingId, DecompKind>> out;
  for (RingId r : kAllRings)
    for (DecompKind k : {DecompKind::SVD, DecompKind::Spectral, DecompKind::Jordan}) {
      try {
        require_supported(r, k);
        out.emplace_back(r, k);
      } catch (const Error&) {
      }
    }
  return out;
}

Matrix random_input(RingId ring, DecompKind kind, SplitMix64& rng) {
  if (kind == DecompKind::SVD) {
    const std::size_t m = rng.below(6), n = rng.below(6);
    return testkit::random_matrix(ring, m, n, rng.next());
  }
  const std::size_t n = rng.below(6);
  return kind == DecompKind::Spectral ? testkit::random_hermitian(ring, n, rng.next())
                                      : testkit::random_matrix(ring, n, n, rng.next());
}

CMat dense(const Matrix& m) {
  CMat d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).as_complex();
  return d;
}

Matrix complex_matrix(const CMat& d) {
  Matrix m(RingId::Complex, d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) m(i, j) = Scalar::complex(d(i, j));
  return m;
}

// ---------------------------------------------------------------------------

Outcome worked_example() {
  const auto t0 = std::chrono::steady_clock::now();
  Matrix m(RingId::Complex, 2, 3);
  const double v[] = {1, 2, 0, 2, 1, 0};
  for (std::size_t i = 0; i < 6; ++i) m(i / 3, i % 3) = Scalar::complex({v[i], 0.0});
  const auto f = svd(m);
  const double secs = seconds_since(t0);
  const auto& b = f.blocks.items();
  const bool shape = b.size() == 3 && b[0].kind == BlockKind::PosScalar && b[1].kind == BlockKind::PosScalar &&
                     b[2].kind == BlockKind::EmptyCol;
  const double err = shape ? std::max(std::abs(b[0].params[0] - 3.0), std::abs(b[1].params[0] - 1.0)) : 1.0;
  const bool ok = shape && err <= 1e-9 && testkit::verify_factorization(m, f, 1e-9).pass && secs < 1.0;
  return {ok, fmt("{PosScalar(3), PosScalar(1), EmptyCol}, max error %.2e, %.3f s", err, secs)};
}

Outcome dual_generators() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Family {
    const char* name;
    RingId ring;
    std::function<Block(SplitMix64&)> make;
  };
  const std::vector<Family> families = {
      {"DualScalar", RingId::DualTrivial,
       [](SplitMix64& r) { return Block::dual_scalar(r.uniform(0.2, 3.0), r.uniform(-2.0, 2.0)); }},
      {"DualEps/trivial", RingId::DualTrivial, [](SplitMix64& r) { return Block::dual_eps(r.uniform(0.2, 3.0)); }},
      {"PosScalar", RingId::DualConj, [](SplitMix64& r) { return Block::pos_scalar(r.uniform(0.2, 3.0)); }},
      {"DualRot2", RingId::DualConj,
       [](SplitMix64& r) { return Block::dual_rot2(r.uniform(0.2, 3.0), r.uniform(0.2, 3.0)); }},
      {"DualEps/conj", RingId::DualConj, [](SplitMix64& r) { return Block::dual_eps(r.uniform(0.2, 3.0)); }},
  };
  std::size_t failures = 0, runs = 0;
  double worst = 0.0;
  std::string first;
  for (const auto& fam : families) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      ++runs;
      SplitMix64 rng(seed * 1000003 + static_cast<std::uint64_t>(fam.ring));
      const Block g = fam.make(rng);
      const Matrix gm = to_matrix(g, fam.ring);
      const Matrix u = testkit::random_unitary(fam.ring, gm.rows(), rng.next());
      const Matrix w = testkit::random_unitary(fam.ring, gm.cols(), rng.next());
      bool ok = false;
      try {
        const auto got = svd(u * gm * adjoint(w)).blocks;
        ok = got.size() == 1 && got.items()[0].kind == g.kind;
        if (ok) {
          double d = 0.0;
          for (std::size_t i = 0; i < g.params.size(); ++i)
            d = std::max(d, std::abs(got.items()[0].params[i] - g.params[i]));
          worst = std::max(worst, d);
          ok = d <= 1e-7;
        }
      } catch (const Error& e) {
        if (first.empty()) first = e.what();
      }
      if (!ok) {
        ++failures;
        if (first.empty()) first = fmt("%s seed %llu", fam.name, static_cast<unsigned long long>(seed));
      }
    }
  }
  const double secs = seconds_since(t0);
  std::string d = fmt("%zu families x 50 seeds, %zu misses, worst drift %.2e, %.2f s", families.size(), failures,
                      worst, secs);
  if (!first.empty()) d += "; first: " + first;
  return {failures == 0 && secs < 10.0, d};
}

Outcome additivity() {
  std::size_t failures = 0, refusals = 0, attempts = 0;
  double worst_rate = 0.0;
  std::string first;
  for (const auto& [ring, kind] : cells()) {
    SplitMix64 rng(0xadd1 + 31 * static_cast<std::uint64_t>(ring) + static_cast<std::uint64_t>(kind));
    const double tol = ring == RingId::IntegerTrivial ? 0.0 : 1e-6;
    std::size_t cell_refusals = 0, cell_attempts = 0;
    for (int pair = 0; pair < 100; ++pair) {
      for (;;) {
        ++cell_attempts;
        const Matrix a = random_input(ring, kind, rng), b = random_input(ring, kind, rng);
        try {
          if (!testkit::additivity_check(a, b, kind, {}, tol)) {
            ++failures;
            if (first.empty()) first = fmt("%s %s pair %d", ring_name(ring).data(), kind_name(kind).data(), pair);
          }
          break;
        } catch (const Error& e) {
          if (!is_ambiguity(e)) {
            ++failures;
            if (first.empty()) first = e.what();
            break;
          }
          ++cell_refusals;
        }
      }
    }
    refusals += cell_refusals;
    attempts += cell_attempts;
    worst_rate = std::max(worst_rate, static_cast<double>(cell_refusals) / static_cast<double>(cell_attempts));
  }
  std::string d = fmt("%zu cells x 100 pairs, %zu failures, refusals %zu/%zu (worst cell %.1f%%)", cells().size(),
                      failures, refusals, attempts, 100.0 * worst_rate);
  if (!first.empty()) d += "; first: " + first;
  return {failures == 0 && worst_rate < 0.2, d};
}

Outcome uniqueness() {
  std::size_t failures = 0, refusals = 0, probes = 0;
  std::string first;
  for (const auto& [ring, kind] : cells()) {
    SplitMix64 rng(0x0417 + 31 * static_cast<std::uint64_t>(ring) + static_cast<std::uint64_t>(kind));
    const double tol = ring == RingId::IntegerTrivial ? 0.0 : 1e-6;
    for (int input = 0; input < 5; ++input) {
      for (int attempt = 0;; ++attempt) {
        const Matrix m = random_input(ring, kind, rng);
        try {
          ++probes;
          if (!testkit::uniqueness_probe(m, kind, 50, rng.next(), {}, tol)) {
            ++failures;
            if (first.empty()) first = fmt("%s %s input %d", ring_name(ring).data(), kind_name(kind).data(), input);
          }
          break;
        } catch (const Error& e) {
          if (!is_ambiguity(e) || attempt == 10) {
            ++failures;
            if (first.empty()) first = e.what();
            break;
          }
          ++refusals;
        }
      }
    }
  }
  std::string d = fmt("%zu cells x 5 inputs x 50 sandwiches, %zu failures, %zu refused inputs resampled",
                      cells().size(), failures, refusals);
  if (!first.empty()) d += "; first: " + first;
  return {failures == 0, d};
}

double min_separation(const CMat& a) {
  Eigen::MatrixXcd e(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e(i, j) = a(i, j);
  const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(e, false).eigenvalues();
  double sep = 1e300;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    for (Eigen::Index j = i + 1; j < ev.size(); ++j) sep = std::min(sep, std::abs(ev(i) - ev(j)));
  return sep;
}

Outcome transpose_pairs() {
  SplitMix64 rng(0x7e02);
  std::size_t failures = 0, exact = 0, resampled = 0;
  std::string first;
  for (int t = 0; t < 100; ++t) {
    Matrix a;
    for (;;) {
      const std::size_t n = 1 + rng.below(5);
      a = testkit::random_matrix(RingId::Complex, n, n, rng.next());
      if (min_separation(dense(a)) >= 1e-3) break;
      ++resampled;
    }
    try {
      const auto jb = jordan(a).blocks;
      const auto sb = spectral(transpose_pair(a)).blocks;
      if (multiset_eq(reduce_pair_angles(sb, kPi), jordan_to_pairs(jb, kPi), 1e-6)) {
        if (multiset_eq(sb, jordan_to_pairs(jb, 2 * kPi), 1e-6)) ++exact;
      } else {
        ++failures;
        if (first.empty()) first = fmt("trial %d", t);
      }
    } catch (const Error& e) {
      ++failures;
      if (first.empty()) first = e.what();
    }
  }
  std::string d = fmt("100 matrices (%zu resampled for separation), %zu mismatches mod pi, %zu/100 also match mod 2 pi",
                      resampled, failures, exact);
  if (!first.empty()) d += "; first: " + first;
  return {failures == 0, d};
}

Outcome bordered_consistency() {
  const std::vector<RingId> rings = {RingId::Real, RingId::Complex, RingId::DualTrivial, RingId::DualConj,
                                     RingId::Quaternion};
  const std::vector<std::pair<std::size_t, std::size_t>> shapes = {{3, 3}, {4, 2}, {2, 4}, {3, 0}};
  std::size_t failures = 0, runs = 0;
  std::string first;
  for (RingId ring : rings)
    for (const auto& [m, n] : shapes)
      for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        ++runs;
        const Matrix a = testkit::random_matrix(ring, m, n, seed * 7 + m * 131 + n);
        try {
          const auto expect = bordered_pairing(svd(a).blocks, ring);
          if (multiset_eq(spectral(bordered(a)).blocks, expect, 1e-6)) continue;
          if (first.empty()) first = fmt("%s %zux%zu seed %llu", ring_name(ring).data(), m, n,
                                         static_cast<unsigned long long>(seed));
        } catch (const Error& e) {
          if (first.empty()) first = e.what();
        }
        ++failures;
      }
  std::string d = fmt("5 rings x 4 shapes x 50 matrices, %zu/%zu mismatches", failures, runs);
  if (!first.empty()) d += "; first: " + first;
  return {failures == 0, d};
}

std::vector<std::int64_t> random_signed_graph(std::size_t n, SplitMix64& rng) {
  std::vector<std::int64_t> g(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto r = rng.below(4);
      g[i * n + j] = g[j * n + i] = r == 0 ? -1 : r == 1 ? 1 : 0;
    }
  return g;
}

Matrix int_matrix(std::size_t n, const std::vector<std::int64_t>& g) {
  Matrix m(RingId::IntegerTrivial, n, n);
  for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = Scalar::integer(g[i]);
  return m;
}

// Brute force over all n! 2^n signed permutations.
bool isomorphic(std::size_t n, const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  do {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      bool same = true;
      for (std::size_t i = 0; i < n && same; ++i)
        for (std::size_t j = 0; j < n && same; ++j) {
          const int s = (((mask >> i) ^ (mask >> j)) & 1) ? -1 : 1;
          same = s * a[p[i] * n + p[j]] == b[i * n + j];
        }
      if (same) return true;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

Outcome integer_graphs() {
  SplitMix64 rng(0x9a9);
  std::size_t iso_fail = 0, noniso_fail = 0, add_fail = 0;
  const auto additive = [&](std::size_t n, const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    const Matrix ma = int_matrix(n, a), mb = int_matrix(n, b);
    return herm_integer_canonical(direct_sum(ma, mb)) == herm_integer_canonical(ma) + herm_integer_canonical(mb);
  };
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng.below(6);
    const auto a = random_signed_graph(n, rng);
    const Matrix p = testkit::random_unitary(RingId::IntegerTrivial, n, rng.next());
    const Matrix b = p * int_matrix(n, a) * transpose(p);
    std::vector<std::int64_t> bv;
    for (const auto& s : b.entries()) bv.push_back(s.integer_value());
    if (!isomorphic(n, a, bv) || !(herm_integer_canonical(int_matrix(n, a)) == herm_integer_canonical(b))) ++iso_fail;
    if (!additive(n, a, bv)) ++add_fail;
  }
  std::size_t resampled = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.below(5);
    std::vector<std::int64_t> a, b;
    for (;;) {
      a = random_signed_graph(n, rng);
      b = random_signed_graph(n, rng);
      if (!isomorphic(n, a, b)) break;
      ++resampled;
    }
    if (herm_integer_canonical(int_matrix(n, a)) == herm_integer_canonical(int_matrix(n, b))) ++noniso_fail;
    if (!additive(n, a, b)) ++add_fail;
  }
  return {iso_fail + noniso_fail + add_fail == 0,
          fmt("isomorphic pairs %zu/20 differ, non-isomorphic pairs %zu/20 collide (%zu resampled), "
              "additivity %zu/40 broken",
              iso_fail, noniso_fail, resampled, add_fail)};
}

Outcome planted_jordan() {
  SplitMix64 rng(0x1d8);
  std::size_t wrong = 0, refused = 0;
  std::string first;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng.below(6);
    std::vector<std::size_t> sizes;
    for (std::size_t left = n; left > 0;) {
      const std::size_t k = 1 + rng.below(left);
      sizes.push_back(k);
      left -= k;
    }
    const std::size_t distinct = 1 + rng.below(sizes.size());
    std::vector<cplx> eig;
    while (eig.size() < distinct) {
      const cplx z(rng.uniform(-1, 1), rng.uniform(-1, 1));
      if (std::all_of(eig.begin(), eig.end(), [&z](cplx w) { return std::abs(w - z) >= 1e-3; })) eig.push_back(z);
    }
    CMat j(n, n);
    std::vector<Block> planted;
    std::size_t pos = 0;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      const cplx lambda = eig[b % distinct];
      j.set_block(pos, pos, engines::jordan_block(sizes[b], lambda));
      pos += sizes[b];
      planted.push_back(Block::jordan_block(sizes[b], lambda));
    }
    const CMat p = dense(testkit::random_invertible(n, rng.next(), 100.0));
    const Matrix a = complex_matrix(p * j * engines::inverse(p));
    try {
      // Half the minimum separation keeps the eigenvalue matching unambiguous.
      const auto got = jordan(a).blocks;
      if (!multiset_eq(got, BlockMultiset(planted), 5e-4)) {
        ++wrong;
        if (first.empty()) first = fmt("instance %d", t);
      }
    } catch (const Error& e) {
      if (!is_ambiguity(e)) {
        ++wrong;
        if (first.empty()) first = e.what();
      } else {
        ++refused;
      }
    }
  }
  std::string d = fmt("50 instances, %zu wrong Segre characteristics, %zu refused", wrong, refused);
  if (!first.empty()) d += "; first: " + first;
  return {wrong == 0 && refused < 5, d};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"worked 2x3 example", worked_example},
      {"dual SVD generator recovery", dual_generators},
      {"additivity", additivity},
      {"uniqueness under sandwiches", uniqueness},
      {"Jordan / transpose-pair correspondence", transpose_pairs},
      {"bordered consistency", bordered_consistency},
      {"signed graphs", integer_graphs},
      {"planted Jordan structure", planted_jordan},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("uncaught: ") + e.what()};
    }
    std::printf("criterion %zu %s: %s (%s) [%.2f s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), seconds_since(t0));
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
