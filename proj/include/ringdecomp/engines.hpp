#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "ringdecomp/dense.hpp"

namespace ringdecomp::engines {

/// Relative numerical-rank threshold: sigma counts iff
/// sigma > max(rows, cols) * kRankTol * sigma_max.
inline constexpr double kRankTol = 1e-10;
inline constexpr double kDefaultClusterTol = 1e-6;
/// Relative backward error assumed when merging eigenvalues of defective clusters.
inline constexpr double kJordanBackwardError = 1e-13;

template <class K>
struct EigResult {
  Dense<K> vectors;            // unitary, columns are eigenvectors
  std::vector<double> values;  // descending
};

/// Cyclic two-sided Jacobi for self-adjoint matrices over R, C or H.
/// Throws Error(NotHermitian) if `a` is not self-adjoint within 1e-9 (scaled).
template <class K>
EigResult<K> jacobi_eig(const Dense<K>& a);

EigResult<double> symmetric_eig(const RMat& a);
EigResult<cplx> hermitian_eig(const CMat& a);

template <class K>
struct SvdResult {
  Dense<K> u;                 // m x m unitary
  std::vector<double> sigma;  // min(m, n) values, descending
  Dense<K> v;                 // n x n unitary
  std::size_t rank = 0;       // number of sigma above the rank threshold
};

/// One-sided Jacobi SVD, u* a v = diag(sigma). Any shape, including empty.
template <class K>
SvdResult<K> jacobi_svd(const Dense<K>& a);

SvdResult<double> real_svd(const RMat& a);
SvdResult<cplx> complex_svd(const CMat& a);

/// Extends the first `k` orthonormal columns of `basis` (n rows) to an n x n
/// unitary by Gram-Schmidt against the standard basis.
template <class K>
Dense<K> complete_unitary(const Dense<K>& basis, std::size_t k);

struct AntisymCanonical {
  RMat q;                     // orthogonal
  std::vector<double> pairs;  // y_i > 0, descending
  std::size_t zeros = 0;
};

/// q^T a q = (+)_i [[0, -y_i], [y_i, 0]] (+) 0_zeros. A pair is kept iff
/// y > zero_tol; a negative zero_tol selects max(n,1) * kRankTol * |a|.
AntisymCanonical antisymmetric_canonical(const RMat& a, double zero_tol = -1.0);

struct Cluster {
  cplx value;                        // mean of the members
  std::vector<std::size_t> members;  // indices into the input list
};

/// Transitive-closure grouping of values within distance tol, ordered by
/// (real part, imaginary part) of the representative.
std::vector<Cluster> cluster(const std::vector<cplx>& values, double tol);

/// Throws Error(ClusterAmbiguity) if two representatives are closer than 10 * tol.
void require_separated(const std::vector<Cluster>& clusters, double tol);

/// Block-diagonal similarity A = transform * diag(blocks) * transform^-1 built
/// from a reordered complex Schur form; each block is upper triangular and
/// holds the eigenvalues of one group.
struct SchurSplit {
  CMat transform;
  std::vector<CMat> blocks;
  std::vector<std::size_t> offsets;  // starting index of each block
  std::vector<int> group_keys;       // key of each block, ascending
};

/// `grouping` maps the Schur eigenvalues (in Schur order) to integer keys;
/// positions sharing a key end up in the same block, blocks sorted by key.
SchurSplit schur_split(const CMat& a, const std::function<std::vector<int>(const std::vector<cplx>&)>& grouping);

struct JordanCluster {
  cplx eigenvalue;
  std::vector<std::size_t> segre;  // block sizes, descending
};

struct JordanStructure {
  std::vector<JordanCluster> clusters;
  /// Columns are Jordan chains p_1..p_m, cluster by cluster, blocks in segre
  /// order; transform^-1 a transform is the direct sum of J_m(eigenvalue).
  CMat transform;
};

/// Numeric Jordan structure from Schur clustering plus rank chains.
/// Throws Error(ClusterAmbiguity) when clusters are not separable or the rank
/// chain is inconsistent.
JordanStructure complex_jordan(const CMat& a, double cluster_tol = kDefaultClusterTol);

/// J_m(lambda): lambda on the diagonal, ones on the superdiagonal.
CMat jordan_block(std::size_t m, cplx lambda);

/// Numerical rank with threshold max(max(rows,cols) * kRankTol * sigma_max, abs_floor).
template <class K>
std::size_t numerical_rank(const Dense<K>& a, double abs_floor = 0.0);

/// Orthonormal basis (as columns) of the numerical null space of `a`.
CMat null_space(const CMat& a, double abs_floor = 0.0);

/// Gaussian elimination with partial pivoting. Throws Error(NotInvertible).
CMat inverse(const CMat& a);

}  // namespace ringdecomp::engines
