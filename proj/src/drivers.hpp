#pragma once

#include <vector>

#include "ringdecomp/decomp.hpp"

namespace ringdecomp::detail {

// Driver output before canonical ordering: blocks in the column order of the
// factors.
struct Raw {
  Matrix left;
  Matrix right;
  std::vector<Block> blocks;
};

Raw dual_svd(const Matrix& m, const DecompOptions& opts);
Raw dual_spectral(const Matrix& m, const DecompOptions& opts);
Raw pair_svd(const Matrix& m, const DecompOptions& opts);
Raw pair_spectral(const Matrix& m, const DecompOptions& opts);

}  // namespace ringdecomp::detail
