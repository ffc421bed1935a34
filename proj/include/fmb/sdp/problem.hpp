#pragma once

#include <iosfwd>
#include <vector>

#include "fmb/la/matrix.hpp"

namespace fmb::sdp {

// Sparse symmetric matrix entry; only row <= col is stored.
struct BlockEntry {
  int row;
  int col;
  double value;
};

// One PSD constraint block:  S_b(y) = sum_j y_j * B_{b,j} - D_b  >= 0.
// dim == 1 blocks are scalar linear inequalities.
struct Block {
  int dim = 0;
  // Per-variable coefficient matrices B_{b,j}, sorted by variable index.
  std::vector<std::pair<int, std::vector<BlockEntry>>> terms;
  // Constant part D_b.
  std::vector<BlockEntry> constant;
};

struct EqRow {
  std::vector<std::pair<int, double>> coeffs;  // sorted by variable index
  double rhs = 0.0;
};

// Block-diagonal SDP over a free decision vector y:
//   minimize cost . y
//   subject to  Gy = h   (rows of `equalities`)
//               S_b(y) >= 0 for every block b.
struct SdpProblem {
  int num_vars = 0;
  la::Vector cost;
  std::vector<Block> blocks;
  std::vector<EqRow> equalities;
};

// Plain-text dump (block sizes, then sparse triplets of every linear map)
// for cross-checking against external solvers.
void dump_sdp(const SdpProblem& prob, std::ostream& os);

}  // namespace fmb::sdp
