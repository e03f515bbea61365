#pragma once

#include <cstdint>
#include <vector>

#include "nsbm/matrix.hpp"

namespace nsbm {

/// Symmetric matrix of edge test statistics; the diagonal is never read.
using ObservationMatrix = SymMatrix;

enum class Variant { GaussianKnownVar, NIG };

struct Hyperparams {
  // Dirichlet prior on block proportions; Beta prior on connection
  // probabilities.
  double n0 = 1.0;
  double eta0 = 1.0;
  double xi0 = 1.0;
  // Gaussian prior on signal means, known signal variance.
  double rho0 = 0.0;
  double tau0_sq = 1.0;
  double sigma_sq = 1.0;
  // Normal-inverse-Gamma prior when signal variances are unknown.
  double a0 = 0.0;
  double b0 = 1.0;
  double c0 = 1.0;
  double d0 = 1.0;
};

/// Node clustering plus latent adjacency. Blocks are labeled 0..q-1 and all
/// labels are in use (compaction happens whenever a block empties).
struct LatentState {
  std::vector<int> z;
  Adjacency a;
  int q = 0;

  int p() const { return static_cast<int>(z.size()); }
};

/// All sufficient statistics the ICL depends on, per block pair:
/// present/absent edge counts, possible-pair counts and the first two moments
/// of the observations on present edges. Sums are kept instead of variances
/// so single-node moves touch O(degree) state.
struct CountStats {
  int p = 0;
  int q = 0;
  std::vector<int> nodes;        // nodes per block
  BlockMat<long long> edges;     // n_{q,l}: present edges
  BlockMat<long long> gaps;      // nbar_{q,l}: absent edges
  BlockMat<long long> pairs;     // m_{q,l}: possible pairs
  BlockMat<double> sum_x;        // sum of X over present edges
  BlockMat<double> sum_xx;       // sum of X^2 over present edges
  double null_sq = 0.0;          // sum of (1-A) X^2 over all pairs
  long long edge_total = 0;      // M^A

  long long pair_universe() const {
    return static_cast<long long>(p) * (p - 1) / 2;
  }

  /// Drop empty block g, shifting later labels down by one.
  void remove_block(int g);
};

struct PairMoments {
  long long n = 0;
  double mean = 0.0;   // Xbar_{q,l}; 0 when the cell is empty
  double var = 0.0;    // S_{q,l}, population variance; 0 when empty
};

/// A proposed single-node move from block g to block h together with the
/// rethresholded adjacency row of the moved node; old_row/new_row hold the
/// full rows so the affected sets I_l^A and I_l^{A_swap} can be derived.
struct SwapContext {
  int istar = -1;
  int g = -1;
  int h = -1;
  std::vector<std::uint8_t> old_row;
  std::vector<std::uint8_t> new_row;
};

/// Before/after values of one block-pair cell affected by a move.
struct CellDelta {
  int a = 0, b = 0;  // canonical a <= b, labels before compaction
  long long n1_old = 0, n1_new = 0;
  long long m_old = 0, m_new = 0;
  double sx_old = 0.0, sx_new = 0.0;
  double sxx_old = 0.0, sxx_new = 0.0;
  bool dies = false;  // cell vanishes because block a or b empties
};

CountStats compute_count_stats(const ObservationMatrix& x, const LatentState& state);

PairMoments variance_of_pair(const CountStats& stats, int q, int l);

/// Cells of the set S_{g,h} with their pre/post-swap statistics. Shared by
/// apply_swap and the incremental ICL deltas.
std::vector<CellDelta> swap_cell_deltas(const CountStats& stats,
                                        const SwapContext& ctx,
                                        const ObservationMatrix& x,
                                        const std::vector<int>& z);

/// Count statistics after applying ctx. g == h returns the input unchanged.
/// Labels are not compacted here even if block g empties.
CountStats apply_swap(const CountStats& stats, const SwapContext& ctx,
                      const ObservationMatrix& x, const std::vector<int>& z);

/// Cells affected by absorbing block g into h under the rewritten adjacency
/// a_merge (entries off V_merge must equal the current adjacency).
std::vector<CellDelta> merge_cell_deltas(const CountStats& stats, int g, int h,
                                         const Adjacency& a_merge,
                                         const ObservationMatrix& x,
                                         const std::vector<int>& z);

/// Count statistics after merging g into h; block g is left empty (not
/// compacted). Throws if g == h.
CountStats apply_merge(const CountStats& stats, int g, int h,
                       const Adjacency& a_merge, const ObservationMatrix& x,
                       const std::vector<int>& z);

/// Change in sum of (1-A) X^2 for a swap (row differences only).
double swap_null_sq_delta(const SwapContext& ctx, const ObservationMatrix& x);

/// Change in sum of (1-A) X^2 over V_merge when adjacency rows are rewritten.
double merge_null_sq_delta(int g, int h, const Adjacency& a,
                           const Adjacency& a_merge, const ObservationMatrix& x,
                           const std::vector<int>& z);

void validate_state(const ObservationMatrix& x, const LatentState& state);

}  // namespace nsbm
