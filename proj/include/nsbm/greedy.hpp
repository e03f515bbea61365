#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nsbm/icl.hpp"
#include "nsbm/model.hpp"
#include "nsbm/posterior.hpp"
#include "nsbm/rng.hpp"

namespace nsbm {

struct GreedyConfig {
  int q_init = 0;       // 0 resolves to min(ceil(sqrt(p)) + 2, p)
  int max_sweeps = 100;
  int restarts = 1;
  std::uint64_t seed = 1;
  Variant variant = Variant::GaussianKnownVar;
  bool parallel_restarts = true;
  // Test mode: verify every accepted incremental delta against a full ICL
  // recompute and throw on disagreement beyond 1e-8.
  bool check_deltas = false;
};

struct FitTrace {
  std::vector<double> icl_per_accepted_move;  // strictly increasing
  int final_q = 0;
  int sweeps_used = 0;
};

struct FitResult {
  LatentState state;
  ModelParams params;
  SymMatrix rho;      // posterior edge probabilities
  SymMatrix lvalues;  // 1 - rho
  IclValue icl;
};

int default_q_init(int p);

/// Initialization of Algorithm 1: adjacency from |X| > 2, clustering from a
/// k-means pass over the rows of |X|, parameters from Eq.-style weighted
/// means with binary weights, posteriors from those parameters.
void init_state(const ObservationMatrix& x, int q_init, const Hyperparams& hp,
                Variant variant, Rng& rng, LatentState& state,
                ModelParams& params, SymMatrix& rho);

/// Rethresholded adjacency row of istar when it joins block h, together with
/// the posterior row (entries at istar itself are 0).
std::pair<std::vector<std::uint8_t>, std::vector<double>> propose_adjacency_row(
    int istar, int h, const ObservationMatrix& x, const std::vector<int>& z,
    const ModelParams& params);

/// Incremental ICL change of a single-node move; equals the full recompute
/// difference. g == h yields 0.
double delta_swap(const CountStats& stats, const SwapContext& ctx,
                  const ObservationMatrix& x, const std::vector<int>& z,
                  const Hyperparams& hp, Variant variant);

/// The adjacency half of the post-acceptance update of Algorithm-style
/// fits: flip entries toward 1{rho > 0.5}, keeping only flips that strictly
/// increase the ICL so the objective stays monotone. Restricting to blocks
/// g/h (-1, -1 means every pair) matches the scope of a parameter refresh.
/// state and stats are updated in place; returns the ICL gain.
double ascend_rethreshold(const ObservationMatrix& x, LatentState& state,
                          CountStats& stats, const SymMatrix& rho,
                          const Hyperparams& hp, Variant variant, int g = -1,
                          int h = -1);

double delta_swap_gaussian(const CountStats& stats, const SwapContext& ctx,
                           const ObservationMatrix& x, const std::vector<int>& z,
                           const Hyperparams& hp);

double delta_swap_nig(const CountStats& stats, const SwapContext& ctx,
                      const ObservationMatrix& x, const std::vector<int>& z,
                      const Hyperparams& hp);

/// Greedy ICL maximization with random-permutation sweeps and automatic
/// block-count shrinkage. Runs cfg.restarts independent restarts (parallel,
/// seeds derived from cfg.seed) and returns the best final ICL.
std::pair<FitResult, FitTrace> greedy_fit(const ObservationMatrix& x,
                                          const GreedyConfig& cfg,
                                          const Hyperparams& hp);

}  // namespace nsbm
