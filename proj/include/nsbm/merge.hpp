#pragma once

#include "nsbm/greedy.hpp"

namespace nsbm {

/// Absorbing block g into block h: adjacency rewritten on V_merge by
/// thresholding posteriors under the merged clustering and its re-estimated
/// parameters.
struct MergeProposal {
  int g = -1;
  int h = -1;
  Adjacency a_merge;
};

MergeProposal build_merge_proposal(int g, int h, const ObservationMatrix& x,
                                   const LatentState& state, const SymMatrix& rho,
                                   const Hyperparams& hp, Variant variant);

/// ICL change of applying the proposal; equals the full recompute difference.
double delta_merge(const CountStats& stats, const MergeProposal& proposal,
                   const ObservationMatrix& x, const LatentState& state,
                   const Hyperparams& hp, Variant variant);

double delta_merge_gaussian(const CountStats& stats, const MergeProposal& proposal,
                            const ObservationMatrix& x, const LatentState& state,
                            const Hyperparams& hp);

double delta_merge_nig(const CountStats& stats, const MergeProposal& proposal,
                       const ObservationMatrix& x, const LatentState& state,
                       const Hyperparams& hp);

/// Repeatedly applies the best strictly-improving merge until none exists.
/// Candidate proposals within a round are scored in parallel; ties go to the
/// lexicographically smallest (g, h). state/params/rho are updated in place.
FitTrace merge_pass(const ObservationMatrix& x, LatentState& state,
                    ModelParams& params, SymMatrix& rho, const Hyperparams& hp,
                    Variant variant, bool parallel = true);

}  // namespace nsbm
