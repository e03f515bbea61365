#pragma once

#include <vector>

#include "nsbm/model.hpp"

namespace nsbm {

/// Weight clip applied to connection-probability estimates so density
/// ratios stay finite.
inline constexpr double kWeightClip = 1e-6;
/// Floor for weighted variance estimates (a cell whose weight sits on a
/// single observation has zero empirical spread).
inline constexpr double kVarFloor = 1e-12;

struct ModelParams {
  int q = 0;
  std::vector<double> pi;        // block proportions, n_q / p
  BlockMat<double> w;            // connection probabilities, clipped
  BlockMat<double> mu;           // signal means
  BlockMat<double> sigma_sq;     // signal variances (global for known-var)

  void remove_block(int g);
};

/// Weighted-mean estimates from posterior edge probabilities rho. Empty
/// denominators fall back to the prior center (w = clip, mu = rho0,
/// sigma_sq = 1). The known-variance variant replicates hp.sigma_sq.
ModelParams estimate_params(const ObservationMatrix& x, const LatentState& state,
                            const SymMatrix& rho, const Hyperparams& hp,
                            Variant variant);

/// Re-estimate only the block pairs touching g or h, in place.
void refresh_params_for_blocks(ModelParams& params, const ObservationMatrix& x,
                               const LatentState& state, const SymMatrix& rho,
                               const Hyperparams& hp, Variant variant, int g, int h);

/// Posterior probability that the edge is absent:
///   l = (1-w) f_N(0,1)(x) / ((1-w) f_N(0,1)(x) + w f_N(mu,s2)(x)).
double lvalue(double x, double w, double mu, double sigma_sq);

/// Complement, P(edge present | data): 1 - lvalue.
double edge_posterior(double x, double w, double mu, double sigma_sq);

/// Elementwise l-values with parameters taken from each pair's block pair.
SymMatrix lvalue_matrix(const ObservationMatrix& x, const std::vector<int>& z,
                        const ModelParams& params);

/// rho = 1 - l, elementwise.
SymMatrix posterior_matrix(const ObservationMatrix& x, const std::vector<int>& z,
                           const ModelParams& params);

/// Strict threshold: entry set when rho > t.
Adjacency threshold_graph(const SymMatrix& rho, double t = 0.5);

}  // namespace nsbm
