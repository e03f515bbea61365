// Test-only reference implementations, kept independent of the library code
// paths they are used to check.
#pragma once

#include <functional>
#include <vector>

#include "nsbm/icl.hpp"
#include "nsbm/model.hpp"
#include "nsbm/rng.hpp"

namespace oracle {

/// Naive tally of every count statistic by scanning node and pair lists.
nsbm::CountStats tally_count_stats(const nsbm::ObservationMatrix& x,
                                   const nsbm::LatentState& state);

/// Adaptive Simpson integration.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, int max_depth = 48);

/// ICL noise term via numeric integration of the per-cell integrand
/// J_{q,l} = int prod_edges N(X; mu, sigma^2) N(mu; rho0, tau0^2) dmu.
double icl_noise_gaussian_quadrature(const nsbm::ObservationMatrix& x,
                                     const nsbm::LatentState& state,
                                     const nsbm::Hyperparams& hp);

/// Same for the normal-inverse-Gamma model via nested 2-D integration over
/// (mu, sigma^2).
double icl_noise_nig_quadrature(const nsbm::ObservationMatrix& x,
                                const nsbm::LatentState& state,
                                const nsbm::Hyperparams& hp);

/// All set partitions of {0..n-1} as restricted-growth label vectors.
std::vector<std::vector<int>> all_partitions(int n);

/// Deterministic map partition -> (adjacency, ICL): iterate posterior
/// thresholding to a fixed point starting from |X| > 2, then evaluate.
double partition_icl(const nsbm::ObservationMatrix& x, std::vector<int> z,
                     const nsbm::Hyperparams& hp, nsbm::Variant variant);

/// Global ICL maximum over every partition of the nodes.
double best_icl_over_partitions(const nsbm::ObservationMatrix& x,
                                const nsbm::Hyperparams& hp, nsbm::Variant variant);

struct TestInstance {
  nsbm::ObservationMatrix x;
  nsbm::LatentState state;
};

/// Random clustering + latent graph + observations with block-pair signal.
TestInstance random_instance(nsbm::Rng& rng, int p, int qmax,
                             double edge_prob = 0.35, double signal = 2.5);

/// Least squares through the normal equations (for the lasso lambda=0 check).
std::vector<double> least_squares(const nsbm::Matrix& design,
                                  const std::vector<double>& response);

double normal_pdf(double x, double mean, double var);

}  // namespace oracle
