#pragma once

#include "nsbm/model.hpp"

namespace nsbm {

struct IclValue {
  double total = 0.0;
  double sbm_part = 0.0;
  double noise_part = 0.0;
};

/// Thread-safe log-Gamma (std::lgamma writes the global signgam).
double log_gamma(double x);
double log_beta(double a, double b);

// Per-block-pair cell terms. Each includes its prior constant, so a cell
// with no possible pairs and no edges contributes exactly 0 and cells that
// appear or vanish when Q changes are handled by summing these directly.

/// log B(eta0+n1, xi0+nbar) - log B(eta0, xi0).
double icl_cell_sbm(const Hyperparams& hp, long long n1, long long nbar);

/// Known-variance integrated Gaussian cell term from the raw sums over the
/// cell's present edges (n edges, sum of X, sum of X^2).
double icl_cell_noise_gaussian(const Hyperparams& hp, long long n, double sx,
                               double sxx);

/// Normal-inverse-Gamma cell term from the raw sums.
double icl_cell_noise_nig(const Hyperparams& hp, long long n, double sx,
                          double sxx);

double icl_cell_noise(Variant variant, const Hyperparams& hp, long long n,
                      double sx, double sxx);

double icl_sbm(const CountStats& stats, const Hyperparams& hp, int p, int q);
double icl_noise_gaussian(const CountStats& stats, const Hyperparams& hp);
double icl_noise_nig(const CountStats& stats, const Hyperparams& hp);
IclValue icl_total(Variant variant, const CountStats& stats, const Hyperparams& hp);

}  // namespace nsbm
