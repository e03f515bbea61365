#pragma once

#include <string>
#include <vector>

#include "nsbm/linalg.hpp"
#include "nsbm/matrix.hpp"
#include "nsbm/model.hpp"

namespace nsbm {

/// n observations of p variables, one observation per row.
struct DataSample {
  int n = 0;
  int p = 0;
  Matrix y;
};

struct LassoFit {
  std::vector<double> coef;
  std::vector<double> residuals;
  double lambda = 0.0;
  int iterations = 0;
  bool converged = true;
};

/// Column-centered (1/n) Y^T Y.
SymMatrix sample_covariance(const DataSample& y, bool parallel = true);

/// Fisher z statistics of the partial correlations from the inverse sample
/// covariance: X_ij = sqrt(n-p-1) * atanh(-K_ij / sqrt(K_ii K_jj)).
/// Requires n > p (throws otherwise, mirroring the method's domain).
ObservationMatrix ztransform_stats(const DataSample& y);

/// Cyclic coordinate descent for (1/2n)||y - X b||^2 + lambda ||b||_1.
/// Iterates until every coordinate satisfies the KKT conditions within
/// 1e-6; fit.converged reports failure to get there within max_iter sweeps.
LassoFit lasso_cd(const Matrix& design, const std::vector<double>& response,
                  double lambda, int max_iter = 1000, double tol = 1e-6);

/// Default penalty for the nodewise regressions.
double default_nodewise_lambda(int n, int p);

/// Bias-corrected residual-covariance statistics from nodewise Lasso
/// regressions; lambda < 0 selects the default. Columns are processed
/// independently (in parallel when requested).
ObservationMatrix nodewise_residual_stats(const DataSample& y, double lambda = -1.0,
                                          bool parallel = true);

/// Two-sided standard normal p-values, 2(1 - Phi(|x|)).
SymMatrix pvalues_from_normal(const ObservationMatrix& x);

double normal_cdf(double x);

/// Center every column at its mean (in place).
void center_columns(Matrix& y);

}  // namespace nsbm
