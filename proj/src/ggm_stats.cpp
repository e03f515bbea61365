#include "nsbm/ggm_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nsbm/threading.hpp"

namespace nsbm {

void center_columns(Matrix& y) {
  const int n = y.rows();
  const int p = y.cols();
  for (int j = 0; j < p; ++j) {
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += y(i, j);
    mean /= n;
    for (int i = 0; i < n; ++i) y(i, j) -= mean;
  }
}

SymMatrix sample_covariance(const DataSample& y, bool parallel) {
  if (y.n < 2) throw std::invalid_argument("sample_covariance requires n >= 2");
  Matrix centered = y.y;
  center_columns(centered);
  return gram(centered, 1.0 / y.n, parallel);
}

ObservationMatrix ztransform_stats(const DataSample& y) {
  const int n = y.n, p = y.p;
  if (n <= p)
    throw std::invalid_argument(
        "ztransform_stats is not applicable: requires n > p (got n=" +
        std::to_string(n) + ", p=" + std::to_string(p) + ")");
  const SymMatrix k = invert_spd(sample_covariance(y));
  const double scale = std::sqrt(static_cast<double>(n - p - 1));
  ObservationMatrix x(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      double r = -k(i, j) / std::sqrt(k(i, i) * k(j, j));
      r = std::clamp(r, -1.0 + 1e-15, 1.0 - 1e-15);
      x.set(i, j, scale * std::atanh(r));
    }
  return x;
}

LassoFit lasso_cd(const Matrix& design, const std::vector<double>& response,
                  double lambda, int max_iter, double tol) {
  if (lambda < 0.0) throw std::invalid_argument("lasso_cd: lambda must be >= 0");
  const int n = design.rows();
  const int d = design.cols();
  if (static_cast<int>(response.size()) != n)
    throw std::invalid_argument("lasso_cd: response size mismatch");

  LassoFit fit;
  fit.lambda = lambda;
  fit.coef.assign(d, 0.0);
  fit.residuals = response;

  std::vector<double> col_sq(d, 0.0);  // ||x_j||^2 / n
  for (int j = 0; j < d; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += design(i, j) * design(i, j);
    col_sq[j] = s / n;
  }

  auto soft = [](double v, double t) {
    if (v > t) return v - t;
    if (v < -t) return v + t;
    return 0.0;
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    fit.iterations = iter + 1;
    for (int j = 0; j < d; ++j) {
      if (col_sq[j] == 0.0) continue;
      double corr = 0.0;  // x_j^T r / n with coordinate j backed out
      for (int i = 0; i < n; ++i) corr += design(i, j) * fit.residuals[i];
      corr = corr / n + col_sq[j] * fit.coef[j];
      const double updated = soft(corr, lambda) / col_sq[j];
      const double change = updated - fit.coef[j];
      if (change != 0.0) {
        for (int i = 0; i < n; ++i) fit.residuals[i] -= change * design(i, j);
        fit.coef[j] = updated;
      }
    }

    // KKT residual over all coordinates.
    double worst = 0.0;
    for (int j = 0; j < d; ++j) {
      if (col_sq[j] == 0.0) continue;
      double grad = 0.0;
      for (int i = 0; i < n; ++i) grad += design(i, j) * fit.residuals[i];
      grad /= n;
      double viol;
      if (fit.coef[j] > 0.0)
        viol = std::fabs(grad - lambda);
      else if (fit.coef[j] < 0.0)
        viol = std::fabs(grad + lambda);
      else
        viol = std::max(0.0, std::fabs(grad) - lambda);
      worst = std::max(worst, viol);
    }
    if (worst <= tol) {
      fit.converged = true;
      return fit;
    }
  }
  fit.converged = false;
  return fit;
}

double default_nodewise_lambda(int n, int p) {
  // sqrt(log p / n): heavier penalties leave enough shrinkage bias in the
  // residuals to shift the statistics' null away from N(0,1).
  return std::sqrt(std::log(static_cast<double>(p)) / n);
}

ObservationMatrix nodewise_residual_stats(const DataSample& y, double lambda,
                                          bool parallel) {
  const int n = y.n, p = y.p;
  if (n < 2 || p < 2)
    throw std::invalid_argument("nodewise_residual_stats requires n >= 2 and p >= 2");
  if (lambda < 0.0) lambda = default_nodewise_lambda(n, p);

  Matrix centered = y.y;
  center_columns(centered);

  // beta(i, j): coefficient of variable j in the regression of variable i.
  Matrix beta(p, p, 0.0);
  Matrix resid(n, p, 0.0);
  std::vector<int> degenerate(p, 0);

#pragma omp parallel for num_threads(thread_count()) schedule(dynamic) if (parallel)
  for (int i = 0; i < p; ++i) {
    Matrix design(n, p - 1);
    std::vector<double> response(n);
    for (int k = 0; k < n; ++k) {
      response[k] = centered(k, i);
      int c = 0;
      for (int j = 0; j < p; ++j)
        if (j != i) design(k, c++) = centered(k, j);
    }
    const LassoFit fit = lasso_cd(design, response, lambda);
    int c = 0;
    for (int j = 0; j < p; ++j)
      if (j != i) beta(i, j) = fit.coef[c++];
    double ss = 0.0;
    for (int k = 0; k < n; ++k) {
      resid(k, i) = fit.residuals[k];
      ss += fit.residuals[k] * fit.residuals[k];
    }
    if (ss == 0.0) degenerate[i] = 1;
  }

  for (int i = 0; i < p; ++i)
    if (degenerate[i])
      throw std::runtime_error("nodewise_residual_stats: residuals of column " +
                               std::to_string(i) + " are identically zero");

  std::vector<double> rss(p, 0.0);  // ||eps_i||^2 / n
  for (int i = 0; i < p; ++i) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += resid(k, i) * resid(k, i);
    rss[i] = s / n;
  }

  ObservationMatrix x(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      double cross = 0.0;
      for (int k = 0; k < n; ++k) cross += resid(k, i) * resid(k, j);
      cross /= n;
      const double corrected = -(cross + beta(i, j) * rss[j] + beta(j, i) * rss[i]);
      x.set(i, j, std::sqrt(static_cast<double>(n)) * corrected /
                      std::sqrt(rss[i] * rss[j]));
    }
  return x;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

SymMatrix pvalues_from_normal(const ObservationMatrix& x) {
  const int p = x.dim();
  SymMatrix out(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      const double v = std::fabs(x(i, j));
      out.set(i, j, std::erfc(v / std::sqrt(2.0)));  // 2(1 - Phi(|x|))
    }
  return out;
}

}  // namespace nsbm
