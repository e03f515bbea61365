#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nsbm/datagen.hpp"
#include "nsbm/ggm_stats.hpp"
#include "oracles.hpp"

using namespace nsbm;

namespace {

DataSample make_sample(const Matrix& y) {
  DataSample s;
  s.y = y;
  s.n = y.rows();
  s.p = y.cols();
  return s;
}

double objective(const Matrix& design, const std::vector<double>& y,
                 const std::vector<double>& beta, double lambda) {
  const int n = design.rows(), d = design.cols();
  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = y[i];
    for (int j = 0; j < d; ++j) r -= design(i, j) * beta[j];
    rss += r * r;
  }
  double l1 = 0.0;
  for (double b : beta) l1 += std::fabs(b);
  return rss / (2.0 * n) + lambda * l1;
}

}  // namespace

TEST_CASE("sample_covariance matches the direct formula") {
  Rng rng(5);
  Matrix y(7, 3);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 3; ++j) y(i, j) = rng.normal() + j;
  const SymMatrix cov = sample_covariance(make_sample(y));

  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double ma = 0, mb = 0;
      for (int i = 0; i < 7; ++i) {
        ma += y(i, a);
        mb += y(i, b);
      }
      ma /= 7;
      mb /= 7;
      double s = 0;
      for (int i = 0; i < 7; ++i) s += (y(i, a) - ma) * (y(i, b) - mb);
      CHECK(cov(a, b) == doctest::Approx(s / 7).epsilon(1e-12));
    }
}

TEST_CASE("sample_covariance of a single column is the variance") {
  Matrix y(4, 1);
  y(0, 0) = 1;
  y(1, 0) = 3;
  y(2, 0) = 5;
  y(3, 0) = 7;
  const SymMatrix cov = sample_covariance(make_sample(y));
  CHECK(cov(0, 0) == doctest::Approx(5.0));  // population variance of 1,3,5,7
}

TEST_CASE("duplicated column gives off-diagonal equal to diagonal") {
  Rng rng(9);
  Matrix y(6, 2);
  for (int i = 0; i < 6; ++i) {
    y(i, 0) = rng.normal();
    y(i, 1) = y(i, 0);
  }
  const SymMatrix cov = sample_covariance(make_sample(y));
  CHECK(cov(0, 1) == doctest::Approx(cov(0, 0)));
}

TEST_CASE("ztransform_stats refuses n <= p") {
  Rng rng(2);
  Matrix y(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) y(i, j) = rng.normal();
  CHECK_THROWS_WITH_AS(ztransform_stats(make_sample(y)),
                       doctest::Contains("not applicable"), std::invalid_argument);
}

TEST_CASE("zero sample correlation maps to zero statistic") {
  Matrix y(4, 2);
  const double c1[4] = {1, -1, 1, -1};
  const double c2[4] = {1, 1, -1, -1};
  for (int i = 0; i < 4; ++i) {
    y(i, 0) = c1[i];
    y(i, 1) = c2[i];
  }
  const ObservationMatrix x = ztransform_stats(make_sample(y));
  CHECK(x(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("p=2 Fisher z equals the direct bivariate computation") {
  Rng rng(13);
  const int n = 30;
  Matrix y(n, 2);
  for (int i = 0; i < n; ++i) {
    y(i, 0) = rng.normal();
    y(i, 1) = 0.6 * y(i, 0) + 0.8 * rng.normal();
  }
  const ObservationMatrix x = ztransform_stats(make_sample(y));

  // Plain sample correlation of the two centered columns.
  Matrix c = y;
  center_columns(c);
  double s01 = 0, s00 = 0, s11 = 0;
  for (int i = 0; i < n; ++i) {
    s01 += c(i, 0) * c(i, 1);
    s00 += c(i, 0) * c(i, 0);
    s11 += c(i, 1) * c(i, 1);
  }
  const double r = s01 / std::sqrt(s00 * s11);
  CHECK(x(0, 1) == doctest::Approx(std::sqrt(n - 3.0) * std::atanh(r)).epsilon(1e-10));
}

TEST_CASE("ztransform_stats is invariant to positive column rescaling") {
  Rng rng(21);
  GraphSpec spec;
  spec.kind = GraphKind::Band;
  spec.p = 8;
  const Adjacency a = gen_graph(spec);
  const auto [omega, sigma] = precision_from_graph(a, PrecisionSpec{});
  DataSample y = sample_gaussian(sigma, 40, 3);

  const ObservationMatrix x1 = ztransform_stats(y);
  DataSample scaled = y;
  const double scale[8] = {0.5, 2.0, 10.0, 1.0, 0.01, 3.0, 7.0, 0.2};
  for (int i = 0; i < scaled.n; ++i)
    for (int j = 0; j < 8; ++j) scaled.y(i, j) *= scale[j];
  const ObservationMatrix x2 = ztransform_stats(scaled);
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      CHECK(std::fabs(x1(i, j) - x2(i, j)) <= 1e-10);
}

TEST_CASE("ztransform null statistics look standard normal") {
  // Independent variables: entries should be roughly N(0,1) in bulk.
  SymMatrix id(12);
  for (int i = 0; i < 12; ++i) id.set(i, i, 1.0);
  double mean = 0.0, var = 0.0;
  int count = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const DataSample y = sample_gaussian(id, 250, 100 + rep);
    const ObservationMatrix x = ztransform_stats(y);
    for (int i = 0; i < 12; ++i)
      for (int j = i + 1; j < 12; ++j) {
        mean += x(i, j);
        var += x(i, j) * x(i, j);
        ++count;
      }
  }
  mean /= count;
  var = var / count - mean * mean;
  CHECK(std::fabs(mean) < 0.1);
  CHECK(var > 0.8);
  CHECK(var < 1.2);
}

TEST_CASE("lasso_cd with lambda 0 matches least squares") {
  Rng rng(17);
  Matrix design(25, 4);
  std::vector<double> y(25);
  for (int i = 0; i < 25; ++i) {
    for (int j = 0; j < 4; ++j) design(i, j) = rng.normal();
    y[i] = rng.normal();
  }
  const LassoFit fit = lasso_cd(design, y, 0.0, 5000, 1e-10);
  const std::vector<double> beta = oracle::least_squares(design, y);
  for (int j = 0; j < 4; ++j) CHECK(fit.coef[j] == doctest::Approx(beta[j]).epsilon(1e-6));
}

TEST_CASE("large lambda kills every coefficient") {
  Rng rng(19);
  Matrix design(20, 5);
  std::vector<double> y(20);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 5; ++j) design(i, j) = rng.normal();
    y[i] = rng.normal();
  }
  double lambda_max = 0.0;
  for (int j = 0; j < 5; ++j) {
    double c = 0.0;
    for (int i = 0; i < 20; ++i) c += design(i, j) * y[i];
    lambda_max = std::max(lambda_max, std::fabs(c) / 20.0);
  }
  const LassoFit fit = lasso_cd(design, y, lambda_max * 1.0001);
  for (double b : fit.coef) CHECK(b == 0.0);
}

TEST_CASE("orthonormal design soft-thresholds the OLS solution") {
  // Columns with ||x_j||^2 = n and zero cross products.
  const int n = 8;
  Matrix design(n, 2);
  const double h[8] = {1, 1, 1, 1, -1, -1, -1, -1};
  const double g[8] = {1, -1, 1, -1, 1, -1, 1, -1};
  for (int i = 0; i < n; ++i) {
    design(i, 0) = h[i];
    design(i, 1) = g[i];
  }
  Rng rng(23);
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) y[i] = 2.0 * h[i] + 0.3 * g[i] + 0.1 * rng.normal();

  const double lambda = 0.25;
  const LassoFit fit = lasso_cd(design, y, lambda);
  for (int j = 0; j < 2; ++j) {
    double ols = 0.0;
    for (int i = 0; i < n; ++i) ols += design(i, j) * y[i];
    ols /= n;
    const double want = (ols > lambda) ? ols - lambda : (ols < -lambda ? ols + lambda : 0.0);
    CHECK(fit.coef[j] == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("lasso objective is non-increasing across sweeps") {
  Rng rng(29);
  Matrix design(30, 6);
  std::vector<double> y(30);
  for (int i = 0; i < 30; ++i) {
    for (int j = 0; j < 6; ++j) design(i, j) = rng.normal();
    y[i] = rng.normal();
  }
  const double lambda = 0.05;
  double prev = objective(design, y, std::vector<double>(6, 0.0), lambda);
  for (int sweeps = 1; sweeps <= 8; ++sweeps) {
    const LassoFit fit = lasso_cd(design, y, lambda, sweeps, 0.0);
    const double cur = objective(design, y, fit.coef, lambda);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("nodewise stats at p=2 match the bivariate computation") {
  Rng rng(31);
  const int n = 40;
  Matrix y(n, 2);
  for (int i = 0; i < n; ++i) {
    y(i, 0) = rng.normal();
    y(i, 1) = -0.5 * y(i, 0) + rng.normal();
  }
  const DataSample sample = make_sample(y);
  const ObservationMatrix x = nodewise_residual_stats(sample, 0.0);

  // Direct simple-regression residuals on centered columns.
  Matrix c = y;
  center_columns(c);
  double s00 = 0, s11 = 0, s01 = 0;
  for (int i = 0; i < n; ++i) {
    s00 += c(i, 0) * c(i, 0);
    s11 += c(i, 1) * c(i, 1);
    s01 += c(i, 0) * c(i, 1);
  }
  const double b01 = s01 / s11;  // regression of var0 on var1
  const double b10 = s01 / s00;
  std::vector<double> e0(n), e1(n);
  double r00 = 0, r11 = 0, r01 = 0;
  for (int i = 0; i < n; ++i) {
    e0[i] = c(i, 0) - b01 * c(i, 1);
    e1[i] = c(i, 1) - b10 * c(i, 0);
    r00 += e0[i] * e0[i];
    r11 += e1[i] * e1[i];
    r01 += e0[i] * e1[i];
  }
  r00 /= n;
  r11 /= n;
  r01 /= n;
  const double corrected = -(r01 + b01 * r11 + b10 * r00);
  const double want = std::sqrt(static_cast<double>(n)) * corrected / std::sqrt(r00 * r11);
  CHECK(x(0, 1) == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("nodewise stats are symmetric and near zero under the null") {
  SymMatrix id(10);
  for (int i = 0; i < 10; ++i) id.set(i, i, 1.0);
  double mean = 0.0;
  int count = 0;
  for (int rep = 0; rep < 10; ++rep) {
    const DataSample y = sample_gaussian(id, 60, 500 + rep);
    const ObservationMatrix x = nodewise_residual_stats(y);
    for (int i = 0; i < 10; ++i)
      for (int j = i + 1; j < 10; ++j) {
        CHECK(x(i, j) == x(j, i));
        CHECK(std::isfinite(x(i, j)));
        mean += x(i, j);
        ++count;
      }
  }
  CHECK(std::fabs(mean / count) < 0.15);
}

TEST_CASE("nodewise stats serial equals parallel") {
  SymMatrix id(8);
  for (int i = 0; i < 8; ++i) id.set(i, i, 1.0);
  const DataSample y = sample_gaussian(id, 30, 77);
  const ObservationMatrix a = nodewise_residual_stats(y, -1.0, false);
  const ObservationMatrix b = nodewise_residual_stats(y, -1.0, true);
  CHECK(a == b);
}

TEST_CASE("pvalues_from_normal") {
  ObservationMatrix x(3);
  x.set(0, 1, 0.0);
  x.set(0, 2, 1.96);
  x.set(1, 2, -3.0);
  const SymMatrix pv = pvalues_from_normal(x);
  CHECK(pv(0, 1) == doctest::Approx(1.0));
  CHECK(pv(0, 2) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(pv(1, 2) == doctest::Approx(2.0 * (1.0 - normal_cdf(3.0))).epsilon(1e-12));
  CHECK(pv(1, 2) < pv(0, 2));
  CHECK(pv(0, 2) < pv(0, 1));
}
