#include "nsbm/icl.hpp"

#include <cmath>

namespace nsbm {

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double icl_cell_sbm(const Hyperparams& hp, long long n1, long long nbar) {
  return log_beta(hp.eta0 + static_cast<double>(n1), hp.xi0 + static_cast<double>(nbar)) -
         log_beta(hp.eta0, hp.xi0);
}

double icl_cell_noise_gaussian(const Hyperparams& hp, long long n, double sx,
                               double sxx) {
  if (n == 0) return 0.0;
  const double nn = static_cast<double>(n);
  const double s2 = hp.sigma_sq;
  const double t2 = hp.tau0_sq;
  const double mean = sx / nn;
  double var = sxx / nn - mean * mean;
  if (var < 0.0) var = 0.0;
  // sum over the cell's edges of (X - rho0)^2, expanded from the sums
  const double r = sxx - 2.0 * hp.rho0 * sx + nn * hp.rho0 * hp.rho0;
  const double denom = s2 + t2 * nn;
  return -0.5 * nn * std::log(s2) + 0.5 * std::log(s2) - 0.5 * std::log(denom) -
         t2 * nn * nn * var / (2.0 * s2 * denom) - r / (2.0 * denom);
}

double icl_cell_noise_nig(const Hyperparams& hp, long long n, double sx,
                          double sxx) {
  if (n == 0) return 0.0;
  const double nn = static_cast<double>(n);
  const double mean = sx / nn;
  double var = sxx / nn - mean * mean;
  if (var < 0.0) var = 0.0;
  const double d = hp.d0 + 0.5 * nn * var +
                   nn * hp.b0 * (mean - hp.a0) * (mean - hp.a0) / (2.0 * (hp.b0 + nn));
  const double cell_const =
      0.5 * std::log(hp.b0) - log_gamma(hp.c0) + hp.c0 * std::log(hp.d0);
  return log_gamma(hp.c0 + 0.5 * nn) - 0.5 * std::log(hp.b0 + nn) -
         (hp.c0 + 0.5 * nn) * std::log(d) + cell_const;
}

double icl_cell_noise(Variant variant, const Hyperparams& hp, long long n,
                      double sx, double sxx) {
  return variant == Variant::GaussianKnownVar
             ? icl_cell_noise_gaussian(hp, n, sx, sxx)
             : icl_cell_noise_nig(hp, n, sx, sxx);
}

double icl_sbm(const CountStats& stats, const Hyperparams& hp, int p, int q) {
  double c_part = log_gamma(q * hp.n0) - log_gamma(q * hp.n0 + p) - q * log_gamma(hp.n0);
  for (int a = 0; a < q; ++a) c_part += log_gamma(hp.n0 + stats.nodes[a]);
  double beta_part = 0.0;
  for (int a = 0; a < q; ++a)
    for (int b = a; b < q; ++b)
      beta_part += icl_cell_sbm(hp, stats.edges(a, b), stats.gaps(a, b));
  return c_part + beta_part;
}

namespace {

double noise_sum(const CountStats& stats, const Hyperparams& hp, Variant variant) {
  const double n_pairs = static_cast<double>(stats.pair_universe());
  double total = -0.5 * n_pairs * std::log(2.0 * M_PI) - 0.5 * stats.null_sq;
  for (int a = 0; a < stats.q; ++a)
    for (int b = a; b < stats.q; ++b)
      total += icl_cell_noise(variant, hp, stats.edges(a, b), stats.sum_x(a, b),
                              stats.sum_xx(a, b));
  return total;
}

}  // namespace

double icl_noise_gaussian(const CountStats& stats, const Hyperparams& hp) {
  return noise_sum(stats, hp, Variant::GaussianKnownVar);
}

double icl_noise_nig(const CountStats& stats, const Hyperparams& hp) {
  return noise_sum(stats, hp, Variant::NIG);
}

IclValue icl_total(Variant variant, const CountStats& stats, const Hyperparams& hp) {
  IclValue v;
  v.sbm_part = icl_sbm(stats, hp, stats.p, stats.q);
  v.noise_part = noise_sum(stats, hp, variant);
  v.total = v.sbm_part + v.noise_part;
  return v;
}

}  // namespace nsbm
