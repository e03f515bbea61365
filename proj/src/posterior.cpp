#include "nsbm/posterior.hpp"

#include <algorithm>
#include <cmath>

namespace nsbm {

void ModelParams::remove_block(int g) {
  pi.erase(pi.begin() + g);
  w.remove_block(g);
  mu.remove_block(g);
  sigma_sq.remove_block(g);
  --q;
}

namespace {

struct CellAccum {
  double m = 0.0;        // number of pairs in the cell
  double wsum = 0.0;     // sum of rho
  double wx = 0.0;       // sum of rho * X
  double wxx = 0.0;      // sum of rho * X^2
};

void fill_cell(ModelParams& params, const CellAccum& acc, const Hyperparams& hp,
               Variant variant, int a, int b) {
  double w = (acc.m > 0.0) ? acc.wsum / acc.m : kWeightClip;
  double mu, s2;
  if (acc.wsum > 0.0) {
    mu = acc.wx / acc.wsum;
    s2 = acc.wxx / acc.wsum - mu * mu;
  } else {
    mu = hp.rho0;
    s2 = 1.0;
  }
  w = std::clamp(w, kWeightClip, 1.0 - kWeightClip);
  if (variant == Variant::GaussianKnownVar)
    s2 = hp.sigma_sq;
  else
    s2 = std::max(s2, kVarFloor);
  params.w.set_sym(a, b, w);
  params.mu.set_sym(a, b, mu);
  params.sigma_sq.set_sym(a, b, s2);
}

}  // namespace

ModelParams estimate_params(const ObservationMatrix& x, const LatentState& state,
                            const SymMatrix& rho, const Hyperparams& hp,
                            Variant variant) {
  const int p = state.p();
  const int q = state.q;
  ModelParams params;
  params.q = q;
  params.pi.assign(q, 0.0);
  params.w = BlockMat<double>(q);
  params.mu = BlockMat<double>(q);
  params.sigma_sq = BlockMat<double>(q);

  for (int i = 0; i < p; ++i) params.pi[state.z[i]] += 1.0 / p;

  std::vector<CellAccum> acc(static_cast<std::size_t>(q) * q);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      const int a = std::min(state.z[i], state.z[j]);
      const int b = std::max(state.z[i], state.z[j]);
      CellAccum& c = acc[static_cast<std::size_t>(a) * q + b];
      const double r = rho(i, j);
      const double v = x(i, j);
      c.m += 1.0;
      c.wsum += r;
      c.wx += r * v;
      c.wxx += r * v * v;
    }

  for (int a = 0; a < q; ++a)
    for (int b = a; b < q; ++b)
      fill_cell(params, acc[static_cast<std::size_t>(a) * q + b], hp, variant, a, b);
  return params;
}

void refresh_params_for_blocks(ModelParams& params, const ObservationMatrix& x,
                               const LatentState& state, const SymMatrix& rho,
                               const Hyperparams& hp, Variant variant, int g, int h) {
  const int p = state.p();
  const int q = state.q;
  std::vector<CellAccum> acc(static_cast<std::size_t>(q) * q);
  for (int i = 0; i < p; ++i) {
    const bool i_in = (state.z[i] == g || state.z[i] == h);
    for (int j = i + 1; j < p; ++j) {
      if (!i_in && state.z[j] != g && state.z[j] != h) continue;
      const int a = std::min(state.z[i], state.z[j]);
      const int b = std::max(state.z[i], state.z[j]);
      CellAccum& c = acc[static_cast<std::size_t>(a) * q + b];
      const double r = rho(i, j);
      const double v = x(i, j);
      c.m += 1.0;
      c.wsum += r;
      c.wx += r * v;
      c.wxx += r * v * v;
    }
  }
  for (int a = 0; a < q; ++a)
    for (int b = a; b < q; ++b) {
      if (a != g && a != h && b != g && b != h) continue;
      fill_cell(params, acc[static_cast<std::size_t>(a) * q + b], hp, variant, a, b);
    }
}

double lvalue(double x, double w, double mu, double sigma_sq) {
  // log f1 - log f0 with f0 = N(0,1), f1 = N(mu, s2); evaluated through a
  // sigmoid so extreme statistics cannot underflow both densities.
  const double log_ratio = -0.5 * ((x - mu) * (x - mu) / sigma_sq - x * x) -
                           0.5 * std::log(sigma_sq);
  const double t = std::log(w) - std::log1p(-w) + log_ratio;
  return 1.0 / (1.0 + std::exp(t));
}

double edge_posterior(double x, double w, double mu, double sigma_sq) {
  const double log_ratio = -0.5 * ((x - mu) * (x - mu) / sigma_sq - x * x) -
                           0.5 * std::log(sigma_sq);
  const double t = std::log(w) - std::log1p(-w) + log_ratio;
  return 1.0 / (1.0 + std::exp(-t));
}

SymMatrix lvalue_matrix(const ObservationMatrix& x, const std::vector<int>& z,
                        const ModelParams& params) {
  const int p = x.dim();
  SymMatrix out(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      const int a = z[i], b = z[j];
      out.set(i, j, lvalue(x(i, j), params.w(a, b), params.mu(a, b),
                           params.sigma_sq(a, b)));
    }
  return out;
}

SymMatrix posterior_matrix(const ObservationMatrix& x, const std::vector<int>& z,
                           const ModelParams& params) {
  const int p = x.dim();
  SymMatrix out(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      const int a = z[i], b = z[j];
      out.set(i, j, edge_posterior(x(i, j), params.w(a, b), params.mu(a, b),
                                   params.sigma_sq(a, b)));
    }
  return out;
}

Adjacency threshold_graph(const SymMatrix& rho, double t) {
  const int p = rho.dim();
  Adjacency a(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) a.set(i, j, rho(i, j) > t);
  return a;
}

}  // namespace nsbm
