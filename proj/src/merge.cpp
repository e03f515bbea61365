#include "nsbm/merge.hpp"

#include <cmath>
#include <stdexcept>

#include "nsbm/threading.hpp"

namespace nsbm {

namespace {

void relabel_after_removal(std::vector<int>& z, int g) {
  for (int& zi : z)
    if (zi > g) --zi;
}

double cells_delta_total(const std::vector<CellDelta>& cells, const Hyperparams& hp,
                         Variant variant) {
  double d = 0.0;
  for (const CellDelta& c : cells) {
    d -= icl_cell_sbm(hp, c.n1_old, c.m_old - c.n1_old);
    d -= icl_cell_noise(variant, hp, c.n1_old, c.sx_old, c.sxx_old);
    if (!c.dies) {
      d += icl_cell_sbm(hp, c.n1_new, c.m_new - c.n1_new);
      d += icl_cell_noise(variant, hp, c.n1_new, c.sx_new, c.sxx_new);
    }
  }
  return d;
}

}  // namespace

MergeProposal build_merge_proposal(int g, int h, const ObservationMatrix& x,
                                   const LatentState& state, const SymMatrix& rho,
                                   const Hyperparams& hp, Variant variant) {
  if (g == h) throw std::invalid_argument("merge requires g != h");
  const int p = state.p();

  // Parameter estimates under the merged clustering; only the (h, .) cells
  // are consumed below.
  LatentState merged = state;
  for (int i = 0; i < p; ++i)
    if (merged.z[i] == g) merged.z[i] = h;
  ModelParams params_merge =
      estimate_params(x, merged, rho, hp, variant);

  MergeProposal prop;
  prop.g = g;
  prop.h = h;
  prop.a_merge = state.a;
  for (int i = 0; i < p; ++i) {
    const bool i_in = (state.z[i] == g || state.z[i] == h);
    for (int j = i + 1; j < p; ++j) {
      if (!i_in && state.z[j] != g && state.z[j] != h) continue;
      const int a = merged.z[i], b = merged.z[j];
      const double r = edge_posterior(x(i, j), params_merge.w(a, b),
                                      params_merge.mu(a, b),
                                      params_merge.sigma_sq(a, b));
      prop.a_merge.set(i, j, r > 0.5);
    }
  }
  return prop;
}

double delta_merge(const CountStats& stats, const MergeProposal& proposal,
                   const ObservationMatrix& x, const LatentState& state,
                   const Hyperparams& hp, Variant variant) {
  const int g = proposal.g, h = proposal.h;
  const std::vector<CellDelta> cells =
      merge_cell_deltas(stats, g, h, proposal.a_merge, x, state.z);

  const double Q = stats.q;
  const double p = stats.p;
  const double ng = stats.nodes[g];
  const double nh = stats.nodes[h];
  double dsbm = log_gamma(hp.n0 + nh + ng) - log_gamma(hp.n0 + ng) -
                log_gamma(hp.n0 + nh) + log_gamma(hp.n0) +
                log_gamma(Q * hp.n0 + p) - log_gamma((Q - 1.0) * hp.n0 + p) +
                log_gamma((Q - 1.0) * hp.n0) - log_gamma(Q * hp.n0);

  const double dnull =
      -0.5 * merge_null_sq_delta(g, h, state.a, proposal.a_merge, x, state.z);
  return dsbm + cells_delta_total(cells, hp, variant) + dnull;
}

double delta_merge_gaussian(const CountStats& stats, const MergeProposal& proposal,
                            const ObservationMatrix& x, const LatentState& state,
                            const Hyperparams& hp) {
  return delta_merge(stats, proposal, x, state, hp, Variant::GaussianKnownVar);
}

double delta_merge_nig(const CountStats& stats, const MergeProposal& proposal,
                       const ObservationMatrix& x, const LatentState& state,
                       const Hyperparams& hp) {
  return delta_merge(stats, proposal, x, state, hp, Variant::NIG);
}

FitTrace merge_pass(const ObservationMatrix& x, LatentState& state,
                    ModelParams& params, SymMatrix& rho, const Hyperparams& hp,
                    Variant variant, bool parallel) {
  FitTrace trace;
  trace.final_q = state.q;
  CountStats stats = compute_count_stats(x, state);
  double icl_running = icl_total(variant, stats, hp).total;

  while (state.q > 1) {
    const int q = state.q;
    std::vector<std::pair<int, int>> cand;
    cand.reserve(q * (q - 1) / 2);
    for (int g = 0; g < q; ++g)
      for (int h = g + 1; h < q; ++h) cand.emplace_back(g, h);

    std::vector<MergeProposal> props(cand.size());
    std::vector<double> deltas(cand.size());
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic) \
    if (parallel && cand.size() > 1)
    for (std::size_t k = 0; k < cand.size(); ++k) {
      props[k] = build_merge_proposal(cand[k].first, cand[k].second, x, state, rho,
                                      hp, variant);
      deltas[k] = delta_merge(stats, props[k], x, state, hp, variant);
    }

    int best = -1;
    for (std::size_t k = 0; k < cand.size(); ++k)
      if (deltas[k] > 0.0 && (best < 0 || deltas[k] > deltas[best]))
        best = static_cast<int>(k);
    if (best < 0) break;

    const MergeProposal& prop = props[best];
    stats = apply_merge(stats, prop.g, prop.h, prop.a_merge, x, state.z);
    state.a = prop.a_merge;
    for (int i = 0; i < state.p(); ++i)
      if (state.z[i] == prop.g) state.z[i] = prop.h;
    stats.remove_block(prop.g);
    relabel_after_removal(state.z, prop.g);
    state.q -= 1;

    params = estimate_params(x, state, rho, hp, variant);
    rho = posterior_matrix(x, state.z, params);
    const double flip_gain = ascend_rethreshold(x, state, stats, rho, hp, variant);

    icl_running += deltas[best] + flip_gain;
    trace.icl_per_accepted_move.push_back(icl_running);
  }

  trace.final_q = state.q;
  return trace;
}

}  // namespace nsbm
