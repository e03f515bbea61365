#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nsbm/ggm_stats.hpp"
#include "nsbm/matrix.hpp"
#include "nsbm/rng.hpp"

namespace nsbm {

enum class GraphKind { SBM, Hub, Band, ScaleFree, MaxDegree };

struct GraphSpec {
  GraphKind kind = GraphKind::SBM;
  int p = 2;
  std::uint64_t seed = 1;
  // SBM: equal-size blocks with the given connectivity. A full Q x Q
  // connectivity matrix may be supplied; otherwise within/between fill it.
  int blocks = 5;
  double p_within = 0.25;
  double p_between = 0.02;
  std::vector<double> connectivity;  // optional row-major blocks x blocks
  // Hub: consecutive groups, first node of each group connected to the rest.
  int hub_group = 10;
  // Band: edges between nodes at distance 1..band_width.
  int band_width = 3;
  // MaxDegree: power-law(2) degree sequence truncated at max_degree.
  int max_degree = 3;
};

struct PrecisionSpec {
  double gamma = 0.3;
  double beta = 0.2;
};

Adjacency gen_graph(const GraphSpec& spec);

/// Omega = gamma*A + (|min eig(gamma*A)| + beta) I and Sigma = Omega^{-1}.
std::pair<SymMatrix, SymMatrix> precision_from_graph(const Adjacency& a,
                                                     const PrecisionSpec& spec);

/// n i.i.d. N(0, Sigma) rows via the Cholesky factor; deterministic per seed.
DataSample sample_gaussian(const SymMatrix& sigma, int n, std::uint64_t seed);

/// True if the non-increasing degree sequence is realizable (Erdos-Gallai).
bool is_graphical(std::vector<int> degrees);

}  // namespace nsbm
