#include "nsbm/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nsbm/linalg.hpp"

namespace nsbm {

namespace {

Adjacency gen_sbm(const GraphSpec& spec, Rng& rng) {
  const int p = spec.p;
  const int q = spec.blocks;
  if (q < 1) throw std::invalid_argument("gen_graph: blocks must be >= 1");
  std::vector<double> conn = spec.connectivity;
  if (conn.empty()) {
    conn.assign(static_cast<std::size_t>(q) * q, spec.p_between);
    for (int a = 0; a < q; ++a) conn[static_cast<std::size_t>(a) * q + a] = spec.p_within;
  } else if (static_cast<int>(conn.size()) != q * q) {
    throw std::invalid_argument("gen_graph: connectivity matrix must be blocks^2");
  }
  // Equal-size blocks in node order; remainder goes to the last block.
  std::vector<int> z(p);
  const int size = std::max(1, p / q);
  for (int i = 0; i < p; ++i) z[i] = std::min(i / size, q - 1);

  Adjacency a(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      const double w = conn[static_cast<std::size_t>(z[i]) * q + z[j]];
      a.set(i, j, rng.uniform() < w);
    }
  return a;
}

Adjacency gen_hub(const GraphSpec& spec) {
  const int p = spec.p;
  const int group = spec.hub_group;
  if (group < 2) throw std::invalid_argument("gen_graph: hub_group must be >= 2");
  Adjacency a(p);
  for (int start = 0; start < p; start += group) {
    const int end = std::min(start + group, p);
    for (int j = start + 1; j < end; ++j) a.set(start, j, true);
  }
  return a;
}

Adjacency gen_band(const GraphSpec& spec) {
  const int p = spec.p;
  if (spec.band_width < 1) throw std::invalid_argument("gen_graph: band_width must be >= 1");
  Adjacency a(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p && j - i <= spec.band_width; ++j) a.set(i, j, true);
  return a;
}

Adjacency gen_scale_free(const GraphSpec& spec, Rng& rng) {
  const int p = spec.p;
  Adjacency a(p);
  std::vector<int> degree(p, 0);
  a.set(0, 1, true);
  degree[0] = degree[1] = 1;
  int total_degree = 2;
  for (int i = 2; i < p; ++i) {
    // Attach to one existing node with probability proportional to degree.
    double u = rng.uniform() * total_degree;
    int target = 0;
    for (int j = 0; j < i; ++j) {
      u -= degree[j];
      if (u < 0.0) {
        target = j;
        break;
      }
    }
    a.set(i, target, true);
    degree[i] = 1;
    degree[target] += 1;
    total_degree += 2;
  }
  return a;
}

int sample_power_law_degree(Rng& rng, int s) {
  // Discrete mass proportional to d^{-2} on {1..s}.
  double norm = 0.0;
  for (int d = 1; d <= s; ++d) norm += 1.0 / (static_cast<double>(d) * d);
  double u = rng.uniform() * norm;
  for (int d = 1; d <= s; ++d) {
    u -= 1.0 / (static_cast<double>(d) * d);
    if (u < 0.0) return d;
  }
  return s;
}

/// Havel-Hakimi realization with randomized tie ordering among the
/// highest-degree candidates (degrees assumed graphical).
Adjacency realize_degree_sequence(const std::vector<int>& degrees, Rng& rng) {
  const int p = static_cast<int>(degrees.size());
  Adjacency a(p);
  std::vector<std::pair<int, int>> remaining(p);  // (residual degree, node)
  for (int i = 0; i < p; ++i) remaining[i] = {degrees[i], i};

  while (true) {
    std::stable_sort(remaining.begin(), remaining.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    if (remaining.front().first == 0) break;
    // Randomize which maximal-degree node leads, for graph diversity.
    int ties = 1;
    while (ties < p && remaining[ties].first == remaining[0].first) ++ties;
    std::swap(remaining[0], remaining[rng.uniform_int(ties)]);
    const int v = remaining[0].second;
    const int d = remaining[0].first;
    remaining[0].first = 0;
    for (int k = 1, linked = 0; linked < d; ++k) {
      if (k >= p) throw std::runtime_error("degree sequence not realizable");
      if (remaining[k].first == 0) continue;
      a.set(v, remaining[k].second, true);
      remaining[k].first -= 1;
      ++linked;
    }
  }
  return a;
}

Adjacency gen_max_degree(const GraphSpec& spec, Rng& rng) {
  const int s = spec.max_degree;
  if (s < 1) throw std::invalid_argument("gen_graph: max_degree must be >= 1");
  const int retries = 100;
  for (int attempt = 0; attempt < retries; ++attempt) {
    std::vector<int> degrees(spec.p);
    for (int i = 0; i < spec.p; ++i) degrees[i] = sample_power_law_degree(rng, s);
    if (std::accumulate(degrees.begin(), degrees.end(), 0) % 2 != 0) continue;
    if (!is_graphical(degrees)) continue;
    return realize_degree_sequence(degrees, rng);
  }
  throw std::runtime_error("gen_graph: no graphical degree sequence after retries");
}

}  // namespace

bool is_graphical(std::vector<int> degrees) {
  std::sort(degrees.begin(), degrees.end(), std::greater<int>());
  const int n = static_cast<int>(degrees.size());
  if (n == 0) return true;
  if (degrees.front() >= n || degrees.back() < 0) return false;
  long long total = std::accumulate(degrees.begin(), degrees.end(), 0LL);
  if (total % 2 != 0) return false;
  long long lhs = 0;
  for (int k = 1; k <= n; ++k) {
    lhs += degrees[k - 1];
    long long rhs = static_cast<long long>(k) * (k - 1);
    for (int i = k; i < n; ++i) rhs += std::min(degrees[i], k);
    if (lhs > rhs) return false;
  }
  return true;
}

Adjacency gen_graph(const GraphSpec& spec) {
  if (spec.p < 2) throw std::invalid_argument("gen_graph: p must be >= 2");
  Rng rng(spec.seed);
  switch (spec.kind) {
    case GraphKind::SBM:
      return gen_sbm(spec, rng);
    case GraphKind::Hub:
      return gen_hub(spec);
    case GraphKind::Band:
      return gen_band(spec);
    case GraphKind::ScaleFree:
      return gen_scale_free(spec, rng);
    case GraphKind::MaxDegree:
      return gen_max_degree(spec, rng);
  }
  throw std::logic_error("gen_graph: unknown kind");
}

std::pair<SymMatrix, SymMatrix> precision_from_graph(const Adjacency& a,
                                                     const PrecisionSpec& spec) {
  if (spec.gamma <= 0.0 || spec.beta <= 0.0)
    throw std::invalid_argument("precision_from_graph: gamma and beta must be > 0");
  const int p = a.dim();
  SymMatrix scaled(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      if (a(i, j)) scaled.set(i, j, spec.gamma);

  const double diag = std::fabs(min_eig_sym(scaled)) + spec.beta;
  SymMatrix omega = scaled;
  for (int i = 0; i < p; ++i) omega.set(i, i, diag);
  SymMatrix sigma = invert_spd(omega);
  return {std::move(omega), std::move(sigma)};
}

DataSample sample_gaussian(const SymMatrix& sigma, int n, std::uint64_t seed) {
  const int p = sigma.dim();
  const Matrix l = cholesky(sigma);
  Rng rng(seed);
  DataSample out;
  out.n = n;
  out.p = p;
  out.y = Matrix(n, p);
  std::vector<double> z(p);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < p; ++j) z[j] = rng.normal();
    for (int i = 0; i < p; ++i) {
      double s = 0.0;
      for (int j = 0; j <= i; ++j) s += l(i, j) * z[j];
      out.y(k, i) = s;
    }
  }
  return out;
}

}  // namespace nsbm
