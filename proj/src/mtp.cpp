#include "nsbm/mtp.hpp"

#include <algorithm>
#include <numeric>

namespace nsbm {

Selection lvalue_fdr_select(const std::vector<double>& lvalues, double alpha) {
  Selection sel;
  sel.alpha = alpha;
  sel.threshold = alpha;
  const std::size_t m = lvalues.size();
  if (m == 0) return sel;

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lvalues[a] < lvalues[b]; });

  std::size_t k = 0;
  double run = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    run += lvalues[order[i]];
    // Only prefixes that do not split a group of tied values are eligible.
    if (i + 1 < m && lvalues[order[i + 1]] == lvalues[order[i]]) continue;
    if (run <= alpha * static_cast<double>(i + 1)) k = i + 1;
  }
  if (k == 0) return sel;

  sel.rejected.assign(order.begin(), order.begin() + k);
  sel.threshold = lvalues[order[k - 1]];
  return sel;
}

Selection bh_select(const std::vector<double>& pvalues, double alpha) {
  Selection sel;
  sel.alpha = alpha;
  sel.threshold = 0.0;
  const std::size_t m = pvalues.size();
  if (m == 0) return sel;

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pvalues[a] < pvalues[b]; });

  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (pvalues[order[i]] * static_cast<double>(m) <=
        alpha * static_cast<double>(i + 1))
      k = i + 1;
  if (k == 0) return sel;

  sel.rejected.assign(order.begin(), order.begin() + k);
  sel.threshold = pvalues[order[k - 1]];
  return sel;
}

std::pair<double, double> fdp_tdp(const Adjacency& estimate, const Adjacency& truth) {
  const int p = truth.dim();
  long long rejected = 0, false_pos = 0, true_pos = 0, edges = 0;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      const bool hat = estimate(i, j);
      const bool real = truth(i, j);
      if (real) ++edges;
      if (hat) {
        ++rejected;
        if (real)
          ++true_pos;
        else
          ++false_pos;
      }
    }
  const double fdp = static_cast<double>(false_pos) /
                     static_cast<double>(std::max<long long>(rejected, 1));
  const double tdp =
      (edges == 0) ? 0.0 : static_cast<double>(true_pos) / static_cast<double>(edges);
  return {fdp, tdp};
}

std::vector<double> upper_triangle(const SymMatrix& m) {
  const int p = m.dim();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(p) * (p - 1) / 2);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) out.push_back(m(i, j));
  return out;
}

Adjacency selection_to_adjacency(int p, const Selection& sel) {
  Adjacency a(p);
  // Invert the row-major upper-triangle flattening.
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(p) * (p - 1) / 2);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) pairs.emplace_back(i, j);
  for (std::size_t idx : sel.rejected) a.set(pairs[idx].first, pairs[idx].second, true);
  return a;
}

}  // namespace nsbm
