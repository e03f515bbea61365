#include "nsbm/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsbm {

void CountStats::remove_block(int g) {
  nodes.erase(nodes.begin() + g);
  edges.remove_block(g);
  gaps.remove_block(g);
  pairs.remove_block(g);
  sum_x.remove_block(g);
  sum_xx.remove_block(g);
  --q;
}

void validate_state(const ObservationMatrix& x, const LatentState& state) {
  const int p = x.dim();
  if (state.p() != p || state.a.dim() != p)
    throw std::invalid_argument("state dimensions do not match observation matrix");
  for (int i = 0; i < p; ++i)
    if (state.z[i] < 0 || state.z[i] >= state.q)
      throw std::invalid_argument("block label out of range");
}

CountStats compute_count_stats(const ObservationMatrix& x, const LatentState& state) {
  validate_state(x, state);
  const int p = x.dim();
  const int q = state.q;

  CountStats s;
  s.p = p;
  s.q = q;
  s.nodes.assign(q, 0);
  s.edges = BlockMat<long long>(q);
  s.gaps = BlockMat<long long>(q);
  s.pairs = BlockMat<long long>(q);
  s.sum_x = BlockMat<double>(q);
  s.sum_xx = BlockMat<double>(q);

  for (int i = 0; i < p; ++i) s.nodes[state.z[i]]++;
  for (int a = 0; a < q; ++a)
    for (int b = a; b < q; ++b) {
      long long m = (a == b)
                        ? static_cast<long long>(s.nodes[a]) * (s.nodes[a] - 1) / 2
                        : static_cast<long long>(s.nodes[a]) * s.nodes[b];
      s.pairs.set_sym(a, b, m);
    }

  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      const double v = x(i, j);
      if (state.a(i, j)) {
        const int a = std::min(state.z[i], state.z[j]);
        const int b = std::max(state.z[i], state.z[j]);
        s.edges.add_sym(a, b, 1);
        s.sum_x.add_sym(a, b, v);
        s.sum_xx.add_sym(a, b, v * v);
        ++s.edge_total;
      } else {
        s.null_sq += v * v;
      }
    }

  for (int a = 0; a < q; ++a)
    for (int b = a; b < q; ++b)
      s.gaps.set_sym(a, b, s.pairs(a, b) - s.edges(a, b));
  return s;
}

PairMoments variance_of_pair(const CountStats& stats, int q, int l) {
  PairMoments m;
  m.n = stats.edges(q, l);
  if (m.n == 0) return m;
  m.mean = stats.sum_x(q, l) / static_cast<double>(m.n);
  m.var = stats.sum_xx(q, l) / static_cast<double>(m.n) - m.mean * m.mean;
  if (m.var < 0.0) m.var = 0.0;  // clamp rounding noise on constant samples
  return m;
}

namespace {

// Index of cell (min(a,b), max(a,b)) in the S_{g,h} layout: the g row first
// ((g,l) for l = 0..q-1), then the h row without (h,g).
struct CellIndex {
  int q, g, h;
  int operator()(int a, int b) const {
    if (a == g || b == g) return a == g ? b : a;
    int l = (a == h) ? b : a;
    return q + (l < g ? l : l - 1);
  }
};

std::vector<CellDelta> init_affected_cells(const CountStats& stats, int g, int h) {
  const int q = stats.q;
  std::vector<CellDelta> cells;
  cells.reserve(2 * q - 1);
  auto push = [&](int a, int b) {
    CellDelta c;
    c.a = std::min(a, b);
    c.b = std::max(a, b);
    c.n1_old = c.n1_new = stats.edges(a, b);
    c.m_old = c.m_new = stats.pairs(a, b);
    c.sx_old = c.sx_new = stats.sum_x(a, b);
    c.sxx_old = c.sxx_new = stats.sum_xx(a, b);
    cells.push_back(c);
  };
  for (int l = 0; l < q; ++l) push(g, l);
  for (int l = 0; l < q; ++l)
    if (l != g) push(h, l);
  return cells;
}

}  // namespace

std::vector<CellDelta> swap_cell_deltas(const CountStats& stats,
                                        const SwapContext& ctx,
                                        const ObservationMatrix& x,
                                        const std::vector<int>& z) {
  const int q = stats.q;
  const int g = ctx.g, h = ctx.h;
  const int istar = ctx.istar;
  std::vector<CellDelta> cells = init_affected_cells(stats, g, h);
  CellIndex at{q, g, h};

  // Edges of the old row leave the (g, l) cells; edges of the new row enter
  // the (h, l) cells.
  for (int j = 0; j < stats.p; ++j) {
    if (j == istar) continue;
    const double v = x(istar, j);
    if (ctx.old_row[j]) {
      CellDelta& c = cells[at(g, z[j])];
      c.n1_new -= 1;
      c.sx_new -= v;
      c.sxx_new -= v * v;
    }
    if (ctx.new_row[j]) {
      CellDelta& c = cells[at(h, z[j])];
      c.n1_new += 1;
      c.sx_new += v;
      c.sxx_new += v * v;
    }
  }

  // Possible-pair counts after moving one node out of g into h.
  const long long ng = stats.nodes[g];
  const long long nh = stats.nodes[h];
  for (CellDelta& c : cells) {
    const bool has_g = (c.a == g || c.b == g);
    const bool has_h = (c.a == h || c.b == h);
    if (has_g && has_h) {
      c.m_new = c.m_old - nh + ng - 1;
    } else if (c.a == g && c.b == g) {
      c.m_new = c.m_old - ng + 1;
    } else if (c.a == h && c.b == h) {
      c.m_new = c.m_old + nh;
    } else if (has_g) {
      const long long nl = stats.nodes[c.a == g ? c.b : c.a];
      c.m_new = c.m_old - nl;
    } else {
      const long long nl = stats.nodes[c.a == h ? c.b : c.a];
      c.m_new = c.m_old + nl;
    }
    if (ng == 1 && has_g) c.dies = true;
  }
  return cells;
}

CountStats apply_swap(const CountStats& stats, const SwapContext& ctx,
                      const ObservationMatrix& x, const std::vector<int>& z) {
  if (ctx.g == ctx.h) return stats;
  CountStats out = stats;
  const std::vector<CellDelta> cells = swap_cell_deltas(stats, ctx, x, z);
  for (const CellDelta& c : cells) {
    out.edges.set_sym(c.a, c.b, c.n1_new);
    out.pairs.set_sym(c.a, c.b, c.m_new);
    out.gaps.set_sym(c.a, c.b, c.m_new - c.n1_new);
    out.sum_x.set_sym(c.a, c.b, c.sx_new);
    out.sum_xx.set_sym(c.a, c.b, c.sxx_new);
    out.edge_total += c.n1_new - c.n1_old;
  }
  out.nodes[ctx.g] -= 1;
  out.nodes[ctx.h] += 1;
  out.null_sq += swap_null_sq_delta(ctx, x);
  return out;
}

double swap_null_sq_delta(const SwapContext& ctx, const ObservationMatrix& x) {
  double d = 0.0;
  const int p = x.dim();
  for (int j = 0; j < p; ++j) {
    if (j == ctx.istar) continue;
    if (ctx.old_row[j] != ctx.new_row[j]) {
      const double v = x(ctx.istar, j);
      d += (ctx.old_row[j] ? 1.0 : -1.0) * v * v;
    }
  }
  return d;
}

std::vector<CellDelta> merge_cell_deltas(const CountStats& stats, int g, int h,
                                         const Adjacency& a_merge,
                                         const ObservationMatrix& x,
                                         const std::vector<int>& z) {
  if (g == h) throw std::invalid_argument("merge requires g != h");
  const int q = stats.q;
  const int p = stats.p;
  std::vector<CellDelta> cells = init_affected_cells(stats, g, h);
  CellIndex at{q, g, h};

  // All (g,.) cells empty out. The (h,l) cells cannot be updated
  // incrementally because a_merge rewrites every pair of V_merge, so they
  // are rebuilt from scratch below.
  for (CellDelta& c : cells) {
    if (c.a == g || c.b == g) c.dies = true;
    c.n1_new = 0;
    c.m_new = 0;
    c.sx_new = 0.0;
    c.sxx_new = 0.0;
  }

  for (CellDelta& c : cells) {
    if (c.dies) continue;
    if (c.a == h && c.b == h) {
      c.m_new = stats.pairs(h, h) + stats.pairs(g, g) + stats.pairs(g, h);
    } else {
      const int l = (c.a == h) ? c.b : c.a;
      c.m_new = stats.pairs(h, l) + stats.pairs(g, l);
    }
  }

  for (int i = 0; i < p; ++i) {
    if (z[i] != g && z[i] != h) continue;
    for (int j = 0; j < p; ++j) {
      if (j == i || (j < i && (z[j] == g || z[j] == h))) continue;  // pair once
      if (!a_merge(i, j)) continue;
      const int lj = (z[j] == g) ? h : z[j];
      CellDelta& c = cells[at(h, lj)];
      c.n1_new += 1;
      const double v = x(i, j);
      c.sx_new += v;
      c.sxx_new += v * v;
    }
  }
  return cells;
}

CountStats apply_merge(const CountStats& stats, int g, int h,
                       const Adjacency& a_merge, const ObservationMatrix& x,
                       const std::vector<int>& z) {
  std::vector<CellDelta> cells = merge_cell_deltas(stats, g, h, a_merge, x, z);
  CountStats out = stats;
  double sxx_shift = 0.0;
  for (const CellDelta& c : cells) {
    out.edges.set_sym(c.a, c.b, c.n1_new);
    out.pairs.set_sym(c.a, c.b, c.m_new);
    out.gaps.set_sym(c.a, c.b, c.m_new - c.n1_new);
    out.sum_x.set_sym(c.a, c.b, c.sx_new);
    out.sum_xx.set_sym(c.a, c.b, c.sxx_new);
    out.edge_total += c.n1_new - c.n1_old;
    sxx_shift += c.sxx_new - c.sxx_old;
  }
  out.nodes[h] += out.nodes[g];
  out.nodes[g] = 0;
  // Total sum of X^2 over all pairs is invariant, so whatever left the
  // present-edge cells moved into the null sum.
  out.null_sq -= sxx_shift;
  return out;
}

double merge_null_sq_delta(int g, int h, const Adjacency& a,
                           const Adjacency& a_merge, const ObservationMatrix& x,
                           const std::vector<int>& z) {
  const int p = a.dim();
  double d = 0.0;
  for (int i = 0; i < p; ++i) {
    if (z[i] != g && z[i] != h) continue;
    for (int j = 0; j < p; ++j) {
      if (j == i || (j < i && (z[j] == g || z[j] == h))) continue;
      const bool before = a(i, j);
      const bool after = a_merge(i, j);
      if (before != after) {
        const double v = x(i, j);
        d += (before ? 1.0 : -1.0) * v * v;
      }
    }
  }
  return d;
}

}  // namespace nsbm
