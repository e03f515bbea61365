#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nsbm/matrix.hpp"

namespace nsbm {

/// Indices rejected by a selection rule over a flat list of statistics.
/// threshold is the largest rejected statistic (alpha when nothing is).
struct Selection {
  std::vector<std::size_t> rejected;
  double threshold = 0.0;
  double alpha = 0.0;
};

/// l-value selection controlling the Bayes FDR: reject the k smallest
/// l-values where k is the largest tie-closed prefix whose mean l-value is
/// at most alpha (tied values never straddle the cut).
Selection lvalue_fdr_select(const std::vector<double>& lvalues, double alpha);

/// Benjamini-Hochberg step-up on p-values.
Selection bh_select(const std::vector<double>& pvalues, double alpha);

/// False/true discovery proportions of an estimated graph against the truth.
/// FDP uses the max(|rejections|, 1) guard; TDP is 0 when the truth is empty.
std::pair<double, double> fdp_tdp(const Adjacency& estimate, const Adjacency& truth);

/// Flatten the strict upper triangle in row-major (i < j) order.
std::vector<double> upper_triangle(const SymMatrix& m);

/// Inverse of upper_triangle for a selection: build the rejected-pair graph.
Adjacency selection_to_adjacency(int p, const Selection& sel);

}  // namespace nsbm
