#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nsbm/mtp.hpp"
#include "nsbm/rng.hpp"
#include "oracles.hpp"

using namespace nsbm;

namespace {

/// Brute-force l-value rule: try every tie-closed prefix of the sorted
/// values and keep the largest whose mean is within alpha.
std::size_t brute_lvalue_k(std::vector<double> lv, double alpha) {
  std::sort(lv.begin(), lv.end());
  std::size_t best = 0;
  for (std::size_t k = 1; k <= lv.size(); ++k) {
    if (k < lv.size() && lv[k] == lv[k - 1]) continue;
    double mean = 0.0;
    for (std::size_t i = 0; i < k; ++i) mean += lv[i];
    mean /= static_cast<double>(k);
    if (mean <= alpha) best = k;
  }
  return best;
}

std::size_t brute_bh_k(std::vector<double> pv, double alpha) {
  std::sort(pv.begin(), pv.end());
  std::size_t best = 0;
  for (std::size_t k = 1; k <= pv.size(); ++k)
    if (pv[k - 1] <= alpha * static_cast<double>(k) / static_cast<double>(pv.size()))
      best = k;
  return best;
}

}  // namespace

TEST_CASE("lvalue_fdr_select worked example") {
  const Selection sel = lvalue_fdr_select({0.01, 0.02, 0.5}, 0.1);
  CHECK(sel.rejected.size() == 2);
  CHECK(sel.threshold == doctest::Approx(0.02));
  CHECK(std::count(sel.rejected.begin(), sel.rejected.end(), 0u) == 1);
  CHECK(std::count(sel.rejected.begin(), sel.rejected.end(), 1u) == 1);
}

TEST_CASE("lvalue_fdr_select edge cases") {
  SUBCASE("first prefix already fails") {
    const Selection sel = lvalue_fdr_select({0.3, 0.4, 0.9}, 0.1);
    CHECK(sel.rejected.empty());
  }
  SUBCASE("all zeros are rejected") {
    const Selection sel = lvalue_fdr_select({0.0, 0.0, 0.0, 0.0}, 0.05);
    CHECK(sel.rejected.size() == 4);
  }
  SUBCASE("empty input") {
    const Selection sel = lvalue_fdr_select({}, 0.1);
    CHECK(sel.rejected.empty());
  }
  SUBCASE("tied boundary values move together") {
    // Prefix of size 2 passes; the prefix through the tie group at 0.2 has
    // mean 0.1125 > alpha, so the whole group stays out.
    const Selection sel = lvalue_fdr_select({0.0, 0.05, 0.2, 0.2, 0.9}, 0.1);
    CHECK(sel.rejected.size() == 2);
    // Whereas a tie group whose inclusive prefix passes comes in whole.
    const Selection in = lvalue_fdr_select({0.0, 0.05, 0.15, 0.15, 0.9}, 0.1);
    CHECK(in.rejected.size() == 4);
  }
}

TEST_CASE("lvalue_fdr_select against brute force on random inputs") {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + rng.uniform_int(40);
    std::vector<double> lv(m);
    for (double& v : lv) {
      v = rng.uniform();
      if (rng.uniform() < 0.3) v = std::round(v * 4.0) / 4.0;  // force ties
    }
    const double alpha = 0.02 + 0.5 * rng.uniform();
    const Selection sel = lvalue_fdr_select(lv, alpha);
    CHECK(sel.rejected.size() == brute_lvalue_k(lv, alpha));

    if (!sel.rejected.empty()) {
      double mean = 0.0;
      for (std::size_t idx : sel.rejected) mean += lv[idx];
      CHECK(mean / sel.rejected.size() <= alpha + 1e-12);
      for (std::size_t idx : sel.rejected) CHECK(lv[idx] <= sel.threshold);
    }
  }
}

TEST_CASE("bh_select worked example") {
  const Selection sel = bh_select({0.001, 0.02, 0.9}, 0.05);
  CHECK(sel.rejected.size() == 2);
}

TEST_CASE("bh_select edge cases and brute force") {
  CHECK(bh_select({1.0, 1.0, 1.0}, 0.05).rejected.empty());
  CHECK(bh_select({0.0, 0.0}, 0.05).rejected.size() == 2);
  CHECK(bh_select({}, 0.05).rejected.empty());

  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + rng.uniform_int(40);
    std::vector<double> pv(m);
    for (double& v : pv) v = rng.uniform();
    const double alpha = 0.02 + 0.4 * rng.uniform();
    CHECK(bh_select(pv, alpha).rejected.size() == brute_bh_k(pv, alpha));
  }
}

TEST_CASE("selectors are monotone in alpha") {
  Rng rng(12);
  std::vector<double> stats(60);
  for (double& v : stats) v = rng.uniform();
  std::vector<std::size_t> prev_l, prev_b;
  for (double alpha = 0.01; alpha < 0.9; alpha += 0.05) {
    auto as_set = [](std::vector<std::size_t> v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    const auto cur_l = as_set(lvalue_fdr_select(stats, alpha).rejected);
    const auto cur_b = as_set(bh_select(stats, alpha).rejected);
    CHECK(std::includes(cur_l.begin(), cur_l.end(), prev_l.begin(), prev_l.end()));
    CHECK(std::includes(cur_b.begin(), cur_b.end(), prev_b.begin(), prev_b.end()));
    prev_l = cur_l;
    prev_b = cur_b;
  }
}

TEST_CASE("selection depends only on values, not order") {
  Rng rng(3);
  std::vector<double> stats(25);
  for (double& v : stats) v = rng.uniform() * 0.4;
  std::vector<double> shuffled = stats;
  std::reverse(shuffled.begin(), shuffled.end());
  CHECK(lvalue_fdr_select(stats, 0.2).rejected.size() ==
        lvalue_fdr_select(shuffled, 0.2).rejected.size());
  CHECK(bh_select(stats, 0.2).rejected.size() ==
        bh_select(shuffled, 0.2).rejected.size());
}

TEST_CASE("fdp_tdp counts") {
  Adjacency truth(4);
  truth.set(0, 1, true);
  truth.set(0, 2, true);
  truth.set(1, 2, true);
  truth.set(2, 3, true);

  SUBCASE("rejecting exactly the truth") {
    const auto [fdp, tdp] = fdp_tdp(truth, truth);
    CHECK(fdp == 0.0);
    CHECK(tdp == 1.0);
  }
  SUBCASE("rejecting nothing uses the guard") {
    Adjacency none(4);
    const auto [fdp, tdp] = fdp_tdp(none, truth);
    CHECK(fdp == 0.0);
    CHECK(tdp == 0.0);
  }
  SUBCASE("two right and two wrong out of four true edges") {
    Adjacency est(4);
    est.set(0, 1, true);
    est.set(0, 2, true);
    est.set(0, 3, true);   // false
    est.set(1, 3, true);   // false
    const auto [fdp, tdp] = fdp_tdp(est, truth);
    CHECK(fdp == doctest::Approx(0.5));
    CHECK(tdp == doctest::Approx(0.5));
  }
  SUBCASE("empty truth yields zero TDP by convention") {
    Adjacency none(4);
    Adjacency est(4);
    est.set(0, 1, true);
    const auto [fdp, tdp] = fdp_tdp(est, none);
    CHECK(fdp == 1.0);
    CHECK(tdp == 0.0);
  }
}

TEST_CASE("upper_triangle and selection_to_adjacency round trip") {
  Rng rng(5);
  SymMatrix m(6);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) m.set(i, j, rng.uniform());
  const std::vector<double> flat = upper_triangle(m);
  CHECK(flat.size() == 15);

  Selection sel;
  sel.rejected = {0, 4, 14};
  const Adjacency a = selection_to_adjacency(6, sel);
  CHECK(a(0, 1));      // index 0
  CHECK(a(0, 5));      // index 4
  CHECK(a(4, 5));      // index 14
  CHECK(a.edge_count() == 3);
}
