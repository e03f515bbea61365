// Timing comparison of the OpenMP kernels against their serial reference
// paths. Run with NSBM_THREADS=<k> to pin the worker count.

#include <chrono>
#include <cstdio>
#include <functional>

#include "nsbm/datagen.hpp"
#include "nsbm/ggm_stats.hpp"
#include "nsbm/merge.hpp"
#include "nsbm/pipeline.hpp"
#include "nsbm/threading.hpp"

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  fn();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("nsbm kernel benchmark, %d worker threads\n", nsbm::thread_count());

  // Gram kernel on an n x p sample.
  {
    const nsbm::SymMatrix sigma(200, 0.0);
    nsbm::SymMatrix id(200);
    for (int i = 0; i < 200; ++i) id.set(i, i, 1.0);
    const nsbm::DataSample y = nsbm::sample_gaussian(id, 400, 7);
    report("sample_covariance p=200",
           time_ms([&] { nsbm::sample_covariance(y, false); }, 5),
           time_ms([&] { nsbm::sample_covariance(y, true); }, 5));
  }

  // SPD inverse, column solves.
  {
    nsbm::GraphSpec spec;
    spec.kind = nsbm::GraphKind::Band;
    spec.p = 300;
    const nsbm::Adjacency a = nsbm::gen_graph(spec);
    const auto [omega, sigma] = nsbm::precision_from_graph(a, nsbm::PrecisionSpec{});
    report("invert_spd p=300",
           time_ms([&] { nsbm::invert_spd(omega, false); }, 3),
           time_ms([&] { nsbm::invert_spd(omega, true); }, 3));
  }

  // Nodewise Lasso statistic, one regression per column.
  {
    nsbm::GraphSpec spec;
    spec.kind = nsbm::GraphKind::MaxDegree;
    spec.p = 80;
    spec.max_degree = 5;
    spec.seed = 3;
    const nsbm::Adjacency a = nsbm::gen_graph(spec);
    const auto [omega, sigma] = nsbm::precision_from_graph(a, nsbm::PrecisionSpec{});
    const nsbm::DataSample y = nsbm::sample_gaussian(sigma, 80, 11);
    report("nodewise_residual_stats p=80",
           time_ms([&] { nsbm::nodewise_residual_stats(y, -1.0, false); }, 3),
           time_ms([&] { nsbm::nodewise_residual_stats(y, -1.0, true); }, 3));
  }

  // Replicated simulation pool.
  {
    nsbm::ExperimentConfig cfg;
    cfg.graph.p = 40;
    cfg.n = 80;
    cfg.replicates = 16;
    cfg.alpha = 0.1;
    report("run_simulation 16 reps",
           time_ms([&] { nsbm::run_simulation(cfg, false); }, 1),
           time_ms([&] { nsbm::run_simulation(cfg, true); }, 1));
  }

  // Merge-candidate scoring round.
  {
    nsbm::GraphSpec spec;
    spec.p = 120;
    spec.seed = 5;
    const nsbm::Adjacency truth = nsbm::gen_graph(spec);
    const auto [omega, sigma] = nsbm::precision_from_graph(truth, nsbm::PrecisionSpec{});
    const nsbm::DataSample y = nsbm::sample_gaussian(sigma, 240, 13);
    const nsbm::ObservationMatrix x = nsbm::ztransform_stats(y);
    nsbm::GreedyConfig gcfg;
    gcfg.q_init = 12;
    gcfg.max_sweeps = 3;
    nsbm::Hyperparams hp;
    auto fit = nsbm::greedy_fit(x, gcfg, hp).first;
    report("merge_pass p=120",
           time_ms(
               [&] {
                 auto state = fit.state;
                 auto params = fit.params;
                 auto rho = fit.rho;
                 nsbm::merge_pass(x, state, params, rho, hp, gcfg.variant, false);
               },
               3),
           time_ms(
               [&] {
                 auto state = fit.state;
                 auto params = fit.params;
                 auto rho = fit.rho;
                 nsbm::merge_pass(x, state, params, rho, hp, gcfg.variant, true);
               },
               3));
  }

  return 0;
}
