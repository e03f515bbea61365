#include "nsbm/pipeline.hpp"

#include <chrono>
#include <fstream>

#include "nsbm/csv.hpp"
#include "nsbm/threading.hpp"

namespace nsbm {

InferenceResult infer_graph(const ObservationMatrix& x, double alpha,
                            const GreedyConfig& greedy, const Hyperparams& hp,
                            bool parallel) {
  InferenceResult out;
  auto [fit, trace] = greedy_fit(x, greedy, hp);
  out.fit = std::move(fit);
  merge_pass(x, out.fit.state, out.fit.params, out.fit.rho, hp, greedy.variant,
             parallel);
  out.fit.rho = posterior_matrix(x, out.fit.state.z, out.fit.params);
  out.fit.lvalues = lvalue_matrix(x, out.fit.state.z, out.fit.params);
  const CountStats stats = compute_count_stats(x, out.fit.state);
  out.fit.icl = icl_total(greedy.variant, stats, hp);

  out.selection = lvalue_fdr_select(upper_triangle(out.fit.lvalues), alpha);
  out.graph = selection_to_adjacency(x.dim(), out.selection);
  return out;
}

ObservationMatrix compute_statistic(const DataSample& y, Statistic statistic,
                                    double lambda) {
  return statistic == Statistic::ZTransform
             ? ztransform_stats(y)
             : nodewise_residual_stats(y, lambda, /*parallel=*/false);
}

namespace {

std::vector<ReplicateRow> run_one_replicate(const ExperimentConfig& cfg, int rep) {
  const std::uint64_t rep_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(rep));

  GraphSpec gspec = cfg.graph;
  gspec.seed = derive_seed(rep_seed, 0);
  const Adjacency truth = gen_graph(gspec);
  auto [omega, sigma] = precision_from_graph(truth, cfg.precision);
  const DataSample y = sample_gaussian(sigma, cfg.n, derive_seed(rep_seed, 1));
  const ObservationMatrix x = compute_statistic(y, cfg.statistic, cfg.lambda);

  Hyperparams hp;
  GreedyConfig greedy = cfg.greedy;
  greedy.variant = cfg.variant;
  greedy.seed = derive_seed(rep_seed, 2);
  greedy.parallel_restarts = false;  // replicate pool owns the parallelism

  std::vector<ReplicateRow> rows;
  rows.reserve(cfg.procedures.size());
  for (Procedure proc : cfg.procedures) {
    ReplicateRow row;
    row.replicate = rep;
    row.procedure = proc;
    const auto t0 = std::chrono::steady_clock::now();
    Adjacency estimate;
    if (proc == Procedure::NSBM) {
      const InferenceResult res = infer_graph(x, cfg.alpha, greedy, hp,
                                              /*parallel=*/false);
      estimate = res.graph;
      row.q_hat = res.fit.state.q;
      row.icl = res.fit.icl.total;
    } else {
      const Selection sel = bh_select(upper_triangle(pvalues_from_normal(x)), cfg.alpha);
      estimate = selection_to_adjacency(x.dim(), sel);
    }
    const auto t1 = std::chrono::steady_clock::now();
    if (cfg.timing)
      row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const auto [fdp, tdp] = fdp_tdp(estimate, truth);
    row.fdp = fdp;
    row.tdp = tdp;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

SimulationResult run_simulation(const ExperimentConfig& cfg, bool parallel) {
  std::vector<std::vector<ReplicateRow>> per_rep(cfg.replicates);
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic) \
    if (parallel && cfg.replicates > 1)
  for (int rep = 0; rep < cfg.replicates; ++rep)
    per_rep[rep] = run_one_replicate(cfg, rep);

  SimulationResult result;
  result.rows.reserve(static_cast<std::size_t>(cfg.replicates) * cfg.procedures.size());
  for (int rep = 0; rep < cfg.replicates; ++rep)
    for (const ReplicateRow& row : per_rep[rep]) result.rows.push_back(row);

  result.mean_fdp.assign(cfg.procedures.size(), 0.0);
  result.mean_tdp.assign(cfg.procedures.size(), 0.0);
  for (std::size_t k = 0; k < cfg.procedures.size(); ++k) {
    for (int rep = 0; rep < cfg.replicates; ++rep) {
      result.mean_fdp[k] += per_rep[rep][k].fdp;
      result.mean_tdp[k] += per_rep[rep][k].tdp;
    }
    result.mean_fdp[k] /= cfg.replicates;
    result.mean_tdp[k] /= cfg.replicates;
  }
  return result;
}

namespace {

void write_row(std::ofstream& out, const ReplicateRow& row) {
  out << row.replicate << ',' << procedure_name(row.procedure) << ','
      << format_double(row.fdp) << ',' << format_double(row.tdp) << ',' << row.q_hat
      << ',' << format_double(row.icl) << ',' << format_double(row.runtime_ms) << "\n";
}

}  // namespace

void write_simulation_csv(const std::string& path, const ExperimentConfig& cfg,
                          const SimulationResult& result) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "replicate,procedure,fdp,tdp,q_hat,icl,runtime_ms\n";
  for (const ReplicateRow& row : result.rows) write_row(out, row);
  for (std::size_t k = 0; k < cfg.procedures.size(); ++k) {
    // Summary: sample FDR and TDR per procedure.
    out << "summary," << procedure_name(cfg.procedures[k]) << ','
        << format_double(result.mean_fdp[k]) << ',' << format_double(result.mean_tdp[k])
        << ",,,\n";
  }
}

std::vector<SweepRow> run_sweep_maxdegree(const ExperimentConfig& cfg, bool parallel) {
  std::vector<SweepRow> rows;
  for (std::size_t k = 0; k < cfg.sweep_s.size(); ++k) {
    ExperimentConfig point = cfg;
    point.graph.kind = GraphKind::MaxDegree;
    point.graph.max_degree = cfg.sweep_s[k];
    point.seed = derive_seed(cfg.seed, 1000 + k);
    const SimulationResult result = run_simulation(point, parallel);
    for (const ReplicateRow& row : result.rows)
      rows.push_back(SweepRow{cfg.sweep_s[k], row});
  }
  return rows;
}

void write_sweep_csv(const std::string& path, const ExperimentConfig& cfg,
                     const std::vector<SweepRow>& rows) {
  (void)cfg;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "s,replicate,procedure,fdp,tdp,q_hat,icl,runtime_ms\n";
  for (const SweepRow& sr : rows) {
    out << sr.s << ',';
    write_row(out, sr.row);
  }
}

SubsampleCounts run_subsample(const DataSample& data, int subset, int replicates,
                              double alpha, Statistic statistic, double lambda,
                              const GreedyConfig& greedy, const Hyperparams& hp,
                              const std::vector<Procedure>& procedures,
                              std::uint64_t seed, bool parallel) {
  if (subset > data.n || subset < 2)
    throw DataError("subsample: subset size must be in [2, n]");
  const int p = data.p;

  SubsampleCounts counts;
  counts.replicates = replicates;
  counts.detections.assign(procedures.size(), Matrix(p, p, 0.0));

  std::vector<std::vector<Adjacency>> per_rep(replicates);
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic) \
    if (parallel && replicates > 1)
  for (int rep = 0; rep < replicates; ++rep) {
    const std::uint64_t rep_seed = derive_seed(seed, static_cast<std::uint64_t>(rep));
    Rng rng(derive_seed(rep_seed, 0));
    const std::vector<int> perm = rng.permutation(data.n);

    DataSample sub;
    sub.n = subset;
    sub.p = p;
    sub.y = Matrix(subset, p);
    for (int k = 0; k < subset; ++k)
      for (int j = 0; j < p; ++j) sub.y(k, j) = data.y(perm[k], j);

    const ObservationMatrix x = compute_statistic(sub, statistic, lambda);
    GreedyConfig fit_cfg = greedy;
    fit_cfg.seed = derive_seed(rep_seed, 1);
    fit_cfg.parallel_restarts = false;

    std::vector<Adjacency> found;
    for (Procedure proc : procedures) {
      if (proc == Procedure::NSBM) {
        found.push_back(infer_graph(x, alpha, fit_cfg, hp, /*parallel=*/false).graph);
      } else {
        const Selection sel = bh_select(upper_triangle(pvalues_from_normal(x)), alpha);
        found.push_back(selection_to_adjacency(p, sel));
      }
    }
    per_rep[rep] = std::move(found);
  }

  for (int rep = 0; rep < replicates; ++rep)
    for (std::size_t k = 0; k < procedures.size(); ++k)
      for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
          if (per_rep[rep][k](i, j)) {
            counts.detections[k](i, j) += 1.0;
            counts.detections[k](j, i) += 1.0;
          }
  return counts;
}

void write_subsample_csv(const std::string& path,
                         const std::vector<Procedure>& procedures,
                         const SubsampleCounts& counts) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "i,j,procedure,detections,replicates\n";
  const int p = counts.detections.empty() ? 0 : counts.detections.front().rows();
  for (std::size_t k = 0; k < procedures.size(); ++k)
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j)
        out << i << ',' << j << ',' << procedure_name(procedures[k]) << ','
            << format_double(counts.detections[k](i, j)) << ',' << counts.replicates
            << "\n";
}

}  // namespace nsbm
