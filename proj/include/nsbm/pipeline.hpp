#pragma once

#include <string>
#include <vector>

#include "nsbm/config.hpp"
#include "nsbm/merge.hpp"
#include "nsbm/mtp.hpp"

namespace nsbm {

/// One full inference: greedy fit, merge pass, l-value selection.
struct InferenceResult {
  FitResult fit;
  Selection selection;
  Adjacency graph;  // rejected pairs
};

/// parallel enables merge-candidate scoring across threads; callers already
/// inside a worker pool (e.g. the replicate loop) pass false.
InferenceResult infer_graph(const ObservationMatrix& x, double alpha,
                            const GreedyConfig& greedy, const Hyperparams& hp,
                            bool parallel = true);

/// Observation matrix for the configured statistic.
ObservationMatrix compute_statistic(const DataSample& y, Statistic statistic,
                                    double lambda);

struct ReplicateRow {
  int replicate = 0;
  Procedure procedure = Procedure::NSBM;
  double fdp = 0.0;
  double tdp = 0.0;
  int q_hat = 0;      // 0 for BH
  double icl = 0.0;   // 0 for BH
  double runtime_ms = 0.0;
};

struct SimulationResult {
  std::vector<ReplicateRow> rows;  // replicate-major, procedure order fixed
  // Per procedure, aligned with config.procedures.
  std::vector<double> mean_fdp;
  std::vector<double> mean_tdp;
};

/// Replicated experiment of the benchmark protocol: draw graph -> precision
/// -> sample -> statistic -> procedures -> FDP/TDP. Replicates run in a
/// parallel pool with derived seeds; rows come back in replicate order.
SimulationResult run_simulation(const ExperimentConfig& cfg, bool parallel = true);

void write_simulation_csv(const std::string& path, const ExperimentConfig& cfg,
                          const SimulationResult& result);

struct SweepRow {
  int s = 0;
  ReplicateRow row;
};

std::vector<SweepRow> run_sweep_maxdegree(const ExperimentConfig& cfg,
                                          bool parallel = true);

void write_sweep_csv(const std::string& path, const ExperimentConfig& cfg,
                     const std::vector<SweepRow>& rows);

struct SubsampleCounts {
  int replicates = 0;
  // count(i, j) per procedure, aligned with config.procedures.
  std::vector<Matrix> detections;
};

/// Repeatedly subsample `subset` rows without replacement and count how often
/// each pair is detected by each procedure.
SubsampleCounts run_subsample(const DataSample& data, int subset, int replicates,
                              double alpha, Statistic statistic, double lambda,
                              const GreedyConfig& greedy, const Hyperparams& hp,
                              const std::vector<Procedure>& procedures,
                              std::uint64_t seed, bool parallel = true);

void write_subsample_csv(const std::string& path,
                         const std::vector<Procedure>& procedures,
                         const SubsampleCounts& counts);

}  // namespace nsbm
