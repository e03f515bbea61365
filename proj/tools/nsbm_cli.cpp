#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "nsbm/csv.hpp"
#include "nsbm/pipeline.hpp"
#include "nsbm/threading.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitConfigError = 2;

struct InferArgs {
  std::string data;
  std::string statistic = "ztransform";
  std::string variant = "gaussian";
  double alpha = 0.1;
  std::string lambda = "auto";
  std::uint64_t seed = 1;
  int restarts = 3;
  int q_init = 0;
  std::string out_prefix = "nsbm";
};

double parse_lambda(const std::string& s) {
  if (s == "auto") return -1.0;
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw nsbm::ConfigError("field 'lambda': expected a number or 'auto'");
  }
}

int cmd_infer(const InferArgs& args) {
  const nsbm::DataSample y = nsbm::read_csv_sample(args.data);
  const nsbm::Statistic stat = nsbm::parse_statistic(args.statistic);

  nsbm::GreedyConfig greedy;
  greedy.variant = nsbm::parse_variant(args.variant);
  greedy.seed = args.seed;
  greedy.restarts = args.restarts;
  greedy.q_init = args.q_init;
  nsbm::Hyperparams hp;

  const nsbm::ObservationMatrix x =
      nsbm::compute_statistic(y, stat, parse_lambda(args.lambda));
  const nsbm::InferenceResult res = nsbm::infer_graph(x, args.alpha, greedy, hp);

  nsbm::write_csv_adjacency(args.out_prefix + "_adjacency.csv", res.graph);
  nsbm::write_csv_sym(args.out_prefix + "_lvalues.csv", res.fit.lvalues);

  std::ofstream report(args.out_prefix + "_report.txt");
  if (!report) throw nsbm::DataError("cannot write report");
  report << "n = " << y.n << "\n"
         << "p = " << y.p << "\n"
         << "statistic = " << args.statistic << "\n"
         << "variant = " << args.variant << "\n"
         << "alpha = " << nsbm::format_double(args.alpha) << "\n"
         << "q = " << res.fit.state.q << "\n"
         << "icl_total = " << nsbm::format_double(res.fit.icl.total) << "\n"
         << "icl_sbm = " << nsbm::format_double(res.fit.icl.sbm_part) << "\n"
         << "icl_noise = " << nsbm::format_double(res.fit.icl.noise_part) << "\n"
         << "edges_selected = " << res.selection.rejected.size() << "\n"
         << "lvalue_threshold = " << nsbm::format_double(res.selection.threshold)
         << "\n";
  for (int a = 0; a < res.fit.state.q; ++a)
    for (int b = a; b < res.fit.state.q; ++b)
      report << "theta[" << a << "][" << b << "] w = "
             << nsbm::format_double(res.fit.params.w(a, b))
             << " mu = " << nsbm::format_double(res.fit.params.mu(a, b))
             << " sigma_sq = " << nsbm::format_double(res.fit.params.sigma_sq(a, b))
             << "\n";

  std::cout << "wrote " << args.out_prefix << "_adjacency.csv, " << args.out_prefix
            << "_lvalues.csv, " << args.out_prefix << "_report.txt (q=" << res.fit.state.q
            << ", edges=" << res.selection.rejected.size() << ")\n";
  return kExitOk;
}

void apply_override(std::map<std::string, std::string>& kv, const std::string& key,
                    const std::string& value) {
  if (!value.empty()) kv[key] = value;
}

int cmd_simulate(const std::string& config_path,
                 const std::map<std::string, std::string>& overrides) {
  auto kv = nsbm::read_config_file(config_path);
  for (const auto& [k, v] : overrides) kv[k] = v;
  const nsbm::ExperimentConfig cfg = nsbm::parse_experiment_config(kv);

  const nsbm::SimulationResult result = nsbm::run_simulation(cfg);
  nsbm::write_simulation_csv(cfg.output, cfg, result);

  std::cout << "wrote " << cfg.output << "\n";
  for (std::size_t k = 0; k < cfg.procedures.size(); ++k)
    std::cout << nsbm::procedure_name(cfg.procedures[k])
              << ": FDR = " << nsbm::format_double(result.mean_fdp[k])
              << ", TDR = " << nsbm::format_double(result.mean_tdp[k]) << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& config_path,
              const std::map<std::string, std::string>& overrides) {
  auto kv = nsbm::read_config_file(config_path);
  for (const auto& [k, v] : overrides) kv[k] = v;
  const nsbm::ExperimentConfig cfg = nsbm::parse_experiment_config(kv);

  const std::vector<nsbm::SweepRow> rows = nsbm::run_sweep_maxdegree(cfg);
  nsbm::write_sweep_csv(cfg.output, cfg, rows);
  std::cout << "wrote " << cfg.output << " (" << rows.size() << " rows)\n";

  for (int s : cfg.sweep_s)
    for (std::size_t k = 0; k < cfg.procedures.size(); ++k) {
      double mean = 0.0;
      int count = 0;
      for (const nsbm::SweepRow& r : rows)
        if (r.s == s && r.row.procedure == cfg.procedures[k]) {
          mean += r.row.tdp;
          ++count;
        }
      if (count > 0)
        std::cout << "s=" << s << " " << nsbm::procedure_name(cfg.procedures[k])
                  << ": TDR = " << nsbm::format_double(mean / count) << "\n";
    }
  return kExitOk;
}

struct SubsampleArgs {
  std::string data;
  int subset = 20;
  int replicates = 200;
  double alpha = 0.05;
  std::string statistic = "nodewise";
  std::string variant = "nig";
  std::string lambda = "auto";
  std::uint64_t seed = 1;
  std::string output = "subsample.csv";
};

int cmd_subsample(const SubsampleArgs& args) {
  const nsbm::DataSample y = nsbm::read_csv_sample(args.data);
  nsbm::GreedyConfig greedy;
  greedy.variant = nsbm::parse_variant(args.variant);
  nsbm::Hyperparams hp;
  const std::vector<nsbm::Procedure> procedures = {nsbm::Procedure::NSBM,
                                                   nsbm::Procedure::BH};
  const nsbm::SubsampleCounts counts = nsbm::run_subsample(
      y, args.subset, args.replicates, args.alpha, nsbm::parse_statistic(args.statistic),
      parse_lambda(args.lambda), greedy, hp, procedures, args.seed);
  nsbm::write_subsample_csv(args.output, procedures, counts);
  std::cout << "wrote " << args.output << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph inference with the noisy stochastic block model"};
  app.require_subcommand(1);

  InferArgs infer_args;
  CLI::App* infer = app.add_subcommand("infer", "Infer a graph from a data CSV");
  infer->add_option("--data", infer_args.data, "CSV, rows = observations")->required();
  infer->add_option("--statistic", infer_args.statistic, "ztransform | nodewise");
  infer->add_option("--variant", infer_args.variant, "gaussian | nig");
  infer->add_option("--alpha", infer_args.alpha, "nominal FDR level");
  infer->add_option("--lambda", infer_args.lambda, "nodewise penalty or 'auto'");
  infer->add_option("--seed", infer_args.seed, "RNG seed");
  infer->add_option("--restarts", infer_args.restarts, "greedy restarts");
  infer->add_option("--q-init", infer_args.q_init, "initial blocks (0 = auto)");
  infer->add_option("--out-prefix", infer_args.out_prefix, "output file prefix");

  std::string sim_config, sim_output, sim_replicates, sim_seed, sim_alpha;
  CLI::App* simulate = app.add_subcommand("simulate", "Replicated synthetic benchmark");
  simulate->add_option("--config", sim_config, "experiment config file")->required();
  simulate->add_option("--output", sim_output, "override output path");
  simulate->add_option("--replicates", sim_replicates, "override replicate count");
  simulate->add_option("--seed", sim_seed, "override seed");
  simulate->add_option("--alpha", sim_alpha, "override alpha");

  std::string sweep_config, sweep_output, sweep_grid, sweep_replicates;
  CLI::App* sweep = app.add_subcommand("sweep-maxdegree", "TDR versus max degree");
  sweep->add_option("--config", sweep_config, "experiment config file")->required();
  sweep->add_option("--output", sweep_output, "override output path");
  sweep->add_option("--s-grid", sweep_grid, "override sweep.s, e.g. 3,8,15");
  sweep->add_option("--replicates", sweep_replicates, "override replicate count");

  SubsampleArgs sub_args;
  CLI::App* subsample =
      app.add_subcommand("subsample", "Edge detection counts over subsamples");
  subsample->add_option("--data", sub_args.data, "CSV, rows = observations")->required();
  subsample->add_option("--subset", sub_args.subset, "subsample size");
  subsample->add_option("--replicates", sub_args.replicates, "number of subsamples");
  subsample->add_option("--alpha", sub_args.alpha, "nominal FDR level");
  subsample->add_option("--statistic", sub_args.statistic, "ztransform | nodewise");
  subsample->add_option("--variant", sub_args.variant, "gaussian | nig");
  subsample->add_option("--lambda", sub_args.lambda, "nodewise penalty or 'auto'");
  subsample->add_option("--seed", sub_args.seed, "RNG seed");
  subsample->add_option("--output", sub_args.output, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*infer) return cmd_infer(infer_args);
    if (*simulate) {
      std::map<std::string, std::string> overrides;
      apply_override(overrides, "output", sim_output);
      apply_override(overrides, "replicates", sim_replicates);
      apply_override(overrides, "seed", sim_seed);
      apply_override(overrides, "alpha", sim_alpha);
      return cmd_simulate(sim_config, overrides);
    }
    if (*sweep) {
      std::map<std::string, std::string> overrides;
      apply_override(overrides, "output", sweep_output);
      apply_override(overrides, "sweep.s", sweep_grid);
      apply_override(overrides, "replicates", sweep_replicates);
      return cmd_sweep(sweep_config, overrides);
    }
    if (*subsample) return cmd_subsample(sub_args);
  } catch (const nsbm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const nsbm::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitConfigError;
}
