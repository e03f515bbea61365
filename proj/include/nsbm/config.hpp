#pragma once

#include <map>
#include <string>
#include <vector>

#include "nsbm/datagen.hpp"
#include "nsbm/greedy.hpp"

namespace nsbm {

enum class Statistic { ZTransform, NodewiseLasso };
enum class Procedure { NSBM, BH };

/// One replicated simulation experiment (see README for the file format:
/// `key = value` lines with dotted keys, `#` comments).
struct ExperimentConfig {
  GraphSpec graph;
  PrecisionSpec precision;
  int n = 100;
  Statistic statistic = Statistic::ZTransform;
  Variant variant = Variant::GaussianKnownVar;
  double lambda = -1.0;  // nodewise penalty; <0 selects the default
  double alpha = 0.1;
  int replicates = 1;
  std::uint64_t seed = 1;
  std::string output = "results.csv";
  std::vector<Procedure> procedures = {Procedure::NSBM, Procedure::BH};
  bool timing = false;  // off keeps output byte-reproducible
  GreedyConfig greedy;
  std::vector<int> sweep_s = {3, 8, 15};  // sweep-maxdegree grid
};

/// Raw key-value view of a config file, for flag overrides.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Parse and validate; unknown keys or bad values raise ConfigError naming
/// the field.
ExperimentConfig parse_experiment_config(const std::map<std::string, std::string>& kv);

ExperimentConfig load_experiment_config(const std::string& path);

const char* procedure_name(Procedure p);
Statistic parse_statistic(const std::string& s);
Variant parse_variant(const std::string& s);

}  // namespace nsbm
