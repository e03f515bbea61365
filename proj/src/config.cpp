#include "nsbm/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nsbm/csv.hpp"

namespace nsbm {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  double d = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("field '" + key + "': expected a number, got '" + v + "'");
  return d;
}

long long to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  const long long i = static_cast<long long>(d);
  if (static_cast<double>(i) != d)
    throw ConfigError("field '" + key + "': expected an integer, got '" + v + "'");
  return i;
}

bool to_bool(const std::string& key, const std::string& v) {
  const std::string s = lower(v);
  if (s == "on" || s == "true" || s == "1" || s == "yes") return true;
  if (s == "off" || s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("field '" + key + "': expected on/off, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

GraphKind parse_graph_kind(const std::string& v) {
  const std::string s = lower(v);
  if (s == "sbm") return GraphKind::SBM;
  if (s == "hub") return GraphKind::Hub;
  if (s == "band") return GraphKind::Band;
  if (s == "scalefree" || s == "scale-free") return GraphKind::ScaleFree;
  if (s == "maxdegree" || s == "max-degree") return GraphKind::MaxDegree;
  throw ConfigError("field 'graph.kind': unknown kind '" + v + "'");
}

}  // namespace

Statistic parse_statistic(const std::string& v) {
  const std::string s = lower(v);
  if (s == "ztransform" || s == "z-transform") return Statistic::ZTransform;
  if (s == "nodewise" || s == "nodewise-lasso") return Statistic::NodewiseLasso;
  throw ConfigError("field 'statistic': unknown statistic '" + v + "'");
}

Variant parse_variant(const std::string& v) {
  const std::string s = lower(v);
  if (s == "gaussian" || s == "known" || s == "knownvar") return Variant::GaussianKnownVar;
  if (s == "nig" || s == "unknown") return Variant::NIG;
  throw ConfigError("field 'variant': unknown variant '" + v + "'");
}

const char* procedure_name(Procedure p) {
  return p == Procedure::NSBM ? "NSBM" : "BH";
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = value;
  }
  return kv;
}

ExperimentConfig parse_experiment_config(const std::map<std::string, std::string>& kv) {
  ExperimentConfig cfg;
  bool alpha_given = false;
  for (const auto& [key, value] : kv) {
    if (key == "graph.kind") {
      cfg.graph.kind = parse_graph_kind(value);
    } else if (key == "graph.p") {
      cfg.graph.p = static_cast<int>(to_int(key, value));
    } else if (key == "graph.blocks") {
      cfg.graph.blocks = static_cast<int>(to_int(key, value));
    } else if (key == "graph.p_within") {
      cfg.graph.p_within = to_double(key, value);
    } else if (key == "graph.p_between") {
      cfg.graph.p_between = to_double(key, value);
    } else if (key == "graph.hub_group") {
      cfg.graph.hub_group = static_cast<int>(to_int(key, value));
    } else if (key == "graph.band_width") {
      cfg.graph.band_width = static_cast<int>(to_int(key, value));
    } else if (key == "graph.max_degree") {
      cfg.graph.max_degree = static_cast<int>(to_int(key, value));
    } else if (key == "precision.gamma") {
      cfg.precision.gamma = to_double(key, value);
    } else if (key == "precision.beta") {
      cfg.precision.beta = to_double(key, value);
    } else if (key == "n") {
      cfg.n = static_cast<int>(to_int(key, value));
    } else if (key == "statistic") {
      cfg.statistic = parse_statistic(value);
    } else if (key == "variant") {
      cfg.variant = parse_variant(value);
    } else if (key == "lambda") {
      cfg.lambda = (lower(value) == "auto") ? -1.0 : to_double(key, value);
    } else if (key == "alpha") {
      cfg.alpha = to_double(key, value);
      alpha_given = true;
    } else if (key == "replicates") {
      cfg.replicates = static_cast<int>(to_int(key, value));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(to_int(key, value));
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "procedures") {
      cfg.procedures.clear();
      for (const std::string& name : split_list(value)) {
        const std::string s = lower(name);
        if (s == "nsbm")
          cfg.procedures.push_back(Procedure::NSBM);
        else if (s == "bh")
          cfg.procedures.push_back(Procedure::BH);
        else
          throw ConfigError("field 'procedures': unknown procedure '" + name + "'");
      }
    } else if (key == "timing") {
      cfg.timing = to_bool(key, value);
    } else if (key == "greedy.q_init") {
      cfg.greedy.q_init = (lower(value) == "auto") ? 0 : static_cast<int>(to_int(key, value));
    } else if (key == "greedy.max_sweeps") {
      cfg.greedy.max_sweeps = static_cast<int>(to_int(key, value));
    } else if (key == "greedy.restarts") {
      cfg.greedy.restarts = static_cast<int>(to_int(key, value));
    } else if (key == "sweep.s") {
      cfg.sweep_s.clear();
      for (const std::string& s : split_list(value))
        cfg.sweep_s.push_back(static_cast<int>(to_int(key, s)));
    } else {
      throw ConfigError("unknown field '" + key + "'");
    }
  }

  if (!alpha_given)
    cfg.alpha = (cfg.graph.kind == GraphKind::Band ||
                 cfg.graph.kind == GraphKind::ScaleFree)
                    ? 0.05
                    : 0.1;
  if (cfg.replicates < 1) throw ConfigError("field 'replicates': must be >= 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw ConfigError("field 'alpha': must be in (0, 1)");
  if (cfg.graph.p < 2) throw ConfigError("field 'graph.p': must be >= 2");
  if (cfg.n < 2) throw ConfigError("field 'n': must be >= 2");
  if (cfg.procedures.empty()) throw ConfigError("field 'procedures': must not be empty");
  if (cfg.sweep_s.empty()) throw ConfigError("field 'sweep.s': must not be empty");
  cfg.greedy.variant = cfg.variant;
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_config_file(path));
}

}  // namespace nsbm
