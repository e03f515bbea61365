#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nsbm/ggm_stats.hpp"
#include "nsbm/matrix.hpp"

namespace nsbm {

/// Malformed input data (bad CSV, impossible shapes). CLI exit code 1.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid configuration (unknown keys, bad values). CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numeric CSV with optional single header line (detected by non-numeric
/// first row). Throws DataError with the offending line number.
Matrix read_csv_matrix(const std::string& path);

DataSample read_csv_sample(const std::string& path);

void write_csv_matrix(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& header = {});

void write_csv_sym(const std::string& path, const SymMatrix& m);

void write_csv_adjacency(const std::string& path, const Adjacency& a);

/// Shortest round-trippable decimal form (printf %.17g tier stability).
std::string format_double(double v);

}  // namespace nsbm
