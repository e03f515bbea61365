#include "nsbm/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace nsbm {

namespace {

bool parse_double(const std::string& tok, double& out) {
  const char* s = tok.c_str();
  char* end = nullptr;
  out = std::strtod(s, &end);
  if (end == s) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0';
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      toks.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  toks.push_back(cur);
  return toks;
}

}  // namespace

Matrix read_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++lineno;
    // Skip blank lines.
    bool blank = true;
    for (char c : line)
      if (c != ' ' && c != '\t' && c != '\r') blank = false;
    if (blank) continue;

    const std::vector<std::string> toks = split_line(line);
    std::vector<double> vals(toks.size());
    bool numeric = true;
    for (std::size_t k = 0; k < toks.size(); ++k)
      if (!parse_double(toks[k], vals[k])) {
        numeric = false;
        break;
      }
    if (!numeric) {
      if (first_content_line) {
        first_content_line = false;  // header line
        continue;
      }
      throw DataError(path + ":" + std::to_string(lineno) + ": non-numeric value");
    }
    first_content_line = false;
    if (!rows.empty() && vals.size() != rows.front().size())
      throw DataError(path + ":" + std::to_string(lineno) + ": expected " +
                      std::to_string(rows.front().size()) + " columns, got " +
                      std::to_string(vals.size()));
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw DataError(path + ": no numeric rows");

  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

DataSample read_csv_sample(const std::string& path) {
  DataSample s;
  s.y = read_csv_matrix(path);
  s.n = s.y.rows();
  s.p = s.y.cols();
  if (s.n < 2) throw DataError(path + ": need at least 2 observation rows");
  return s;
}

std::string format_double(double v) {
  char buf[64];
  // Integers print exactly; everything else round-trips.
  if (v == static_cast<long long>(v) && std::fabs(v) < 1e15)
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
  else
    std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv_matrix(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  if (!header.empty()) {
    for (std::size_t k = 0; k < header.size(); ++k)
      out << (k ? "," : "") << header[k];
    out << "\n";
  }
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
    out << "\n";
  }
}

void write_csv_sym(const std::string& path, const SymMatrix& m) {
  Matrix full(m.dim(), m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) full(i, j) = m(i, j);
  write_csv_matrix(path, full);
}

void write_csv_adjacency(const std::string& path, const Adjacency& a) {
  Matrix full(a.dim(), a.dim(), 0.0);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (i != j && a(i, j)) full(i, j) = 1.0;
  write_csv_matrix(path, full);
}

}  // namespace nsbm
