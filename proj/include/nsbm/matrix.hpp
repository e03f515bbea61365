#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nsbm {

/// Dense row-major rectangular matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double init = 0.0)
      : rows_(rows), cols_(cols), d_(static_cast<std::size_t>(rows) * cols, init) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double operator()(int i, int j) const { return d_[idx(i, j)]; }
  double& operator()(int i, int j) { return d_[idx(i, j)]; }

  const double* row(int i) const { return d_.data() + idx(i, 0); }
  double* row(int i) { return d_.data() + idx(i, 0); }

  const std::vector<double>& data() const { return d_; }
  std::vector<double>& data() { return d_; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
  }

 private:
  std::size_t idx(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return static_cast<std::size_t>(i) * cols_ + j;
  }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> d_;
};

/// Dense symmetric p x p matrix; set() keeps both triangles in sync.
/// The diagonal is stored but carries no meaning for pair data.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int p, double init = 0.0)
      : p_(p), d_(static_cast<std::size_t>(p) * p, init) {}

  int dim() const { return p_; }

  double operator()(int i, int j) const { return d_[idx(i, j)]; }

  void set(int i, int j, double v) {
    d_[idx(i, j)] = v;
    d_[idx(j, i)] = v;
  }

  const std::vector<double>& data() const { return d_; }

  bool operator==(const SymMatrix& o) const { return p_ == o.p_ && d_ == o.d_; }

 private:
  std::size_t idx(int i, int j) const {
    assert(i >= 0 && i < p_ && j >= 0 && j < p_);
    return static_cast<std::size_t>(i) * p_ + j;
  }
  int p_ = 0;
  std::vector<double> d_;
};

/// Symmetric hollow 0/1 adjacency matrix.
class Adjacency {
 public:
  Adjacency() = default;
  explicit Adjacency(int p) : p_(p), d_(static_cast<std::size_t>(p) * p, 0) {}

  int dim() const { return p_; }

  bool operator()(int i, int j) const { return d_[idx(i, j)] != 0; }

  void set(int i, int j, bool v) {
    assert(i != j);
    d_[idx(i, j)] = v ? 1 : 0;
    d_[idx(j, i)] = v ? 1 : 0;
  }

  /// Total number of edges (each pair counted once).
  long long edge_count() const {
    long long m = 0;
    for (int i = 0; i < p_; ++i)
      for (int j = i + 1; j < p_; ++j) m += (*this)(i, j) ? 1 : 0;
    return m;
  }

  int degree(int i) const {
    int d = 0;
    for (int j = 0; j < p_; ++j)
      if (j != i && (*this)(i, j)) ++d;
    return d;
  }

  bool operator==(const Adjacency& o) const { return p_ == o.p_ && d_ == o.d_; }

 private:
  std::size_t idx(int i, int j) const {
    assert(i >= 0 && i < p_ && j >= 0 && j < p_);
    return static_cast<std::size_t>(i) * p_ + j;
  }
  int p_ = 0;
  std::vector<std::uint8_t> d_;
};

/// Q x Q matrix indexed by block pairs. Entries (q,l) and (l,q) mirror the
/// same logical cell; callers go through set_sym/add_sym to keep them equal.
template <class T>
class BlockMat {
 public:
  BlockMat() = default;
  explicit BlockMat(int q, T init = T{})
      : q_(q), d_(static_cast<std::size_t>(q) * q, init) {}

  int dim() const { return q_; }

  T operator()(int a, int b) const { return d_[idx(a, b)]; }

  void set_sym(int a, int b, T v) {
    d_[idx(a, b)] = v;
    d_[idx(b, a)] = v;
  }

  void add_sym(int a, int b, T v) {
    d_[idx(a, b)] += v;
    if (a != b) d_[idx(b, a)] += v;
  }

  /// Drop row/column g and shrink to (q-1) x (q-1).
  void remove_block(int g) {
    assert(g >= 0 && g < q_);
    BlockMat<T> out(q_ - 1);
    for (int a = 0, a2 = 0; a < q_; ++a) {
      if (a == g) continue;
      for (int b = 0, b2 = 0; b < q_; ++b) {
        if (b == g) continue;
        out.d_[static_cast<std::size_t>(a2) * out.q_ + b2] = d_[idx(a, b)];
        ++b2;
      }
      ++a2;
    }
    *this = std::move(out);
  }

  bool operator==(const BlockMat& o) const { return q_ == o.q_ && d_ == o.d_; }

 private:
  std::size_t idx(int a, int b) const {
    assert(a >= 0 && a < q_ && b >= 0 && b < q_);
    return static_cast<std::size_t>(a) * q_ + b;
  }
  int q_ = 0;
  std::vector<T> d_;
};

}  // namespace nsbm
