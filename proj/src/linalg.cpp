#include "nsbm/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "nsbm/threading.hpp"

namespace nsbm {

Matrix cholesky(const SymMatrix& m) {
  const int p = m.dim();
  Matrix l(p, p, 0.0);
  for (int j = 0; j < p; ++j) {
    double d = m(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) throw std::runtime_error("cholesky: matrix is not positive definite");
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < p; ++i) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

namespace {

// Solve (L L^T) x = e_col for one unit vector.
void solve_unit_column(const Matrix& l, int col, std::vector<double>& x) {
  const int p = l.rows();
  // forward: L y = e_col
  for (int i = 0; i < p; ++i) {
    double s = (i == col) ? 1.0 : 0.0;
    for (int k = 0; k < i; ++k) s -= l(i, k) * x[k];
    x[i] = s / l(i, i);
  }
  // backward: L^T x = y
  for (int i = p - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < p; ++k) s -= l(k, i) * x[k];
    x[i] = s / l(i, i);
  }
}

SymMatrix invert_from_factor(const Matrix& l, bool parallel) {
  const int p = l.rows();
  SymMatrix inv(p);
#pragma omp parallel for num_threads(thread_count()) schedule(static) if (parallel)
  for (int col = 0; col < p; ++col) {
    std::vector<double> x(p);
    solve_unit_column(l, col, x);
    for (int i = col; i < p; ++i) inv.set(i, col, x[i]);
  }
  return inv;
}

}  // namespace

SymMatrix invert_spd(const SymMatrix& m, bool parallel) {
  return invert_from_factor(cholesky(m), parallel);
}

SymMatrix invert_spd_serial(const SymMatrix& m) { return invert_spd(m, false); }

std::vector<double> jacobi_eigenvalues(const SymMatrix& m, Matrix* vectors) {
  const int p = m.dim();
  std::vector<std::vector<double>> a(p, std::vector<double>(p));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) a[i][j] = m(i, j);

  if (vectors) {
    *vectors = Matrix(p, p, 0.0);
    for (int i = 0; i < p; ++i) (*vectors)(i, i) = 1.0;
  }

  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) off += a[i][j] * a[i][j];
    if (std::sqrt(2.0 * off) <= 1e-12) break;

    for (int i = 0; i < p - 1; ++i)
      for (int j = i + 1; j < p; ++j) {
        if (a[i][j] == 0.0) continue;
        const double theta = (a[j][j] - a[i][i]) / (2.0 * a[i][j]);
        double t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < p; ++k) {
          const double aik = a[i][k], ajk = a[j][k];
          a[i][k] = c * aik - s * ajk;
          a[j][k] = s * aik + c * ajk;
        }
        for (int k = 0; k < p; ++k) {
          const double aki = a[k][i], akj = a[k][j];
          a[k][i] = c * aki - s * akj;
          a[k][j] = s * aki + c * akj;
        }
        if (vectors)
          for (int k = 0; k < p; ++k) {
            const double vki = (*vectors)(k, i), vkj = (*vectors)(k, j);
            (*vectors)(k, i) = c * vki - s * vkj;
            (*vectors)(k, j) = s * vki + c * vkj;
          }
      }
  }

  std::vector<double> evals(p);
  for (int i = 0; i < p; ++i) evals[i] = a[i][i];

  // Sort ascending, keeping eigenvector columns aligned.
  std::vector<int> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  for (int i = 0; i < p - 1; ++i) {
    int min_k = i;
    for (int k = i + 1; k < p; ++k)
      if (evals[idx[k]] < evals[idx[min_k]]) min_k = k;
    std::swap(idx[i], idx[min_k]);
  }
  std::vector<double> sorted(p);
  for (int i = 0; i < p; ++i) sorted[i] = evals[idx[i]];
  if (vectors) {
    Matrix v = *vectors;
    for (int i = 0; i < p; ++i)
      for (int k = 0; k < p; ++k) (*vectors)(k, i) = v(k, idx[i]);
  }
  return sorted;
}

double min_eig_sym(const SymMatrix& m) { return jacobi_eigenvalues(m).front(); }

SymMatrix gram(const Matrix& a, double scale, bool parallel) {
  const int n = a.rows();
  const int p = a.cols();
  SymMatrix out(p);
#pragma omp parallel for num_threads(thread_count()) schedule(static) if (parallel)
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += a(k, i) * a(k, j);
      out.set(i, j, s * scale);
    }
  return out;
}

SymMatrix gram_serial(const Matrix& a, double scale) { return gram(a, scale, false); }

}  // namespace nsbm
