#pragma once

#include <vector>

#include "nsbm/matrix.hpp"

namespace nsbm {

/// Lower-triangular Cholesky factor of an SPD matrix (throws on non-SPD).
Matrix cholesky(const SymMatrix& m);

/// Inverse of an SPD matrix via its Cholesky factor. The parallel variant
/// solves the identity columns concurrently; both give identical results.
SymMatrix invert_spd(const SymMatrix& m, bool parallel = true);
SymMatrix invert_spd_serial(const SymMatrix& m);

/// All eigenvalues (ascending) of a symmetric matrix by cyclic Jacobi
/// rotations; optional eigenvectors as columns of *vectors.
std::vector<double> jacobi_eigenvalues(const SymMatrix& m, Matrix* vectors = nullptr);

double min_eig_sym(const SymMatrix& m);

/// C = A^T A scaled by `scale`, written as a symmetric matrix. The parallel
/// variant splits the output columns; inner sums run in a fixed order so the
/// two variants agree bitwise.
SymMatrix gram(const Matrix& a, double scale, bool parallel = true);
SymMatrix gram_serial(const Matrix& a, double scale);

}  // namespace nsbm
