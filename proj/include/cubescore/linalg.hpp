#pragma once

#include <cstddef>
#include <vector>

#include "cubescore/matrix.hpp"

namespace cubescore {

/// True iff max |(M^T M - I)_ij| <= tol. Throws ShapeError for non-square M.
bool is_orthogonal(const DenseMatrix& m, double tol);

/// All entries >= -tol and every column sum within tol of 1.
bool is_column_stochastic(const DenseMatrix& a, double tol);

/// Count of singular values above tol * sigma_max. Uses a singular value
/// decomposition up to 512 rows/cols and column-pivoted QR beyond.
std::size_t numeric_rank(const DenseMatrix& m, double tol);

/// Eigenvalues of a symmetric matrix in ascending order, by cyclic Jacobi
/// rotations. Only the upper triangle is read.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& s);

/// Inverse of a square matrix; throws ConstructionError if it is singular.
DenseMatrix inverse(const DenseMatrix& m);

double trace(const DenseMatrix& m);

}  // namespace cubescore
