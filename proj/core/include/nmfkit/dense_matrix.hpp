#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nmfkit/errors.hpp"

namespace nmfkit {

// Row-major dense real matrix. Storage order matches the on-disk formats
// (CSV rows, flat row-major JSON arrays), so data() round-trips directly.
using DenseMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Column-l1-normalized view of a nonnegative matrix.
/// Mn has the zero columns of the input removed and every remaining column
/// summing to one; scale holds the original l1 norms, so Mn * diag(scale)
/// restores the retained columns.
struct NormalizedData {
  DenseMatrix Mn;
  Vector scale;
  std::vector<Index> removed;  // indices of dropped zero columns
};

/// Original column index of each retained column, given the drop list.
std::vector<Index> retained_indices(Index n, const std::vector<Index>& removed);

bool is_finite(const DenseMatrix& M);

/// ||M - UV||_F.
double residual(const DenseMatrix& M, const DenseMatrix& U,
                const DenseMatrix& V);

/// ||M - UV||_F / ||M||_F. Throws ValidationError when ||M||_F = 0.
double relative_residual(const DenseMatrix& M, const DenseMatrix& U,
                         const DenseMatrix& V);

/// Throws ValidationError on negative entries.
NormalizedData normalize_columns_l1(const DenseMatrix& M);

Vector singular_values(const DenseMatrix& M);

/// Number of singular values above tol * sigma_max.
int numeric_rank(const DenseMatrix& M, double tol = 1e-9);

}  // namespace nmfkit
