#include "nmfkit/dense_matrix.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace nmfkit {

std::vector<Index> retained_indices(Index n,
                                    const std::vector<Index>& removed) {
  std::vector<bool> drop(static_cast<size_t>(n), false);
  for (Index j : removed) drop[static_cast<size_t>(j)] = true;
  std::vector<Index> kept;
  kept.reserve(static_cast<size_t>(n) - removed.size());
  for (Index j = 0; j < n; ++j)
    if (!drop[static_cast<size_t>(j)]) kept.push_back(j);
  return kept;
}

bool is_finite(const DenseMatrix& M) { return M.allFinite(); }

static void check_product_dims(const DenseMatrix& M, const DenseMatrix& U,
                               const DenseMatrix& V) {
  if (U.rows() != M.rows() || V.cols() != M.cols() || U.cols() != V.rows())
    throw DimensionError("residual: M is " + std::to_string(M.rows()) + "x" +
                         std::to_string(M.cols()) + " but UV is " +
                         std::to_string(U.rows()) + "x" +
                         std::to_string(U.cols()) + " * " +
                         std::to_string(V.rows()) + "x" +
                         std::to_string(V.cols()));
}

double residual(const DenseMatrix& M, const DenseMatrix& U,
                const DenseMatrix& V) {
  check_product_dims(M, U, V);
  return (M - U * V).norm();
}

double relative_residual(const DenseMatrix& M, const DenseMatrix& U,
                         const DenseMatrix& V) {
  check_product_dims(M, U, V);
  const double nM = M.norm();
  if (nM == 0.0)
    throw ValidationError("relative_residual: ||M||_F is zero");
  return (M - U * V).norm() / nM;
}

NormalizedData normalize_columns_l1(const DenseMatrix& M) {
  if ((M.array() < 0.0).any())
    throw ValidationError("normalize_columns_l1: M has negative entries");

  const Index n = M.cols();
  Vector sums = M.colwise().sum();
  const double max_sum = n > 0 ? sums.maxCoeff() : 0.0;
  const double zero_tol = 1e-15 * max_sum;

  NormalizedData out;
  std::vector<Index> kept;
  for (Index j = 0; j < n; ++j) {
    if (sums(j) <= zero_tol)
      out.removed.push_back(j);
    else
      kept.push_back(j);
  }
  out.Mn.resize(M.rows(), static_cast<Index>(kept.size()));
  out.scale.resize(static_cast<Index>(kept.size()));
  for (size_t c = 0; c < kept.size(); ++c) {
    const Index j = kept[c];
    out.scale(static_cast<Index>(c)) = sums(j);
    out.Mn.col(static_cast<Index>(c)) = M.col(j) / sums(j);
  }
  return out;
}

Vector singular_values(const DenseMatrix& M) {
  if (M.size() == 0) throw ValidationError("singular_values: empty matrix");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  return svd.singularValues();
}

int numeric_rank(const DenseMatrix& M, double tol) {
  if (tol <= 0.0) throw ValidationError("numeric_rank: tol must be positive");
  Vector sv = singular_values(M);
  const double cutoff = tol * sv(0);
  int rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

}  // namespace nmfkit
