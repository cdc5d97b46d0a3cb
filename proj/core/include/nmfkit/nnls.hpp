#pragma once

#include "nmfkit/dense_matrix.hpp"

namespace nmfkit::nnls {

struct NnlsConfig {
  int max_iters = 500;
  double tol = 1e-8;    // stop when the projected-gradient norm has shrunk
                        // by this factor relative to the starting point
  bool restart = true;  // discard momentum whenever the objective increases
};

/// A has a column with no nonzero entries; the caller decides how to recover.
class ZeroColumnError : public Error {
 public:
  ZeroColumnError(Index column, const std::string& what)
      : Error(what), column(column) {}
  Index column;
};

/// V(k,:) is numerically zero, the closed-form column update is undefined.
class ZeroRowError : public Error {
 public:
  ZeroRowError(Index row, const std::string& what) : Error(what), row(row) {}
  Index row;
};

/// Largest eigenvalue of a symmetric PSD matrix by power iteration.
double largest_eigenvalue(const DenseMatrix& G);

/// min_{X >= 0} ||B - AX||_F starting from X0, by Nesterov's accelerated
/// projected gradient with step 1/L, L = lambda_max(A^T A). With
/// cfg.restart the momentum is dropped whenever the objective would
/// increase, which makes the returned objective <= the objective at X0.
DenseMatrix nnls_fast_gradient(const DenseMatrix& A, const DenseMatrix& B,
                               const DenseMatrix& X0, const NnlsConfig& cfg);

/// Exact minimizer of ||R_k - u V(k,:)||_F over u >= 0 where
/// R_k = M - sum_{j != k} U(:,j) V(j,:), i.e. max(0, R_k V(k,:)^T / ||V(k,:)||^2).
Vector hals_update_column(const DenseMatrix& M, const DenseMatrix& U,
                          const DenseMatrix& V, Index k);

}  // namespace nmfkit::nnls
