#pragma once

#include <vector>

#include "nmfkit/dense_matrix.hpp"

namespace nmfkit::separable {

/// Extracted column subset with its nonnegative abundances.
struct SeparableResult {
  std::vector<Index> K;  // r distinct column indices
  DenseMatrix V;         // r x n, nonnegative
  double residual = 0.0;  // ||M - M(:,K) V||_F
};

struct SelfDictConfig {
  std::vector<Index> candidates;  // rows of X allowed nonzero; empty = auto
                                  // (greedy picks, up to 5r)
  double penalty = 100.0;         // mu for the data-fit term
  int max_iters = 2000;
  double tol = 1e-9;
};

/// The projected residual became numerically zero before r columns could be
/// selected; `found` holds the indices selected so far.
class RankDeficiencyError : public Error {
 public:
  RankDeficiencyError(std::vector<Index> found, const std::string& what)
      : Error(what), found(std::move(found)) {}
  std::vector<Index> found;
};

/// Successive projection: greedily pick the column of largest l2 norm
/// (ties to the lowest index), project everything onto its orthogonal
/// complement, repeat r times. Expects column-l1-normalized input.
std::vector<Index> spa(const DenseMatrix& M, int r);

/// Best rank-k approximation via truncated SVD. May contain small negative
/// entries; spa tolerates them.
DenseMatrix pca_denoise(const DenseMatrix& M, int k);

/// Whitening transform from the minimum-volume origin-centered ellipsoid
/// covering the columns of R (r x n, already reduced to r coordinates),
/// computed with Khachiyan's first-order updates. SPA is then run on L*R.
DenseMatrix mve_precondition(const DenseMatrix& R, int r);

/// Re-examine each selected column against the orthogonal complement of the
/// other selections, swapping to the norm maximizer until a full pass makes
/// no swap (at most 10 passes). Never decreases the selected volume.
std::vector<Index> refine_vertices(const DenseMatrix& M,
                                   std::vector<Index> K);

/// V >= 0 minimizing ||M - M(:,K) V||_F.
DenseMatrix abundances(const DenseMatrix& M, const std::vector<Index>& K);

/// Exact Euclidean projection of a row y onto
///   { x : 0 <= x_j <= x_i <= 1 for all j },  i = diag position.
/// For a fixed diagonal value d the projection clamps to [0, d]; the optimal
/// d minimizes a convex piecewise quadratic found by a sort-based breakpoint
/// scan.
Vector project_row_selfdict(const Vector& y, Index diag);

/// Trace-minimization self-dictionary model:
///   min_X  tr(X) + mu ||M - MX||_F^2
///   s.t.   X >= 0, rows outside candidates zero, X(i,j) <= X(i,i) <= 1,
/// solved by accelerated projected gradient with exact row projections.
/// K = the r largest diagonal entries (ties to the lowest index).
SeparableResult self_dictionary(const DenseMatrix& M,
                                const SelfDictConfig& cfg, int r);

/// As self_dictionary, but also exposing the optimal X restricted to the
/// candidate rows (candidate order), for feasibility checks.
struct SelfDictSolution {
  SeparableResult result;
  std::vector<Index> candidates;
  DenseMatrix X;  // |candidates| x n
};
SelfDictSolution self_dictionary_full(const DenseMatrix& M,
                                      const SelfDictConfig& cfg, int r);

}  // namespace nmfkit::separable
