#include "nmfkit/nnls.hpp"

#include <cmath>

namespace nmfkit::nnls {

double largest_eigenvalue(const DenseMatrix& G) {
  const Index r = G.rows();
  Vector v(r);
  for (Index i = 0; i < r; ++i)
    v(i) = 1.0 + 0.01 * std::sin(static_cast<double>(i + 1));
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 30; ++it) {
    Vector w = G * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    const double next = v.dot(G * v);
    if (std::abs(next - lambda) <= 1e-10 * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return lambda;
}

// Objective up to the constant ||B||^2/2; cheap to evaluate from the Gram
// form and monotone exactly when the true objective is.
static double gram_objective(const DenseMatrix& X, const DenseMatrix& G,
                             const DenseMatrix& AtB) {
  return 0.5 * (X.cwiseProduct(G * X)).sum() - (X.cwiseProduct(AtB)).sum();
}

DenseMatrix nnls_fast_gradient(const DenseMatrix& A, const DenseMatrix& B,
                               const DenseMatrix& X0, const NnlsConfig& cfg) {
  if (A.rows() != B.rows())
    throw DimensionError("nnls: A and B row counts differ");
  if (X0.rows() != A.cols() || X0.cols() != B.cols())
    throw DimensionError("nnls: X0 must be (cols of A) x (cols of B)");
  if (cfg.max_iters < 1 || cfg.tol <= 0.0)
    throw ValidationError("nnls: max_iters >= 1 and tol > 0 required");
  for (Index k = 0; k < A.cols(); ++k)
    if (A.col(k).cwiseAbs().maxCoeff() == 0.0)
      throw ZeroColumnError(k, "nnls: column " + std::to_string(k) +
                                   " of A is identically zero");

  const DenseMatrix G = A.transpose() * A;
  const DenseMatrix AtB = A.transpose() * B;
  // 1% head-room over the power-iteration estimate keeps 1/L a valid step.
  const double L = largest_eigenvalue(G) * 1.01;
  if (L <= 0.0) throw NumericError("nnls: Lipschitz constant is zero");

  DenseMatrix X = X0.cwiseMax(0.0);
  DenseMatrix grad = G * X - AtB;
  const double kkt0 = X.cwiseMin(grad).norm();
  if (kkt0 == 0.0) return X;

  DenseMatrix Y = X;
  double fX = gram_objective(X, G, AtB);
  double t = 1.0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    DenseMatrix Xn = (Y - (G * Y - AtB) / L).cwiseMax(0.0);
    double fn = gram_objective(Xn, G, AtB);
    if (cfg.restart && fn > fX) {
      // plain projected-gradient step from X is a guaranteed descent step
      Xn = (X - (G * X - AtB) / L).cwiseMax(0.0);
      fn = gram_objective(Xn, G, AtB);
      t = 1.0;
    }
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    Y = Xn + ((t - 1.0) / tn) * (Xn - X);
    X = std::move(Xn);
    fX = fn;
    t = tn;
    grad = G * X - AtB;
    if (X.cwiseMin(grad).norm() <= cfg.tol * kkt0) break;
  }
  return X;
}

Vector hals_update_column(const DenseMatrix& M, const DenseMatrix& U,
                          const DenseMatrix& V, Index k) {
  if (U.rows() != M.rows() || V.cols() != M.cols() || U.cols() != V.rows())
    throw DimensionError("hals_update_column: incompatible shapes");
  if (k < 0 || k >= U.cols())
    throw ValidationError("hals_update_column: k out of range");
  const double vnorm2 = V.row(k).squaredNorm();
  if (vnorm2 <= 1e-30)
    throw ZeroRowError(k, "hals_update_column: V(" + std::to_string(k) +
                              ",:) is numerically zero");
  // R_k V(k,:)^T = (M - UV + U(:,k) V(k,:)) V(k,:)^T
  Vector num = (M * V.row(k).transpose()) -
               U * (V * V.row(k).transpose()) + U.col(k) * vnorm2;
  return (num / vnorm2).cwiseMax(0.0);
}

}  // namespace nmfkit::nnls
