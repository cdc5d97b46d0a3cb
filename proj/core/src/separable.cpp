#include "nmfkit/separable.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "nmfkit/nnls.hpp"

namespace nmfkit::separable {

std::vector<Index> spa(const DenseMatrix& M, int r) {
  if (r < 1) throw ValidationError("spa: r must be >= 1");
  if (r > M.cols()) throw ValidationError("spa: r exceeds column count");

  DenseMatrix R = M;
  Vector norms2 = R.colwise().squaredNorm().transpose();
  const double zero_tol = norms2.maxCoeff() * 1e-24;

  std::vector<Index> K;
  K.reserve(static_cast<size_t>(r));
  for (int t = 0; t < r; ++t) {
    Index best = 0;
    double best_val = -1.0;
    for (Index j = 0; j < R.cols(); ++j) {
      if (norms2(j) > best_val) {  // strict ">" keeps the lowest index on ties
        best_val = norms2(j);
        best = j;
      }
    }
    if (best_val <= zero_tol)
      throw RankDeficiencyError(
          K, "spa: residual numerically zero after " +
                 std::to_string(K.size()) + " of " + std::to_string(r) +
                 " picks");
    K.push_back(best);
    Vector q = R.col(best) / R.col(best).norm();
    R -= q * (q.transpose() * R);
    norms2 = R.colwise().squaredNorm().transpose();
  }
  return K;
}

DenseMatrix pca_denoise(const DenseMatrix& M, int k) {
  if (k < 1 || k > std::min(M.rows(), M.cols()))
    throw ValidationError("pca_denoise: k out of range");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  return svd.matrixU().leftCols(k) * sv.head(k).asDiagonal() *
         svd.matrixV().leftCols(k).transpose();
}

DenseMatrix mve_precondition(const DenseMatrix& R, int r) {
  if (r < 2) throw ValidationError("mve_precondition: r must be >= 2");
  if (R.rows() != r)
    throw DimensionError("mve_precondition: expected " + std::to_string(r) +
                         " reduced coordinates per column");
  if (numeric_rank(R, 1e-12) < r)
    throw ValidationError("mve_precondition: degenerate point set");

  const Index n = R.cols();
  Vector u = Vector::Constant(n, 1.0 / static_cast<double>(n));
  const double d = static_cast<double>(r);
  DenseMatrix Mu(r, r);
  for (int it = 0; it < 10000; ++it) {
    Mu = R * u.asDiagonal() * R.transpose();
    Eigen::LLT<Eigen::MatrixXd> llt(Mu);
    if (llt.info() != Eigen::Success)
      throw NumericError("mve_precondition: design matrix not positive definite");
    Eigen::MatrixXd Z = llt.solve(Eigen::MatrixXd(R));
    Vector kappa =
        (Eigen::MatrixXd(R).array() * Z.array()).colwise().sum().transpose();
    Index jmax = 0;
    const double kmax = kappa.maxCoeff(&jmax);
    if (kmax <= d * (1.0 + 1e-6)) break;
    const double beta = (kmax - d) / (d * (kmax - 1.0));
    u *= (1.0 - beta);
    u(jmax) += beta;
  }
  // Q = Mu^{-1}/d defines the covering ellipsoid; L = Q^{1/2} whitens it.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Mu / d);
  Vector inv_sqrt = eig.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  DenseMatrix L = eig.eigenvectors() * inv_sqrt.asDiagonal() *
                  eig.eigenvectors().transpose();
  return L;
}

std::vector<Index> refine_vertices(const DenseMatrix& M,
                                   std::vector<Index> K) {
  const int r = static_cast<int>(K.size());
  if (r == 0) return K;
  for (int pass = 0; pass < 10; ++pass) {
    bool swapped = false;
    for (int t = 0; t < r; ++t) {
      // orthonormal basis of the other selected columns
      DenseMatrix B(M.rows(), r - 1);
      Index c = 0;
      for (int s = 0; s < r; ++s)
        if (s != t) B.col(c++) = M.col(K[static_cast<size_t>(s)]);
      Vector proj2;
      if (r > 1) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(B);
        Eigen::MatrixXd Q = qr.householderQ() *
                            Eigen::MatrixXd::Identity(M.rows(), r - 1);
        proj2 = M.colwise().squaredNorm().transpose() -
                (Q.transpose() * M).colwise().squaredNorm().transpose();
      } else {
        proj2 = M.colwise().squaredNorm().transpose();
      }
      Index best = 0;
      double best_val = -1.0;
      for (Index j = 0; j < M.cols(); ++j) {
        if (proj2(j) > best_val) {
          best_val = proj2(j);
          best = j;
        }
      }
      if (best != K[static_cast<size_t>(t)] &&
          best_val > proj2(K[static_cast<size_t>(t)])) {
        K[static_cast<size_t>(t)] = best;
        swapped = true;
      }
    }
    if (!swapped) break;
  }
  return K;
}

DenseMatrix abundances(const DenseMatrix& M, const std::vector<Index>& K) {
  const Index r = static_cast<Index>(K.size());
  if (r == 0) throw ValidationError("abundances: empty index set");
  DenseMatrix A(M.rows(), r);
  for (Index k = 0; k < r; ++k) {
    const Index j = K[static_cast<size_t>(k)];
    if (j < 0 || j >= M.cols())
      throw ValidationError("abundances: index out of range");
    A.col(k) = M.col(j);
  }
  nnls::NnlsConfig cfg;
  cfg.max_iters = 1000;
  cfg.tol = 1e-10;
  return nnls::nnls_fast_gradient(A, M, DenseMatrix::Zero(r, M.cols()), cfg);
}

Vector project_row_selfdict(const Vector& y, Index diag) {
  const Index n = y.size();
  if (diag < 0 || diag >= n)
    throw ValidationError("project_row_selfdict: diag out of range");

  // Off-diagonal entries above the diagonal value are the only ones whose
  // clamp cost depends on d; sort them once and scan the segments.
  std::vector<double> z;
  z.reserve(static_cast<size_t>(n) - 1);
  for (Index j = 0; j < n; ++j)
    if (j != diag && y(j) > 0.0) z.push_back(y(j));
  std::sort(z.begin(), z.end(), std::greater<double>());

  const size_t m = z.size();
  double cum = 0.0;
  double d = y(diag);  // k = 0 candidate
  for (size_t k = 0;; ++k) {
    const double cand = (y(diag) + cum) / (1.0 + static_cast<double>(k));
    const double upper = (k == 0) ? std::numeric_limits<double>::infinity()
                                  : z[k - 1];
    const double lower = (k == m) ? -std::numeric_limits<double>::infinity()
                                  : z[k];
    if (cand <= upper && cand >= lower) {
      d = cand;
      break;
    }
    if (k == m) {
      d = cand;
      break;
    }
    cum += z[k];
  }
  d = std::clamp(d, 0.0, 1.0);

  Vector x(n);
  for (Index j = 0; j < n; ++j) x(j) = std::clamp(y(j), 0.0, d);
  x(diag) = d;
  return x;
}

namespace {

std::vector<Index> auto_candidates(const DenseMatrix& M, int r) {
  const int want = static_cast<int>(
      std::min<Index>(static_cast<Index>(5) * r, M.cols()));
  try {
    return spa(M, want);
  } catch (const RankDeficiencyError& e) {
    return e.found;  // fewer candidates than asked; caller checks the count
  }
}

}  // namespace

SelfDictSolution self_dictionary_full(const DenseMatrix& M,
                                      const SelfDictConfig& cfg, int r) {
  if (r < 1) throw ValidationError("self_dictionary: r must be >= 1");
  if (cfg.penalty <= 0.0)
    throw ValidationError("self_dictionary: penalty must be > 0");
  std::vector<Index> cand =
      cfg.candidates.empty() ? auto_candidates(M, r) : cfg.candidates;
  if (static_cast<int>(cand.size()) < r)
    throw ValidationError("self_dictionary: fewer than r candidates");
  for (Index c : cand)
    if (c < 0 || c >= M.cols())
      throw ValidationError("self_dictionary: candidate index out of range");
  {
    std::vector<Index> sorted = cand;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError("self_dictionary: duplicate candidate index");
  }

  const Index nc = static_cast<Index>(cand.size());
  const Index n = M.cols();
  DenseMatrix D(M.rows(), nc);
  for (Index c = 0; c < nc; ++c) D.col(c) = M.col(cand[static_cast<size_t>(c)]);

  const DenseMatrix G = D.transpose() * D;    // nc x nc
  const DenseMatrix H = D.transpose() * M;    // nc x n
  const double mu = cfg.penalty;
  const double L = std::max(2.0 * mu * nnls::largest_eigenvalue(G) * 1.01,
                            1e-12);

  // gradient of tr(X) restricted to candidate rows
  DenseMatrix E = DenseMatrix::Zero(nc, n);
  for (Index c = 0; c < nc; ++c) E(c, cand[static_cast<size_t>(c)]) = 1.0;

  const auto project = [&](DenseMatrix& X) {
    for (Index c = 0; c < nc; ++c)
      X.row(c) =
          project_row_selfdict(X.row(c).transpose(), cand[static_cast<size_t>(c)])
              .transpose();
  };
  // objective up to the constant mu*||M||^2
  const auto objective = [&](const DenseMatrix& X) {
    return (X.cwiseProduct(E)).sum() +
           mu * ((X.cwiseProduct(G * X)).sum() - 2.0 * (X.cwiseProduct(H)).sum());
  };

  DenseMatrix X = DenseMatrix::Zero(nc, n);
  DenseMatrix Y = X;
  double fX = objective(X);
  double t = 1.0;
  int flat = 0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    DenseMatrix Xn = Y - (E + 2.0 * mu * (G * Y - H)) / L;
    project(Xn);
    double fn = objective(Xn);
    if (fn > fX) {  // restart: guaranteed-descent step from X
      Xn = X - (E + 2.0 * mu * (G * X - H)) / L;
      project(Xn);
      fn = objective(Xn);
      t = 1.0;
    }
    if (!std::isfinite(fn))
      throw NumericError("self_dictionary: non-finite objective");
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    Y = Xn + ((t - 1.0) / tn) * (Xn - X);
    const double change = (Xn - X).norm();
    X = std::move(Xn);
    flat = (change <= cfg.tol * std::max(1.0, X.norm())) ? flat + 1 : 0;
    fX = fn;
    t = tn;
    if (flat >= 5) break;
  }

  // r largest diagonal entries, ties to the lowest original index
  std::vector<Index> order(static_cast<size_t>(nc));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double da = X(a, cand[static_cast<size_t>(a)]);
    const double db = X(b, cand[static_cast<size_t>(b)]);
    if (da != db) return da > db;
    return cand[static_cast<size_t>(a)] < cand[static_cast<size_t>(b)];
  });

  SelfDictSolution sol;
  sol.candidates = cand;
  sol.X = std::move(X);
  sol.result.K.reserve(static_cast<size_t>(r));
  for (int k = 0; k < r; ++k)
    sol.result.K.push_back(cand[static_cast<size_t>(order[static_cast<size_t>(k)])]);
  sol.result.V = abundances(M, sol.result.K);
  DenseMatrix MK(M.rows(), r);
  for (int k = 0; k < r; ++k) MK.col(k) = M.col(sol.result.K[static_cast<size_t>(k)]);
  sol.result.residual = (M - MK * sol.result.V).norm();
  return sol;
}

SeparableResult self_dictionary(const DenseMatrix& M, const SelfDictConfig& cfg,
                                int r) {
  return self_dictionary_full(M, cfg, r).result;
}

}  // namespace nmfkit::separable
