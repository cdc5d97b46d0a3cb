#include "nmfkit/nmf.hpp"

#include <cmath>

#include "nmfkit/nnls.hpp"
#include "nmfkit/separable.hpp"

namespace nmfkit::nmf {

namespace {

constexpr std::uint64_t kNmfTag = 0x6E6D66;  // stream namespace for this module

void validate(const DenseMatrix& M, const NmfConfig& cfg) {
  if (cfg.r < 1 || cfg.r > std::min(M.rows(), M.cols()))
    throw ValidationError("nmf: rank r out of range");
  if (cfg.max_outer_iters < 1)
    throw ValidationError("nmf: max_outer_iters must be >= 1");
  if (cfg.tol < 0.0) throw ValidationError("nmf: tol must be >= 0");
  if (cfg.mu_epsilon <= 0.0)
    throw ValidationError("nmf: mu_epsilon must be > 0");
  if ((M.array() < 0.0).any())
    throw ValidationError("nmf: M has negative entries");
}

void fill_scaled_uniform(DenseMatrix& A, double scale, Rng& rng) {
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j) A(i, j) = scale * rng.uniform();
}

void reseed_component(const DenseMatrix& M, DenseMatrix& U, DenseMatrix& V,
                      Index k, Rng& rng) {
  const double scale = std::sqrt(M.mean() / static_cast<double>(U.cols()));
  for (Index i = 0; i < U.rows(); ++i) U(i, k) = scale * rng.uniform();
  for (Index j = 0; j < V.cols(); ++j) V(k, j) = scale * rng.uniform();
}

}  // namespace

std::pair<DenseMatrix, DenseMatrix> init_factors(const DenseMatrix& M,
                                                 const NmfConfig& cfg) {
  validate(M, cfg);
  const Index p = M.rows(), n = M.cols(), r = cfg.r;
  DenseMatrix U(p, r), V(r, n);
  if (cfg.init == Init::RandomScaled) {
    Rng rng = Rng::derive(cfg.seed, {kNmfTag, 1});
    const double scale = std::sqrt(M.mean() / static_cast<double>(r));
    fill_scaled_uniform(U, scale, rng);
    fill_scaled_uniform(V, scale, rng);
  } else {
    const NormalizedData nd = normalize_columns_l1(M);
    const auto K_norm = separable::spa(nd.Mn, static_cast<int>(r));
    const auto kept = retained_indices(n, nd.removed);
    for (Index k = 0; k < r; ++k)
      U.col(k) = M.col(kept[static_cast<size_t>(K_norm[static_cast<size_t>(k)])]);
    nnls::NnlsConfig inner;
    inner.max_iters = 200;
    V = nnls::nnls_fast_gradient(U, M, DenseMatrix::Zero(r, n), inner);
  }
  return {std::move(U), std::move(V)};
}

void mu_sweep_inplace(const DenseMatrix& M, DenseMatrix& U, DenseMatrix& V,
                      double mu_epsilon) {
  U.array() *= (M * V.transpose()).array() /
               (U * (V * V.transpose())).cwiseMax(mu_epsilon).array();
  V.array() *= (U.transpose() * M).array() /
               ((U.transpose() * U) * V).cwiseMax(mu_epsilon).array();
}

void hals_sweep_inplace(const DenseMatrix& M, DenseMatrix& U, DenseMatrix& V,
                        Rng& reseed_rng) {
  const Index r = U.cols();
  DenseMatrix W = M * V.transpose();  // p x r
  DenseMatrix G = V * V.transpose();  // r x r
  for (Index k = 0; k < r; ++k) {
    if (G(k, k) <= 1e-30) {
      reseed_component(M, U, V, k, reseed_rng);
      W = M * V.transpose();
      G = V * V.transpose();
    }
    U.col(k) =
        ((W.col(k) - U * G.col(k) + U.col(k) * G(k, k)) / G(k, k)).cwiseMax(0.0);
  }
  DenseMatrix W2 = U.transpose() * M;  // r x n
  DenseMatrix G2 = U.transpose() * U;  // r x r
  for (Index k = 0; k < r; ++k) {
    if (G2(k, k) <= 1e-30) {
      reseed_component(M, U, V, k, reseed_rng);
      W2 = U.transpose() * M;
      G2 = U.transpose() * U;
    }
    V.row(k) = ((W2.row(k) - G2.row(k) * V + G2(k, k) * V.row(k)) / G2(k, k))
                   .cwiseMax(0.0);
  }
}

std::pair<DenseMatrix, DenseMatrix> mu_step(const DenseMatrix& M,
                                            const DenseMatrix& U,
                                            const DenseMatrix& V,
                                            double mu_epsilon) {
  if (U.rows() != M.rows() || V.cols() != M.cols() || U.cols() != V.rows())
    throw DimensionError("mu_step: incompatible shapes");
  DenseMatrix Un = U, Vn = V;
  mu_sweep_inplace(M, Un, Vn, mu_epsilon);
  return {std::move(Un), std::move(Vn)};
}

std::pair<DenseMatrix, DenseMatrix> hals_step(const DenseMatrix& M,
                                              const DenseMatrix& U,
                                              const DenseMatrix& V,
                                              std::uint64_t reseed_seed) {
  if (U.rows() != M.rows() || V.cols() != M.cols() || U.cols() != V.rows())
    throw DimensionError("hals_step: incompatible shapes");
  DenseMatrix Un = U, Vn = V;
  Rng rng = Rng::derive(reseed_seed, {kNmfTag, 3});
  hals_sweep_inplace(M, Un, Vn, rng);
  return {std::move(Un), std::move(Vn)};
}

NmfModel factorize(const DenseMatrix& M, const NmfConfig& cfg) {
  validate(M, cfg);
  NmfModel model;
  std::tie(model.U, model.V) = init_factors(M, cfg);
  Rng reseed_rng = Rng::derive(cfg.seed, {kNmfTag, 2});

  const double nM = M.norm();
  const auto rel = [&](double abs_res) { return nM > 0.0 ? abs_res / nM : abs_res; };

  double res = rel((M - model.U * model.V).norm());
  model.trace.emplace_back(0, res);

  nnls::NnlsConfig inner;
  inner.max_iters = 20;  // subproblems are deliberately solved coarsely
  inner.tol = 1e-10;

  for (int it = 1; it <= cfg.max_outer_iters; ++it) {
    switch (cfg.algorithm) {
      case Algorithm::MU:
        mu_sweep_inplace(M, model.U, model.V, cfg.mu_epsilon);
        break;
      case Algorithm::HALS:
        hals_sweep_inplace(M, model.U, model.V, reseed_rng);
        break;
      case Algorithm::ANLS: {
        for (Index k = 0; k < model.V.rows(); ++k)
          if (model.V.row(k).cwiseAbs().maxCoeff() == 0.0)
            reseed_component(M, model.U, model.V, k, reseed_rng);
        DenseMatrix Ut = nnls::nnls_fast_gradient(
            model.V.transpose(), M.transpose(), model.U.transpose(), inner);
        model.U = Ut.transpose();
        for (Index k = 0; k < model.U.cols(); ++k)
          if (model.U.col(k).cwiseAbs().maxCoeff() == 0.0)
            reseed_component(M, model.U, model.V, k, reseed_rng);
        model.V = nnls::nnls_fast_gradient(model.U, M, model.V, inner);
        break;
      }
    }
    res = rel((M - model.U * model.V).norm());
    if (!std::isfinite(res))
      throw NumericError("nmf: non-finite residual at iteration " +
                         std::to_string(it));
    model.trace.emplace_back(it, res);

    if (it >= 5) {
      double change = 0.0;
      const size_t t = model.trace.size() - 1;
      for (size_t w = 0; w < 5; ++w)
        change += std::abs(model.trace[t - w].second - model.trace[t - w - 1].second);
      if (change / 5.0 < cfg.tol) {
        model.converged = true;
        break;
      }
    }
  }
  return model;
}

}  // namespace nmfkit::nmf
