#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nmfkit/dense_matrix.hpp"
#include "nmfkit/rng.hpp"

namespace nmfkit::nmf {

enum class Algorithm { MU, HALS, ANLS };
enum class Init { RandomScaled, SpaInit };

struct NmfConfig {
  int r = 2;
  Algorithm algorithm = Algorithm::HALS;
  Init init = Init::RandomScaled;
  int max_outer_iters = 500;
  double tol = 1e-7;  // windowed relative-residual-change stop
  std::uint64_t seed = 0;
  double mu_epsilon = 1e-16;  // floor for multiplicative-update denominators
};

struct NmfModel {
  DenseMatrix U;  // p x r, nonnegative
  DenseMatrix V;  // r x n, nonnegative
  std::vector<std::pair<int, double>> trace;  // (iteration, relative residual)
  bool converged = false;
};

/// RandomScaled: i.i.d. uniform(0,1) entries scaled by sqrt(mean(M)/r).
/// SpaInit: U = M(:,K) for the SPA column subset, V from one NNLS solve.
/// Deterministic given cfg.seed.
std::pair<DenseMatrix, DenseMatrix> init_factors(const DenseMatrix& M,
                                                 const NmfConfig& cfg);

/// One multiplicative-update pass: U <- U o [MV^T]/[UVV^T] then
/// V <- V o [U^T M]/[U^T U V], denominators floored at mu_epsilon.
std::pair<DenseMatrix, DenseMatrix> mu_step(const DenseMatrix& M,
                                            const DenseMatrix& U,
                                            const DenseMatrix& V,
                                            double mu_epsilon = 1e-16);

/// One full HALS sweep: each column of U then each row of V via its exact
/// closed-form nonnegative least-squares minimizer. Numerically dead
/// components (||V(k,:)|| ~ 0) are reseeded from a stream derived from
/// reseed_seed.
std::pair<DenseMatrix, DenseMatrix> hals_step(const DenseMatrix& M,
                                              const DenseMatrix& U,
                                              const DenseMatrix& V,
                                              std::uint64_t reseed_seed = 0);

/// Two-block coordinate descent with the configured update rule, stopping
/// when the relative residual change averaged over 5 iterations drops below
/// cfg.tol or max_outer_iters is reached.
NmfModel factorize(const DenseMatrix& M, const NmfConfig& cfg);

// In-place sweep primitives shared with the exact-NMF search.
void mu_sweep_inplace(const DenseMatrix& M, DenseMatrix& U, DenseMatrix& V,
                      double mu_epsilon);
void hals_sweep_inplace(const DenseMatrix& M, DenseMatrix& U, DenseMatrix& V,
                        Rng& reseed_rng);

}  // namespace nmfkit::nmf
