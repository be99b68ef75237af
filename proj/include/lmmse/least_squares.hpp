#pragma once

#include "lmmse/linalg.hpp"
#include "lmmse/model.hpp"
#include "lmmse/rng.hpp"
#include "lmmse/sampling.hpp"

namespace lmmse {

struct FittedEstimator {
  Matrix theta_hat;           // M x N
  Eigen::Index n = 0;         // training sample count
  double gram_min_eig = 0.0;  // smallest eigenvalue of Y^T Y
  SeedSpec seed;
};

/// Relative rank tolerance: the fit is refused unless
/// lambda_min(Y^T Y) > kRankTolerance * trace(Y^T Y) / M.
inline constexpr double kRankTolerance = 1e-12;

/// theta_hat = argmin (1/n) ||Y theta - X||_F^2 via Householder QR of Y.
/// Throws RankDeficient when n < M or Y is numerically not injective.
FittedEstimator fit_least_squares(const SampleBatch& batch);

/// (1/n) ||Y theta - X||_F^2.
double empirical_mse(const Matrix& theta, const SampleBatch& batch);

/// Empirical MSE on a held-out batch.
double test_error(const Matrix& theta, const SampleBatch& test_batch);

/// E = X - Y theta*.
Matrix estimation_error_samples(const SampleBatch& batch, const LmmseSolution& sol);

/// theta_hat - theta*.
Matrix estimator_difference(const FittedEstimator& fit, const LmmseSolution& sol);

}  // namespace lmmse
