#pragma once

#include "lmmse/linalg.hpp"
#include "lmmse/model.hpp"
#include "lmmse/rng.hpp"

namespace lmmse {

/// Paired samples, one per row: x is n x N, y is n x M.
struct SampleBatch {
  Matrix x;
  Matrix y;
  SeedSpec seed;

  Eigen::Index size() const noexcept { return x.rows(); }
};

/// rows x cols matrix of independent standard normals, filled row by row.
Matrix standard_normal_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// n pairs (X_i, A X_i + Z_i) with X_i = L_x xi_i from the Cholesky factor of
/// Cxx (Z_i likewise from Czz).
SampleBatch sample_gaussian_pairs(const LinearModel& model, Eigen::Index n, const SeedSpec& seed);

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// columns of Q rescaled by sign(diag(R)).
Matrix random_orthogonal(Eigen::Index k, Rng& rng);
Matrix random_orthogonal(Eigen::Index k, const SeedSpec& seed);

inline constexpr double kDefaultEigenvalueFloor = 1e-6;

/// P diag(lambda) P^T with P Haar orthogonal and lambda_i ~ U[eig_floor, 1].
Matrix random_spd_covariance(Eigen::Index k, Rng& rng, double eig_floor = kDefaultEigenvalueFloor);
Matrix random_spd_covariance(Eigen::Index k, const SeedSpec& seed,
                             double eig_floor = kDefaultEigenvalueFloor);

/// n x M matrix of i.i.d. U[-sigma sqrt(3), sigma sqrt(3)] entries
/// (covariance sigma^2 I). Requires sigma > 0.
Matrix sample_uniform_noise(Eigen::Index m, double sigma, Eigen::Index n, Rng& rng);
Matrix sample_uniform_noise(Eigen::Index m, double sigma, Eigen::Index n, const SeedSpec& seed);

/// Y Cyy^{-1/2} with the symmetric inverse square root.
Matrix whitened_design(const LmmseSolution& sol, const SampleBatch& batch);
Matrix whitened_design(const Matrix& cyy_inv_sqrt, const Matrix& y);

}  // namespace lmmse
