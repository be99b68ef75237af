#include "lmmse/sampling.hpp"

#include <Eigen/QR>
#include <cmath>

#include "lmmse/errors.hpp"

namespace lmmse {

Matrix standard_normal_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.normal();
  return g;
}

SampleBatch sample_gaussian_pairs(const LinearModel& model, Eigen::Index n, const SeedSpec& seed) {
  require(n >= 1, ErrorKind::InvalidArgument, "sample count must be positive");
  const Matrix lx = spd_cholesky(model.cxx(), "Cxx").matrixL();
  const Matrix lz = spd_cholesky(model.czz(), "Czz").matrixL();

  Rng rng(seed);
  SampleBatch batch;
  batch.seed = seed;
  batch.x = standard_normal_matrix(n, model.param_dim(), rng) * lx.transpose();
  const Matrix z = standard_normal_matrix(n, model.data_dim(), rng) * lz.transpose();
  batch.y = batch.x * model.a().transpose() + z;
  return batch;
}

Matrix random_orthogonal(Eigen::Index k, Rng& rng) {
  require(k >= 1, ErrorKind::InvalidArgument, "orthogonal matrix size must be positive");
  const Matrix g = standard_normal_matrix(k, k, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

Matrix random_orthogonal(Eigen::Index k, const SeedSpec& seed) {
  Rng rng(seed);
  return random_orthogonal(k, rng);
}

Matrix random_spd_covariance(Eigen::Index k, Rng& rng, double eig_floor) {
  require(eig_floor >= 0.0 && eig_floor <= 1.0, ErrorKind::InvalidArgument,
          "eigenvalue floor must lie in [0, 1]");
  const Matrix p = random_orthogonal(k, rng);
  Vector lambda(k);
  for (Eigen::Index i = 0; i < k; ++i) lambda(i) = rng.uniform(eig_floor, 1.0);
  return symmetrized(p * lambda.asDiagonal() * p.transpose());
}

Matrix random_spd_covariance(Eigen::Index k, const SeedSpec& seed, double eig_floor) {
  Rng rng(seed);
  return random_spd_covariance(k, rng, eig_floor);
}

Matrix sample_uniform_noise(Eigen::Index m, double sigma, Eigen::Index n, Rng& rng) {
  require(sigma > 0.0 && std::isfinite(sigma), ErrorKind::InvalidArgument, "sigma must be positive");
  require(m >= 1 && n >= 1, ErrorKind::InvalidArgument, "noise dimensions must be positive");
  const double half_width = sigma * std::sqrt(3.0);
  Matrix z(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) z(i, j) = rng.uniform(-half_width, half_width);
  return z;
}

Matrix sample_uniform_noise(Eigen::Index m, double sigma, Eigen::Index n, const SeedSpec& seed) {
  Rng rng(seed);
  return sample_uniform_noise(m, sigma, n, rng);
}

Matrix whitened_design(const LmmseSolution& sol, const SampleBatch& batch) {
  require(batch.y.cols() == sol.cyy.rows(), ErrorKind::DimensionMismatch,
          "data batch does not match Cyy");
  return whitened_design(symmetric_inverse_sqrt(sol.cyy, "Cyy"), batch.y);
}

Matrix whitened_design(const Matrix& cyy_inv_sqrt, const Matrix& y) {
  require(y.cols() == cyy_inv_sqrt.rows(), ErrorKind::DimensionMismatch,
          "data batch does not match Cyy");
  return y * cyy_inv_sqrt;
}

}  // namespace lmmse
