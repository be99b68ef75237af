#include "lmmse/least_squares.hpp"

#include <Eigen/QR>
#include <string>

#include "lmmse/errors.hpp"

namespace lmmse {

FittedEstimator fit_least_squares(const SampleBatch& batch) {
  const Eigen::Index n = batch.y.rows();
  const Eigen::Index m = batch.y.cols();
  require(batch.x.rows() == n, ErrorKind::DimensionMismatch, "X and Y row counts differ");
  require(n >= 1 && m >= 1, ErrorKind::InvalidArgument, "empty batch");
  if (n < m) {
    fail(ErrorKind::RankDeficient,
         "n = " + std::to_string(n) + " samples cannot determine an estimator with M = " +
             std::to_string(m));
  }

  Matrix gram(m, m);
  gram.setZero();
  gram.selfadjointView<Eigen::Lower>().rankUpdate(batch.y.transpose());
  gram = gram.selfadjointView<Eigen::Lower>();
  const double min_eig = symmetric_eigenvalues(gram).minCoeff();
  const double threshold = kRankTolerance * gram.trace() / static_cast<double>(m);
  if (!(min_eig > threshold)) {
    fail(ErrorKind::RankDeficient, "data matrix is not injective (smallest Gram eigenvalue " +
                                       std::to_string(min_eig) + ")");
  }

  FittedEstimator fit;
  fit.theta_hat = Eigen::HouseholderQR<Matrix>(batch.y).solve(batch.x);
  fit.n = n;
  fit.gram_min_eig = min_eig;
  fit.seed = batch.seed;
  return fit;
}

double empirical_mse(const Matrix& theta, const SampleBatch& batch) {
  require(theta.rows() == batch.y.cols() && theta.cols() == batch.x.cols(),
          ErrorKind::DimensionMismatch, "estimator shape does not match the batch");
  require(batch.x.rows() == batch.y.rows() && batch.x.rows() > 0, ErrorKind::DimensionMismatch,
          "X and Y row counts differ");
  return (batch.y * theta - batch.x).squaredNorm() / static_cast<double>(batch.x.rows());
}

double test_error(const Matrix& theta, const SampleBatch& test_batch) {
  return empirical_mse(theta, test_batch);
}

Matrix estimation_error_samples(const SampleBatch& batch, const LmmseSolution& sol) {
  require(batch.y.cols() == sol.theta_star.rows() && batch.x.cols() == sol.theta_star.cols(),
          ErrorKind::DimensionMismatch, "batch does not match the LMMSE solution");
  return batch.x - batch.y * sol.theta_star;
}

Matrix estimator_difference(const FittedEstimator& fit, const LmmseSolution& sol) {
  require(fit.theta_hat.rows() == sol.theta_star.rows() &&
              fit.theta_hat.cols() == sol.theta_star.cols(),
          ErrorKind::DimensionMismatch, "fit does not match the LMMSE solution");
  return fit.theta_hat - sol.theta_star;
}

}  // namespace lmmse
