#include "lmmse/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <string>

#include "lmmse/errors.hpp"

namespace lmmse {

double relative_asymmetry(const Matrix& c) {
  const double norm = c.norm();
  if (norm == 0.0) return 0.0;
  return (c - c.transpose()).norm() / norm;
}

double relative_difference(const Matrix& a, const Matrix& b) {
  const double scale = std::max(a.norm(), b.norm());
  if (scale == 0.0) return 0.0;
  return (a - b).norm() / scale;
}

Eigen::LLT<Matrix> spd_cholesky(const Matrix& c, std::string_view what) {
  Eigen::LLT<Matrix> llt(c);
  if (llt.info() == Eigen::Success) return llt;
  const auto dim = static_cast<double>(c.rows());
  const double jitter = 1e-12 * c.trace() / dim;
  if (jitter > 0.0) {
    Matrix shifted = c;
    shifted.diagonal().array() += jitter;
    llt.compute(shifted);
    if (llt.info() == Eigen::Success) return llt;
  }
  fail(ErrorKind::NumericalSingularity, "Cholesky factorization of " + std::string(what) + " failed");
}

Matrix spd_solve(const Matrix& c, const Matrix& b, std::string_view what) {
  return spd_cholesky(c, what).solve(b);
}

Matrix spd_inverse(const Matrix& c, std::string_view what) {
  return symmetrized(spd_solve(c, Matrix::Identity(c.rows(), c.cols()), what));
}

Vector symmetric_eigenvalues(const Matrix& c) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(c, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Matrix symmetric_inverse_sqrt(const Matrix& c, std::string_view what) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(c);
  if (solver.info() != Eigen::Success) {
    fail(ErrorKind::NumericalSingularity, "eigendecomposition of " + std::string(what) + " failed");
  }
  const Vector& lambda = solver.eigenvalues();
  const double floor = 1e-14 * std::max(lambda.cwiseAbs().maxCoeff(), 1e-300);
  if (lambda.minCoeff() <= floor) {
    fail(ErrorKind::NumericalSingularity, std::string(what) + " is not positive definite");
  }
  const Matrix& v = solver.eigenvectors();
  const Vector scale = lambda.array().rsqrt();
  return symmetrized(v * scale.asDiagonal() * v.transpose());
}

double spectral_norm_psd(const Matrix& c) {
  if (c.size() == 0) return 0.0;
  return std::max(0.0, symmetric_eigenvalues(c).maxCoeff());
}

}  // namespace lmmse
