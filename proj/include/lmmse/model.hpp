#pragma once

#include "lmmse/linalg.hpp"

namespace lmmse {

/// Linear inverse problem Y = A X + Z with zero-mean X, Z and SPD covariances.
/// Immutable once built; construct through build_model.
class LinearModel {
 public:
  const Matrix& a() const noexcept { return a_; }
  const Matrix& cxx() const noexcept { return cxx_; }
  const Matrix& czz() const noexcept { return czz_; }

  /// M, the data dimension.
  Eigen::Index data_dim() const noexcept { return a_.rows(); }
  /// N, the parameter dimension.
  Eigen::Index param_dim() const noexcept { return a_.cols(); }

 private:
  friend LinearModel build_model(Matrix a, Matrix cxx, Matrix czz);
  LinearModel(Matrix a, Matrix cxx, Matrix czz)
      : a_(std::move(a)), cxx_(std::move(cxx)), czz_(std::move(czz)) {}

  Matrix a_;
  Matrix cxx_;
  Matrix czz_;
};

inline constexpr double kSymmetryTolerance = 1e-10;

/// Validates dimensions, symmetry (relative Frobenius, 1e-10) and strict
/// positive definiteness of both covariances. Covariances are stored
/// symmetrized.
LinearModel build_model(Matrix a, Matrix cxx, Matrix czz);

struct LmmseSolution {
  Matrix theta_star;  // M x N; the estimator is y -> theta_star^T y
  Matrix cee;         // N x N error covariance, dual-gain form
  double mse = 0.0;   // trace(cee)
  Matrix cyy;         // A Cxx A^T + Czz
  /// Relative Frobenius disagreement between the dual-gain and information
  /// forms of cee.
  double cee_form_disagreement = 0.0;
};

LmmseSolution solve_lmmse(const LinearModel& model);

/// trace((theta - theta*)^T Cyy (theta - theta*)).
double approximation_error(const LmmseSolution& sol, const Matrix& theta);

/// Exact MSE of y -> theta^T y: trace(Cee) + approximation_error(theta).
double mse_of_linear(const LinearModel& model, const LmmseSolution& sol, const Matrix& theta);

/// argmin_x ||A x - y||^2_{Czz^-1} + ||x||^2_{Cxx^-1}, solved from the normal
/// equations (A^T Czz^-1 A + Cxx^-1) x = A^T Czz^-1 y.
Vector tikhonov_estimate(const LinearModel& model, const Vector& y);

}  // namespace lmmse
