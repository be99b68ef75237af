#include "lmmse/model.hpp"

#include <string>

#include "lmmse/errors.hpp"

namespace lmmse {
namespace {

void check_covariance(const Matrix& c, const char* name) {
  require(c.rows() == c.cols(), ErrorKind::DimensionMismatch, std::string(name) + " must be square");
  require(c.allFinite(), ErrorKind::InvalidArgument, std::string(name) + " has non-finite entries");
  require(relative_asymmetry(c) <= kSymmetryTolerance, ErrorKind::NonSymmetric,
          std::string(name) + " is not symmetric");
  const Matrix sym = symmetrized(c);
  Eigen::LLT<Matrix> llt(sym);
  require(llt.info() == Eigen::Success && symmetric_eigenvalues(sym).minCoeff() > 0.0,
          ErrorKind::NotPositiveDefinite, std::string(name) + " is not positive definite");
}

void check_theta(const LmmseSolution& sol, const Matrix& theta) {
  require(theta.rows() == sol.theta_star.rows() && theta.cols() == sol.theta_star.cols(),
          ErrorKind::DimensionMismatch,
          "estimator must be " + std::to_string(sol.theta_star.rows()) + "x" +
              std::to_string(sol.theta_star.cols()));
}

}  // namespace

LinearModel build_model(Matrix a, Matrix cxx, Matrix czz) {
  require(a.rows() > 0 && a.cols() > 0, ErrorKind::DimensionMismatch, "A must be non-empty");
  require(a.allFinite(), ErrorKind::InvalidArgument, "A has non-finite entries");
  require(cxx.rows() == a.cols(), ErrorKind::DimensionMismatch, "Cxx must be N x N with N = cols(A)");
  require(czz.rows() == a.rows(), ErrorKind::DimensionMismatch, "Czz must be M x M with M = rows(A)");
  check_covariance(cxx, "Cxx");
  check_covariance(czz, "Czz");
  return LinearModel(std::move(a), symmetrized(cxx), symmetrized(czz));
}

LmmseSolution solve_lmmse(const LinearModel& model) {
  const Matrix& a = model.a();
  const Matrix& cxx = model.cxx();
  const Matrix& czz = model.czz();

  LmmseSolution sol;
  sol.cyy = symmetrized(a * cxx * a.transpose() + czz);

  // theta* = Cyy^-1 A Cxx, i.e. the gain Cxx A^T Cyy^-1 transposed.
  const Matrix a_cxx = a * cxx;
  sol.theta_star = spd_solve(sol.cyy, a_cxx, "Cyy");
  sol.cee = symmetrized(cxx - a_cxx.transpose() * sol.theta_star);
  sol.mse = sol.cee.trace();

  const Matrix czz_inv_a = spd_solve(czz, a, "Czz");
  const Matrix information = symmetrized(a.transpose() * czz_inv_a + spd_inverse(cxx, "Cxx"));
  const Matrix cee_information = spd_inverse(information, "A^T Czz^-1 A + Cxx^-1");
  sol.cee_form_disagreement = relative_difference(sol.cee, cee_information);
  return sol;
}

double approximation_error(const LmmseSolution& sol, const Matrix& theta) {
  check_theta(sol, theta);
  const Matrix delta = theta - sol.theta_star;
  // trace(D^T Cyy D) without forming the N x N product.
  return std::max(0.0, (delta.array() * (sol.cyy * delta).array()).sum());
}

double mse_of_linear(const LinearModel& model, const LmmseSolution& sol, const Matrix& theta) {
  require(theta.rows() == model.data_dim() && theta.cols() == model.param_dim(),
          ErrorKind::DimensionMismatch, "estimator shape does not match the model");
  return sol.mse + approximation_error(sol, theta);
}

Vector tikhonov_estimate(const LinearModel& model, const Vector& y) {
  require(y.size() == model.data_dim(), ErrorKind::DimensionMismatch, "data vector must have length M");
  const Matrix& a = model.a();
  const Matrix czz_inv_a = spd_solve(model.czz(), a, "Czz");
  const Matrix normal = symmetrized(a.transpose() * czz_inv_a + spd_inverse(model.cxx(), "Cxx"));
  const Vector rhs = czz_inv_a.transpose() * y;
  return spd_solve(normal, rhs, "normal equations");
}

}  // namespace lmmse
