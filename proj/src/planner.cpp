#include "lmmse/planner.hpp"

#include <cmath>
#include <string>

#include "lmmse/errors.hpp"

namespace lmmse::planner {
namespace {

void check_m(std::int64_t m) { require(m >= 1, ErrorKind::InvalidArgument, "M must be a positive integer"); }

void check_eps(double eps) {
  require(std::isfinite(eps) && eps > 0.0, ErrorKind::InvalidArgument, "eps must be positive");
}

double log_term(double delta) {
  require(delta > 0.0 && delta < 1.0, ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
  return std::log(3.0 / delta);
}

struct TraceStats {
  double trace;
  double trace2;
  double norm;
};

TraceStats psd_stats(const Matrix& c, const char* name) {
  require(c.rows() == c.cols() && c.rows() > 0, ErrorKind::DimensionMismatch,
          std::string(name) + " must be square");
  require(relative_asymmetry(c) <= 1e-10, ErrorKind::NonSymmetric, std::string(name) + " is not symmetric");
  const Vector lambda = symmetric_eigenvalues(symmetrized(c));
  const double scale = std::max(lambda.cwiseAbs().maxCoeff(), 1e-300);
  require(lambda.minCoeff() >= -1e-10 * scale, ErrorKind::NotPositiveDefinite,
          std::string(name) + " is not positive semidefinite");
  const Vector clipped = lambda.cwiseMax(0.0);
  return {clipped.sum(), clipped.squaredNorm(), clipped.maxCoeff()};
}

}  // namespace

void validate(const PlanInputs& in) {
  check_m(in.m);
  check_eps(in.eps);
  log_term(in.delta);
  require(in.nu > 0.0 && in.nu <= 1.0, ErrorKind::InvalidArgument, "nu must lie in (0, 1]");
  require(in.rho > 0.0, ErrorKind::InvalidArgument, "rho must be positive");
  require(in.c_abs > 0.0, ErrorKind::InvalidArgument, "c must be positive");
}

std::int64_t n_expected_gaussian(std::int64_t m, double eps) {
  check_m(m);
  check_eps(eps);
  const double md = static_cast<double>(m);
  // k = ceil(M / eps). The sign of fma(k, eps, -M) is the exact sign of k*eps - M.
  double k = std::ceil(md / eps);
  while (k > 1.0 && std::fma(k - 1.0, eps, -md) >= 0.0) k -= 1.0;
  while (std::fma(k, eps, -md) < 0.0) k += 1.0;
  return static_cast<std::int64_t>(k) + m + 1;
}

double n_tail_gaussian(std::int64_t m, double eps, double delta, double nu) {
  check_m(m);
  check_eps(eps);
  require(nu > 0.0 && nu <= 1.0, ErrorKind::InvalidArgument, "nu must lie in (0, 1]");
  const double l = log_term(delta);
  const double md = static_cast<double>(m);
  const double inner = md + 2.0 * std::sqrt(md * nu * l) + 2.0 * nu * l;
  const double root = std::sqrt(inner / eps) + std::sqrt(md) + std::sqrt(l);
  return root * root;
}

double n_tail_gaussian_simplified(std::int64_t m, double eps, double delta) {
  check_m(m);
  check_eps(eps);
  const double l = log_term(delta);
  const double md = static_cast<double>(m);
  return (md + 2.0 * std::sqrt(md * l) + 2.0 * l) * (1.0 / eps + 2.0 / std::sqrt(eps) + 1.0);
}

double n_tail_gaussian_exact(const Matrix& cee, std::int64_t m, double eps, double delta) {
  const TraceStats s = psd_stats(cee, "Cee");
  require(s.trace > 0.0, ErrorKind::InvalidArgument, "trace(Cee) must be positive");
  return n_tail_general(cee, s.trace, m, eps, delta, 1.0, 1.0);
}

double n_tail_general(const Matrix& c, double trace_cee, std::int64_t m, double eps, double delta,
                      double rho, double c_abs) {
  check_m(m);
  check_eps(eps);
  require(trace_cee > 0.0, ErrorKind::InvalidArgument, "trace(Cee) must be positive");
  require(rho > 0.0, ErrorKind::InvalidArgument, "rho must be positive");
  require(c_abs > 0.0, ErrorKind::InvalidArgument, "c must be positive");
  const double l = log_term(delta);
  const TraceStats s = psd_stats(c, "C");
  const double md = static_cast<double>(m);
  const double inner = s.trace * md + 2.0 * std::sqrt(md * s.trace2 * l) + 2.0 * s.norm * l;
  const double root = std::sqrt(inner / (trace_cee * eps)) + c_abs * rho * rho * (std::sqrt(md) + std::sqrt(l));
  return root * root;
}

double n_tail_general_nu(std::int64_t m, double eps, double delta, double nu, double rho, double c_abs) {
  check_m(m);
  check_eps(eps);
  require(nu > 0.0 && nu <= 1.0, ErrorKind::InvalidArgument, "nu must lie in (0, 1]");
  require(rho > 0.0, ErrorKind::InvalidArgument, "rho must be positive");
  require(c_abs > 0.0, ErrorKind::InvalidArgument, "c must be positive");
  const double l = log_term(delta);
  const double md = static_cast<double>(m);
  const double inner = md + 2.0 * std::sqrt(md * nu * l) + 2.0 * nu * l;
  const double root = std::sqrt(inner / eps) + c_abs * rho * rho * (std::sqrt(md) + std::sqrt(l));
  return root * root;
}

double expected_approx_error_gaussian(double trace_cee, std::int64_t m, std::int64_t n) {
  check_m(m);
  require(trace_cee >= 0.0, ErrorKind::InvalidArgument, "trace(Cee) must be nonnegative");
  if (n <= m + 1) {
    fail(ErrorKind::NTooSmall, "expected error is infinite for n <= M + 1 (n = " + std::to_string(n) +
                                   ", M = " + std::to_string(m) + ")");
  }
  return trace_cee * static_cast<double>(m) / static_cast<double>(n - m - 1);
}

double trace_lower_bound(std::int64_t m, std::int64_t n) {
  check_m(m);
  require(n >= m, ErrorKind::NTooSmall, "lower bound needs n >= M");
  return static_cast<double>(m) / static_cast<double>(n);
}

double asymptotic_gaussian_limit(double trace_cee, double gamma) {
  require(trace_cee >= 0.0, ErrorKind::InvalidArgument, "trace(Cee) must be nonnegative");
  require(gamma > 0.0 && gamma < 1.0, ErrorKind::DegenerateGamma, "gamma must lie in (0, 1)");
  return trace_cee * gamma / (1.0 - gamma);
}

AsymptoticBound asymptotic_error_bound(double trace_c, double trace_c2, double norm_c,
                                       double mu_norm_sq, double rho, double c_abs, double gamma) {
  require(trace_c >= 0.0 && trace_c2 >= 0.0 && norm_c >= 0.0 && mu_norm_sq >= 0.0,
          ErrorKind::InvalidArgument, "trace/norm statistics must be nonnegative");
  require(rho > 0.0 && c_abs > 0.0, ErrorKind::InvalidArgument, "rho and c must be positive");
  const double crho2 = c_abs * rho * rho;
  require(gamma > 0.0 && gamma < 1.0 / (crho2 * crho2), ErrorKind::GammaOutOfRange,
          "gamma must lie in (0, 1/(c^2 rho^4))");
  const double gap = 1.0 - crho2 * std::sqrt(gamma);
  const double gap2 = gap * gap;
  return {trace_c * gamma / gap2, 1.5 * rho * rho * mu_norm_sq * gamma / (gap2 * gap2)};
}

std::int64_t as_sample_count(double n) {
  require(std::isfinite(n) && n >= 0.0, ErrorKind::InvalidArgument, "sample count must be finite");
  return static_cast<std::int64_t>(std::ceil(n));
}

}  // namespace lmmse::planner
