#include "lmmse/tail_bounds.hpp"

#include <cmath>
#include <string>

#include "lmmse/errors.hpp"

namespace lmmse::bounds {
namespace {

void check_nonneg(double v, const char* name) {
  require(std::isfinite(v) && v >= 0.0, ErrorKind::InvalidArgument, std::string(name) + " must be nonnegative");
}

// 1 + 2 sqrt(ratio * t), where ratio = num / den; the 0/0 case at t = 0 or
// num = 0 contributes nothing.
double mean_inflation(double num, double den, double mean_term, double t) {
  if (mean_term == 0.0 || t == 0.0 || num == 0.0) return 1.0;
  if (den == 0.0) {
    fail(ErrorKind::DegenerateSigma, "second-moment trace is zero while a mean term is present");
  }
  return 1.0 + 2.0 * std::sqrt(num * t / den);
}

}  // namespace

TraceStats trace_stats(const Matrix& c) {
  require(c.rows() == c.cols(), ErrorKind::DimensionMismatch, "C must be square");
  require(relative_asymmetry(c) <= 1e-10, ErrorKind::NonSymmetric, "C is not symmetric");
  const Vector lambda = symmetric_eigenvalues(symmetrized(c)).cwiseMax(0.0);
  return {lambda.sum(), lambda.squaredNorm(), lambda.size() ? lambda.maxCoeff() : 0.0};
}

double quadratic_form_bound(double trace_s, double trace_s2, double norm_s, double sigma,
                            double mean_norm_sq, double t) {
  check_nonneg(trace_s, "trace(Sigma)");
  check_nonneg(trace_s2, "trace(Sigma^2)");
  check_nonneg(norm_s, "||Sigma||");
  check_nonneg(sigma, "sigma");
  check_nonneg(mean_norm_sq, "mean term");
  check_nonneg(t, "t");
  const double spread = sigma * sigma * (trace_s + 2.0 * std::sqrt(trace_s2 * t) + 2.0 * norm_s * t);
  return spread + mean_norm_sq * mean_inflation(norm_s * norm_s, trace_s2, mean_norm_sq, t);
}

double sum_subgaussian_bound(std::int64_t m, double sigma, double t) {
  require(m >= 1, ErrorKind::InvalidArgument, "M must be positive");
  check_nonneg(sigma, "sigma");
  check_nonneg(t, "t");
  const double md = static_cast<double>(m);
  return sigma * sigma * (md + 2.0 * std::sqrt(md * t) + 2.0 * t);
}

double product_subgaussian_param(double sigma, double b) {
  check_nonneg(sigma, "sigma");
  check_nonneg(b, "b");
  return b * sigma * std::sqrt(1.5);
}

double weighted_sum_bound(std::int64_t m, double sigma, double b, double t) {
  check_nonneg(b, "b");
  return 1.5 * b * b * sum_subgaussian_bound(m, sigma, t);
}

double matrix_quadratic_bound(double trace_c, double trace_c2, double norm_c, double trace_s,
                              double trace_s2, double norm_s, double mean_f_sq, double t) {
  check_nonneg(trace_c, "trace(C)");
  check_nonneg(trace_c2, "trace(C^2)");
  check_nonneg(norm_c, "||C||");
  check_nonneg(trace_s, "trace(Sigma)");
  check_nonneg(trace_s2, "trace(Sigma^2)");
  check_nonneg(norm_s, "||Sigma||");
  check_nonneg(mean_f_sq, "mean term");
  check_nonneg(t, "t");
  const double spread = trace_c * trace_s + 2.0 * std::sqrt(trace_c2 * trace_s2 * t) + 2.0 * norm_c * norm_s * t;
  const double num = norm_c * norm_c * norm_s * norm_s;
  return spread + mean_f_sq * mean_inflation(num, trace_c2 * trace_s2, mean_f_sq, t);
}

GramStats gram_stats(const Matrix& g) {
  require(g.rows() >= g.cols() && g.cols() >= 1, ErrorKind::RankDeficient,
          "G must have at least as many rows as columns");
  const Matrix gram = symmetrized(g.transpose() * g);
  const Vector lambda = symmetric_eigenvalues(gram);
  const double mean = lambda.sum() / static_cast<double>(lambda.size());
  if (!(lambda.minCoeff() > 1e-12 * mean)) fail(ErrorKind::RankDeficient, "G is not injective");
  GramStats s;
  s.lambda_min = lambda.minCoeff();
  s.lambda_max = lambda.maxCoeff();
  s.trace_inv = lambda.cwiseInverse().sum();
  s.trace_inv2 = lambda.cwiseInverse().squaredNorm();
  s.norm_inv = 1.0 / s.lambda_min;
  return s;
}

SingularValueInterval singular_value_bounds(std::int64_t n, std::int64_t m, double rho, double c_abs,
                                            double t) {
  require(n >= 1 && m >= 1, ErrorKind::InvalidArgument, "n and M must be positive");
  check_nonneg(rho, "rho");
  require(c_abs > 0.0, ErrorKind::InvalidArgument, "c must be positive");
  check_nonneg(t, "t");
  const double width = c_abs * rho * rho * (std::sqrt(static_cast<double>(m)) + std::sqrt(t));
  const double center = std::sqrt(static_cast<double>(n));
  return {center - width, center + width};
}

ConditionalBound conditional_error_bounds(const GramStats& stats, std::int64_t m, const TraceStats& c,
                                          double mean_proj_f_sq, double t) {
  require(m >= 1, ErrorKind::InvalidArgument, "M must be positive");
  check_nonneg(mean_proj_f_sq, "mean term");
  check_nonneg(t, "t");
  ConditionalBound out;
  out.eps_err = c.trace * stats.trace_inv + 2.0 * std::sqrt(c.trace2 * stats.trace_inv2 * t) +
                2.0 * c.norm * stats.norm_inv * t;
  const double num = c.norm * c.norm * stats.norm_inv * stats.norm_inv;
  out.eps_bias = mean_proj_f_sq * mean_inflation(num, c.trace2 * stats.trace_inv2, mean_proj_f_sq, t);
  return out;
}

TailBound approx_error_tail_bound(const SubGaussianSpec& spec, double c_abs, std::int64_t n,
                                  std::int64_t m, double t, double s) {
  require(spec.c.rows() >= 1 && spec.c.rows() == spec.c.cols(), ErrorKind::DimensionMismatch,
          "companion matrix must be square and non-empty");
  const auto big_n = spec.c.rows();
  require(spec.mu.size() == 0 || spec.mu.size() == big_n, ErrorKind::DimensionMismatch,
          "mu must have length N");
  require(spec.mu.size() == 0 || spec.mu.minCoeff() >= 0.0, ErrorKind::InvalidArgument,
          "mu must be nonnegative");
  const double mu_sq = spec.mu.size() ? spec.mu.squaredNorm() : 0.0;
  return approx_error_tail_bound(trace_stats(spec.c), big_n, mu_sq, spec.rho, c_abs, n, m, t, s);
}

TailBound approx_error_tail_bound(const TraceStats& c, std::int64_t n_params, double mu_norm_sq, double rho,
                                  double c_abs, std::int64_t n, std::int64_t m, double t, double s) {
  require(n >= 1 && m >= 1 && n_params >= 1, ErrorKind::InvalidArgument, "n, M and N must be positive");
  check_nonneg(t, "t");
  check_nonneg(s, "s");
  check_nonneg(rho, "rho");
  check_nonneg(mu_norm_sq, "|mu|^2");
  require(c_abs > 0.0, ErrorKind::InvalidArgument, "c must be positive");
  require(c.trace > 0.0 && c.trace2 > 0.0, ErrorKind::InvalidArgument, "companion matrix must be positive definite");

  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  const double width = c_abs * rho * rho * (std::sqrt(md) + std::sqrt(t));
  const double denom = std::sqrt(nd) - width;
  if (!(denom > 0.0)) {
    fail(ErrorKind::DenominatorNonpositive, "sqrt(n) - c rho^2 (sqrt(M) + sqrt(t)) must be positive");
  }
  const double denom2 = denom * denom;

  TailBound out;
  out.eps_err = (c.trace * md + 2.0 * std::sqrt(md * c.trace2 * t) + 2.0 * c.norm * t) / denom2;
  if (mu_norm_sq > 0.0) {
    const double ratio = (std::sqrt(nd) + width) / denom;
    const double factor = 2.0 * std::sqrt(t) * c.norm / std::sqrt(md * c.trace2);
    out.eps_bias = 1.5 * rho * rho * mu_norm_sq * nd * (md + 2.0 * std::sqrt(md * s) + 2.0 * s) /
                   (denom2 * denom2) * (1.0 + factor * ratio * ratio);
  }
  out.prob_floor = 1.0 - 3.0 * std::exp(-t) - static_cast<double>(n_params) * std::exp(-s);
  return out;
}

double subgaussian_param_uniform(double a, double b) {
  require(a <= b, ErrorKind::InvalidArgument, "interval must satisfy a <= b");
  return (b - a) / std::sqrt(12.0);
}

double subgaussian_param_bounded(double a, double b) {
  require(a <= b, ErrorKind::InvalidArgument, "interval must satisfy a <= b");
  return 0.5 * (b - a);
}

}  // namespace lmmse::bounds
