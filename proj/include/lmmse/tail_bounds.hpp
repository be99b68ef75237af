#pragma once

#include <cstdint>

#include "lmmse/linalg.hpp"

// Formula evaluators for sub-Gaussian tail bounds. Every evaluator takes
// precomputed traces and norms; matrix work lives in gram_stats only.
namespace lmmse::bounds {

/// Spectral statistics of (G^T G)^{-1} for an injective G.
struct GramStats {
  double trace_inv = 0.0;   // trace (G^T G)^-1
  double trace_inv2 = 0.0;  // trace (G^T G)^-2
  double norm_inv = 0.0;    // ||(G^T G)^-1||_2 = 1 / lambda_min
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Trace statistics of a PSD companion matrix C.
struct TraceStats {
  double trace = 0.0;   // trace(C)
  double trace2 = 0.0;  // trace(C^2)
  double norm = 0.0;    // ||C||_2
};

TraceStats trace_stats(const Matrix& c);

/// Hypotheses of the approximation-error tail theorem.
struct SubGaussianSpec {
  double sigma = 0.0;  // scalar sub-Gaussian parameter
  double rho = 1.0;    // vector parameter of Cyy^{-1/2} Y
  Matrix c;            // companion matrix of the conditional error
  Vector mu;           // componentwise bound on E[E | Y]
  double b = 0.0;      // bound on a multiplier variable
};

/// Bound on ||H V||^2 holding with probability >= 1 - e^-t, for
/// sigma-sub-Gaussian V and Sigma = H^T H.
double quadratic_form_bound(double trace_s, double trace_s2, double norm_s, double sigma,
                            double mean_norm_sq, double t);

/// sigma^2 (M + 2 sqrt(M t) + 2 t).
double sum_subgaussian_bound(std::int64_t m, double sigma, double t);

/// b sigma sqrt(3/2).
double product_subgaussian_param(double sigma, double b);

/// (3/2) sigma^2 b^2 (M + 2 sqrt(M t) + 2 t).
double weighted_sum_bound(std::int64_t m, double sigma, double b, double t);

/// Bound on ||H E||_F^2 for a random matrix E with independent rows whose
/// companion matrix is C.
double matrix_quadratic_bound(double trace_c, double trace_c2, double norm_c, double trace_s,
                              double trace_s2, double norm_s, double mean_f_sq, double t);

/// Throws RankDeficient when G is not numerically injective.
GramStats gram_stats(const Matrix& g);

struct SingularValueInterval {
  double lower = 0.0;  // may be negative; callers check positivity
  double upper = 0.0;
};

/// sqrt(n) -/+ c rho^2 (sqrt(M) + sqrt(t)); holds with probability >= 1 - 2e^-t.
SingularValueInterval singular_value_bounds(std::int64_t n, std::int64_t m, double rho, double c_abs,
                                            double t);

struct ConditionalBound {
  double eps_err = 0.0;
  double eps_bias = 0.0;
};

/// Conditional approximation-error bound given the whitened design, holding
/// with probability >= 1 - e^-t.
ConditionalBound conditional_error_bounds(const GramStats& stats, std::int64_t m, const TraceStats& c,
                                          double mean_proj_f_sq, double t);

struct TailBound {
  double eps_err = 0.0;
  double eps_bias = 0.0;
  double prob_floor = 0.0;  // 1 - 3e^-t - N e^-s, reported even when negative
};

/// Unconditional approximation-error tail bound. Requires
/// sqrt(n) - c rho^2 (sqrt(M) + sqrt(t)) > 0, else DenominatorNonpositive.
TailBound approx_error_tail_bound(const SubGaussianSpec& spec, double c_abs, std::int64_t n,
                                  std::int64_t m, double t, double s);

/// Same bound from precomputed statistics of C, |mu|^2 and the parameter dimension N.
TailBound approx_error_tail_bound(const TraceStats& c, std::int64_t n_params, double mu_norm_sq, double rho,
                                  double c_abs, std::int64_t n, std::int64_t m, double t, double s);

/// (b - a) / sqrt(12).
double subgaussian_param_uniform(double a, double b);
/// (b - a) / 2.
double subgaussian_param_bounded(double a, double b);

}  // namespace lmmse::bounds
