#pragma once

#include <cstdint>

#include "lmmse/linalg.hpp"

namespace lmmse::planner {

inline constexpr double kDefaultAbsoluteConstant = 1.0;

/// Inputs shared by the sample-size formulas.
struct PlanInputs {
  std::int64_t m = 0;   // data dimension M
  double eps = 0.0;     // relative excess tolerance, > 0
  double delta = 0.05;  // failure probability, in (0, 1)
  double nu = 1.0;      // ||Cee||_2 / trace(Cee), in (0, 1]
  double rho = 1.0;     // sub-Gaussian parameter of the whitened data
  double c_abs = kDefaultAbsoluteConstant;
};

void validate(const PlanInputs& in);

/// ceil(M / eps) + M + 1, with the ceiling resolved exactly for the given
/// double eps.
std::int64_t n_expected_gaussian(std::int64_t m, double eps);

/// (sqrt((M + 2 sqrt(M nu L) + 2 nu L) / eps) + sqrt(M) + sqrt(L))^2, L = ln(3/delta).
double n_tail_gaussian(std::int64_t m, double eps, double delta, double nu);

/// (M + 2 sqrt(M L) + 2 L)(1/eps + 2/sqrt(eps) + 1); dominates n_tail_gaussian.
double n_tail_gaussian_simplified(std::int64_t m, double eps, double delta);

/// Trace form of the Gaussian tail count, built from trace(Cee), trace(Cee^2) and ||Cee||_2.
double n_tail_gaussian_exact(const Matrix& cee, std::int64_t m, double eps, double delta);

/// Sample count for a general model whose LMMSE and MMSE estimators coincide.
/// The result is conditional on the configured c_abs.
double n_tail_general(const Matrix& c, double trace_cee, std::int64_t m, double eps, double delta,
                      double rho, double c_abs);

/// n_tail_general with C = Cee relaxed through nu: trace(C^2) <= nu trace(Cee)^2
/// and ||C||_2 = nu trace(Cee). Conditional on the configured c_abs.
double n_tail_general_nu(std::int64_t m, double eps, double delta, double nu, double rho, double c_abs);

/// trace(Cee) * M / (n - M - 1); throws NTooSmall for n <= M + 1.
double expected_approx_error_gaussian(double trace_cee, std::int64_t m, std::int64_t n);

/// M / n.
double trace_lower_bound(std::int64_t m, std::int64_t n);

/// trace(Cee) * gamma / (1 - gamma); throws DegenerateGamma outside (0, 1).
double asymptotic_gaussian_limit(double trace_cee, double gamma);

struct AsymptoticBound {
  double eps_err = 0.0;
  double eps_bias = 0.0;
};

/// Limits trace(C) g / (1 - c rho^2 sqrt(g))^2 and
/// (3/2) rho^2 |mu|^2 g / (1 - c rho^2 sqrt(g))^4 for 0 < g < 1 / (c^2 rho^4).
AsymptoticBound asymptotic_error_bound(double trace_c, double trace_c2, double norm_c,
                                       double mu_norm_sq, double rho, double c_abs, double gamma);

/// ceil of a real-valued planner output as a sample count.
std::int64_t as_sample_count(double n);

}  // namespace lmmse::planner
