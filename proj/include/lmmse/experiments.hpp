#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lmmse/dataset_io.hpp"
#include "lmmse/linalg.hpp"
#include "lmmse/model.hpp"

namespace lmmse {

struct ExperimentConfig {
  std::int64_t m = 16;  // data dimension (ignored by denoising, which uses the image size)
  std::int64_t n_params = 16;
  std::vector<double> eps_list{1.0 / 16, 0.25, 0.5, 1.0};
  std::int64_t replications = 300;
  std::uint64_t master_seed = 0;
  std::vector<double> tau_grid;  // empty: default_tau_grid(max eps)
  double sigma = 0.1;            // denoising noise level
  int workers = 1;
  double eig_floor = 1e-6;  // random covariance eigenvalue floor
};

void validate(const ExperimentConfig& cfg);

struct TailReport {
  double eps = 0.0;
  std::int64_t n = 0;
  std::vector<double> mse_values;
  std::optional<std::vector<double>> test_values;
  std::vector<double> tau_grid;
  std::vector<double> exceed_fractions;
  std::optional<std::vector<double>> test_exceed_fractions;
  double reference_expected = 0.0;    // trace(Cee) (1 + M / (n - M - 1))
  double reference_asymptotic = 0.0;  // trace(Cee) (1 + g / (1 - g)), g = M / n
  double trace_cee = 0.0;
  std::int64_t retries = 0;
};

inline constexpr int kMaxReplicationRetries = 3;

/// 64 log-spaced points in [1, 1 + 4 max_eps].
std::vector<double> default_tau_grid(double max_eps);

/// Fraction of values strictly greater than tau * trace_cee, per tau.
std::vector<double> empirical_tail(const std::vector<double>& values, double trace_cee,
                                   const std::vector<double>& tau_grid);

/// (1/n) X^T X, symmetrized.
Matrix empirical_covariance(const Matrix& rows, int workers = 1);

/// trace(Cee) = sum_i xi_i sigma^2 / (xi_i + sigma^2) for A = I, Czz = sigma^2 I.
double denoise_mse_formula(const std::vector<double>& eigenvalues, double sigma);

/// Random Gaussian-experiment model: A with standard normal entries (stream 0),
/// Cxx (stream 1) and Czz (stream 2) random SPD with uniform spectra.
LinearModel make_random_gaussian_model(std::int64_t m, std::int64_t n_params, std::uint64_t master_seed,
                                       double eig_floor);

/// One report per eps: n = n0(M, eps), replications of sample / fit / exact MSE.
std::vector<TailReport> run_gaussian_experiment(const ExperimentConfig& cfg);

struct DenoiseCampaign {
  std::vector<TailReport> reports;
  double trace_cee = 0.0;          // from solve_lmmse
  double trace_cee_formula = 0.0;  // from denoise_mse_formula
  double cxx_jitter = 0.0;         // diagonal shift applied if Cxx was singular
  Eigen::Index train_count = 0;
  Eigen::Index test_count = 0;
};

/// Denoising campaign with A = I and uniform noise of level sigma. Both
/// datasets must be centered (with the training mean).
DenoiseCampaign run_denoise_experiment(const ExperimentConfig& cfg, const ImageDataset& train,
                                       const ImageDataset& test);

struct WishartSummary {
  std::vector<double> traces;
  double mean_trace = 0.0;
  double sd = 0.0;
  double se = 0.0;
  double reference_wishart = 0.0;  // M / (n - M - 1)
  double reference_lower = 0.0;    // M / n
};

/// trace((Z^T Z)^-1) for n x M standard normal Z, per replication.
WishartSummary wishart_trace_experiment(std::int64_t m, std::int64_t n, std::int64_t replications,
                                        std::uint64_t seed, int workers = 1);

double mean_of(const std::vector<double>& v);
/// Sample standard deviation (n - 1 denominator; 0 for fewer than two values).
double sd_of(const std::vector<double>& v);

}  // namespace lmmse
