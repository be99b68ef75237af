#include "lmmse/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lmmse/errors.hpp"
#include "lmmse/least_squares.hpp"
#include "lmmse/parallel.hpp"
#include "lmmse/planner.hpp"
#include "lmmse/sampling.hpp"

namespace lmmse {
namespace {

struct ReplicationResult {
  double mse = 0.0;
  double test_mse = 0.0;
  int retries = 0;
};

// Runs body(seed) for replication r of experiment e, moving to a fresh stream
// (e * 2^32 + k * replications + r) when the fit is rank deficient.
template <class Body>
ReplicationResult run_with_retries(const ExperimentConfig& cfg, std::uint64_t experiment, std::int64_t r,
                                   Body&& body) {
  for (int attempt = 0;; ++attempt) {
    const auto offset = static_cast<std::uint64_t>(attempt) * static_cast<std::uint64_t>(cfg.replications) +
                        static_cast<std::uint64_t>(r);
    try {
      ReplicationResult out = body(replication_seed(cfg.master_seed, experiment, offset));
      out.retries = attempt;
      return out;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RankDeficient || attempt >= kMaxReplicationRetries) throw;
    }
  }
}

TailReport assemble(double eps, std::int64_t n, std::int64_t m, double trace_cee,
                    const std::vector<double>& tau_grid, const std::vector<ReplicationResult>& results,
                    bool with_test) {
  TailReport rep;
  rep.eps = eps;
  rep.n = n;
  rep.trace_cee = trace_cee;
  rep.tau_grid = tau_grid;
  rep.mse_values.reserve(results.size());
  for (const auto& r : results) {
    rep.mse_values.push_back(r.mse);
    rep.retries += r.retries;
  }
  rep.exceed_fractions = empirical_tail(rep.mse_values, trace_cee, tau_grid);
  if (with_test) {
    std::vector<double> test;
    test.reserve(results.size());
    for (const auto& r : results) test.push_back(r.test_mse);
    rep.test_exceed_fractions = empirical_tail(test, trace_cee, tau_grid);
    rep.test_values = std::move(test);
  }
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  rep.reference_expected = n > m + 1 ? trace_cee + planner::expected_approx_error_gaussian(trace_cee, m, n)
                                     : std::numeric_limits<double>::infinity();
  rep.reference_asymptotic = n > m ? trace_cee + planner::asymptotic_gaussian_limit(trace_cee, md / nd)
                                   : std::numeric_limits<double>::infinity();
  return rep;
}

std::vector<double> resolve_tau_grid(const ExperimentConfig& cfg) {
  if (!cfg.tau_grid.empty()) return cfg.tau_grid;
  return default_tau_grid(*std::max_element(cfg.eps_list.begin(), cfg.eps_list.end()));
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  require(cfg.m >= 1 && cfg.n_params >= 1, ErrorKind::InvalidArgument, "M and N must be positive");
  require(!cfg.eps_list.empty(), ErrorKind::InvalidArgument, "eps list is empty");
  for (double e : cfg.eps_list)
    require(std::isfinite(e) && e > 0.0, ErrorKind::InvalidArgument, "eps values must be positive");
  require(cfg.replications >= 1, ErrorKind::InvalidArgument, "replications must be at least 1");
  require(std::is_sorted(cfg.tau_grid.begin(), cfg.tau_grid.end()), ErrorKind::InvalidArgument,
          "tau grid must be sorted ascending");
  for (double t : cfg.tau_grid) require(t >= 1.0, ErrorKind::InvalidArgument, "tau values must be >= 1");
  require(cfg.sigma > 0.0, ErrorKind::InvalidArgument, "sigma must be positive");
  require(cfg.workers >= 1, ErrorKind::InvalidArgument, "workers must be at least 1");
  require(cfg.eig_floor >= 0.0 && cfg.eig_floor <= 1.0, ErrorKind::InvalidArgument,
          "eigenvalue floor must lie in [0, 1]");
}

std::vector<double> default_tau_grid(double max_eps) {
  require(max_eps > 0.0, ErrorKind::InvalidArgument, "eps must be positive");
  constexpr int kPoints = 64;
  const double top = std::log1p(4.0 * max_eps);
  std::vector<double> grid(kPoints);
  for (int i = 0; i < kPoints; ++i) grid[i] = std::exp(top * i / (kPoints - 1));
  grid.front() = 1.0;
  grid.back() = 1.0 + 4.0 * max_eps;
  return grid;
}

std::vector<double> empirical_tail(const std::vector<double>& values, double trace_cee,
                                   const std::vector<double>& tau_grid) {
  require(trace_cee > 0.0, ErrorKind::InvalidArgument, "trace(Cee) must be positive");
  std::vector<double> out;
  out.reserve(tau_grid.size());
  if (values.empty()) {
    out.assign(tau_grid.size(), 0.0);
    return out;
  }
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  const auto total = static_cast<double>(sorted.size());
  for (double tau : tau_grid) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), tau * trace_cee);
    out.push_back(static_cast<double>(above) / total);
  }
  return out;
}

Matrix empirical_covariance(const Matrix& rows, int workers) {
  return empirical_covariance_chunked(rows, workers);
}

double denoise_mse_formula(const std::vector<double>& eigenvalues, double sigma) {
  require(sigma > 0.0, ErrorKind::InvalidArgument, "sigma must be positive");
  const double s2 = sigma * sigma;
  double total = 0.0;
  for (double xi : eigenvalues) {
    require(xi >= 0.0, ErrorKind::InvalidArgument, "eigenvalues must be nonnegative");
    total += xi * s2 / (xi + s2);
  }
  return total;
}

LinearModel make_random_gaussian_model(std::int64_t m, std::int64_t n_params, std::uint64_t master_seed,
                                       double eig_floor) {
  Rng rng_a(replication_seed(master_seed, 0, 0));
  Matrix a = standard_normal_matrix(m, n_params, rng_a);
  Matrix cxx = random_spd_covariance(n_params, replication_seed(master_seed, 0, 1), eig_floor);
  Matrix czz = random_spd_covariance(m, replication_seed(master_seed, 0, 2), eig_floor);
  return build_model(std::move(a), std::move(cxx), std::move(czz));
}

std::vector<TailReport> run_gaussian_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const LinearModel model = make_random_gaussian_model(cfg.m, cfg.n_params, cfg.master_seed, cfg.eig_floor);
  const LmmseSolution sol = solve_lmmse(model);
  const auto tau_grid = resolve_tau_grid(cfg);

  std::vector<TailReport> reports;
  for (std::size_t e = 0; e < cfg.eps_list.size(); ++e) {
    const double eps = cfg.eps_list[e];
    const std::int64_t n = planner::n_expected_gaussian(cfg.m, eps);
    std::vector<ReplicationResult> results(static_cast<std::size_t>(cfg.replications));
    for_each_index(cfg.replications, cfg.workers, [&](std::int64_t r) {
      results[static_cast<std::size_t>(r)] = run_with_retries(cfg, e + 1, r, [&](const SeedSpec& seed) {
        const SampleBatch batch = sample_gaussian_pairs(model, n, seed);
        const FittedEstimator fit = fit_least_squares(batch);
        return ReplicationResult{mse_of_linear(model, sol, fit.theta_hat)};
      });
    });
    reports.push_back(assemble(eps, n, cfg.m, sol.mse, tau_grid, results, false));
  }
  return reports;
}

DenoiseCampaign run_denoise_experiment(const ExperimentConfig& cfg, const ImageDataset& train,
                                       const ImageDataset& test) {
  validate(cfg);
  require(train.centered && test.centered, ErrorKind::InvalidArgument, "datasets must be centered");
  require(train.dim() == test.dim(), ErrorKind::DimensionMismatch, "train and test image sizes differ");
  require(test.count() >= 1, ErrorKind::InsufficientData, "test set is empty");
  const Eigen::Index dim = train.dim();
  const std::int64_t m = dim;

  for (double eps : cfg.eps_list) {
    const std::int64_t n = planner::n_expected_gaussian(m, eps);
    if (n > train.count()) {
      fail(ErrorKind::InsufficientData, "eps = " + std::to_string(eps) + " needs n = " + std::to_string(n) +
                                            " training images, have " + std::to_string(train.count()));
    }
  }

  DenoiseCampaign out;
  out.train_count = train.count();
  out.test_count = test.count();
  Matrix cxx = empirical_covariance(train.data, cfg.workers);
  const Matrix ident = Matrix::Identity(dim, dim);
  const Matrix czz = cfg.sigma * cfg.sigma * ident;
  std::optional<LinearModel> model;
  try {
    model.emplace(build_model(ident, cxx, czz));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotPositiveDefinite) throw;
    out.cxx_jitter = 1e-12 * cxx.trace() / static_cast<double>(dim);
    cxx.diagonal().array() += out.cxx_jitter;
    model.emplace(build_model(ident, cxx, czz));
  }
  const LmmseSolution sol = solve_lmmse(*model);
  out.trace_cee = sol.mse;
  const Vector xi = symmetric_eigenvalues(cxx).cwiseMax(0.0);
  out.trace_cee_formula = denoise_mse_formula(std::vector<double>(xi.data(), xi.data() + xi.size()), cfg.sigma);

  const auto tau_grid = resolve_tau_grid(cfg);
  for (std::size_t e = 0; e < cfg.eps_list.size(); ++e) {
    const double eps = cfg.eps_list[e];
    const std::int64_t n = planner::n_expected_gaussian(m, eps);
    std::vector<ReplicationResult> results(static_cast<std::size_t>(cfg.replications));
    for_each_index(cfg.replications, cfg.workers, [&](std::int64_t r) {
      results[static_cast<std::size_t>(r)] = run_with_retries(cfg, e + 1, r, [&](const SeedSpec& seed) {
        Rng rng(seed);
        SampleBatch batch;
        batch.seed = seed;
        batch.x = sample_without_replacement(train, n, rng);
        batch.y = batch.x + sample_uniform_noise(dim, cfg.sigma, n, rng);
        const FittedEstimator fit = fit_least_squares(batch);

        SampleBatch held_out;
        held_out.seed = seed;
        held_out.x = test.data;
        held_out.y = test.data + sample_uniform_noise(dim, cfg.sigma, test.count(), rng);
        return ReplicationResult{mse_of_linear(*model, sol, fit.theta_hat), test_error(fit.theta_hat, held_out)};
      });
    });
    out.reports.push_back(assemble(eps, n, m, sol.mse, tau_grid, results, true));
  }
  return out;
}

WishartSummary wishart_trace_experiment(std::int64_t m, std::int64_t n, std::int64_t replications,
                                        std::uint64_t seed, int workers) {
  require(m >= 1, ErrorKind::InvalidArgument, "M must be positive");
  require(replications >= 1, ErrorKind::InvalidArgument, "replications must be at least 1");
  if (n <= m + 1) fail(ErrorKind::NTooSmall, "Wishart trace experiment needs n > M + 1");

  WishartSummary out;
  out.traces.resize(static_cast<std::size_t>(replications));
  for_each_index(replications, workers, [&](std::int64_t r) {
    Rng rng(replication_seed(seed, 0, static_cast<std::uint64_t>(r)));
    const Matrix z = standard_normal_matrix(n, m, rng);
    const Matrix gram = symmetrized(z.transpose() * z);
    out.traces[static_cast<std::size_t>(r)] = symmetric_eigenvalues(gram).cwiseInverse().sum();
  });
  out.mean_trace = mean_of(out.traces);
  out.sd = sd_of(out.traces);
  out.se = out.sd / std::sqrt(static_cast<double>(replications));
  out.reference_wishart = static_cast<double>(m) / static_cast<double>(n - m - 1);
  out.reference_lower = planner::trace_lower_bound(m, n);
  return out;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace lmmse
