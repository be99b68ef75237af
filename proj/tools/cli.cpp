#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>

#include "lmmse/dataset_io.hpp"
#include "lmmse/errors.hpp"
#include "lmmse/experiments.hpp"
#include "lmmse/model.hpp"
#include "lmmse/planner.hpp"
#include "lmmse/report_io.hpp"
#include "lmmse/sampling.hpp"
#include "lmmse/tail_bounds.hpp"

namespace lmmse::cli {
namespace {

namespace fs = std::filesystem;
using io::json;

constexpr const char* kDataDirEnv = "LMMSE_LAB_DATA_DIR";

struct Common {
  std::string out_dir = ".";
  std::string format = "csv";
};

struct Context {
  const std::vector<std::string>& args;
  std::ostream& out;
  Common common;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--out", common.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

fs::path prepare_out(const Common& common) {
  const fs::path dir(common.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) fail(ErrorKind::IoError, "cannot create output directory " + dir.string());
  return dir;
}

json sidecar(const Context& ctx, const std::string& subcommand, json config) {
  config["out"] = ctx.common.out_dir;
  config["format"] = ctx.common.format;
  return {{"subcommand", subcommand}, {"invocation", ctx.args}, {"config", std::move(config)}};
}

void write_json(const fs::path& path, const json& j) { io::write_text_file(path, j.dump(2) + "\n"); }

std::string seconds_since(std::chrono::steady_clock::time_point start) {
  const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
  return io::format_double(d.count());
}

// plan ---------------------------------------------------------------------

struct PlanArgs {
  std::int64_t m = 0;
  double eps = 0.0;
  double delta = 0.05;
  double nu = 1.0;
  std::optional<double> rho;
  std::optional<double> c_abs;
};

void cmd_plan(Context& ctx, const PlanArgs& a) {
  planner::PlanInputs in{a.m, a.eps, a.delta, a.nu, a.rho.value_or(1.0),
                         a.c_abs.value_or(planner::kDefaultAbsoluteConstant)};
  planner::validate(in);
  const std::int64_t n0 = planner::n_expected_gaussian(a.m, a.eps);
  const double n1 = planner::n_tail_gaussian(a.m, a.eps, a.delta, a.nu);
  const double n2 = planner::n_tail_gaussian_simplified(a.m, a.eps, a.delta);

  struct Row {
    std::string name;
    double value;
    std::int64_t samples;
  };
  std::vector<Row> rows{{"n0", static_cast<double>(n0), n0},
                        {"n1", n1, planner::as_sample_count(n1)},
                        {"n2", n2, planner::as_sample_count(n2)}};
  const bool general = a.rho.has_value() || a.c_abs.has_value();
  if (general) {
    const double ng = planner::n_tail_general_nu(a.m, a.eps, a.delta, a.nu, in.rho, in.c_abs);
    rows.push_back({"n_general", ng, planner::as_sample_count(ng)});
  }

  json results = json::object();
  for (const auto& r : rows) results[r.name] = {{"value", r.value}, {"samples", r.samples}};
  if (general) results["n_general"]["conditional_on_c"] = in.c_abs;

  if (ctx.common.format == "json") {
    ctx.out << results.dump(2) << '\n';
  } else {
    ctx.out << "quantity,value,samples\n";
    for (const auto& r : rows) ctx.out << r.name << ',' << io::format_double(r.value) << ',' << r.samples << '\n';
  }

  json config{{"M", a.m}, {"eps", a.eps}, {"delta", a.delta}, {"nu", a.nu}};
  if (a.rho) config["rho"] = *a.rho;
  if (a.c_abs) config["c"] = *a.c_abs;
  json meta = sidecar(ctx, "plan", config);
  meta["results"] = results;
  write_json(prepare_out(ctx.common) / ("plan_" + io::format_double(a.eps) + ".json"), meta);
}

// lmmse --------------------------------------------------------------------

void cmd_lmmse(Context& ctx, const std::string& model_path) {
  const LinearModel model = io::load_model(model_path);
  const LmmseSolution sol = solve_lmmse(model);
  const fs::path dir = prepare_out(ctx.common);
  json meta = sidecar(ctx, "lmmse", {{"model", model_path}});
  meta["mse"] = sol.mse;
  meta["cee_form_disagreement"] = sol.cee_form_disagreement;
  if (ctx.common.format == "json") {
    write_json(dir / "lmmse_solution.json", io::solution_to_json(sol));
    meta["files"] = {"lmmse_solution.json"};
  } else {
    io::write_matrix_file(dir / "lmmse_theta_star.txt", sol.theta_star);
    io::write_matrix_file(dir / "lmmse_cee.txt", sol.cee);
    io::write_matrix_file(dir / "lmmse_cyy.txt", sol.cyy);
    meta["files"] = {"lmmse_theta_star.txt", "lmmse_cee.txt", "lmmse_cyy.txt"};
  }
  write_json(dir / "lmmse.json", meta);
  ctx.out << "mse," << io::format_double(sol.mse) << '\n';
}

// bounds -------------------------------------------------------------------

struct BoundsArgs {
  double delta = 0.05;
  std::optional<double> t;
  std::optional<double> s;
  double trace = 0, trace2 = 0, norm = 0, sigma = 1, mean = 0;
  double trace_c = 0, trace_c2 = 0, norm_c = 0;
  double trace_inv = 0, trace_inv2 = 0, norm_inv = 0;
  double b = 1, rho = 1, c_abs = planner::kDefaultAbsoluteConstant, mu_sq = 0, gamma = 0;
  double lo = 0, hi = 1;
  std::int64_t m = 1, n = 1, n_params = 1;
};

double resolved_t(const BoundsArgs& a) { return a.t.value_or(std::log(3.0 / a.delta)); }
double resolved_s(const BoundsArgs& a) { return a.s.value_or(std::log(3.0 / a.delta)); }

void emit_bound(Context& ctx, const std::string& name, json inputs, const std::vector<std::pair<std::string, double>>& values,
                std::optional<double> prob_floor) {
  json results = json::object();
  for (const auto& [k, v] : values) results[k] = v;
  if (prob_floor) results["prob_floor"] = *prob_floor;
  if (ctx.common.format == "json") {
    ctx.out << results.dump(2) << '\n';
  } else {
    ctx.out << "quantity,value\n";
    for (const auto& [k, v] : values) ctx.out << k << ',' << io::format_double(v) << '\n';
    if (prob_floor) ctx.out << "prob_floor," << io::format_double(*prob_floor) << '\n';
  }
  inputs["bound"] = name;
  json meta = sidecar(ctx, "bounds", std::move(inputs));
  meta["results"] = results;
  write_json(prepare_out(ctx.common) / ("bounds_" + name + ".json"), meta);
}

void check_t(const BoundsArgs& a) {
  require(a.delta > 0.0 && a.delta < 1.0, ErrorKind::InvalidArgument, "--delta must lie in (0, 1)");
  require(resolved_t(a) >= 0.0, ErrorKind::InvalidArgument, "--t must be nonnegative");
  require(resolved_s(a) >= 0.0, ErrorKind::InvalidArgument, "--s must be nonnegative");
}

// Output files ---------------------------------------------------------------

std::string stem(const std::string& sub, double eps, std::uint64_t seed) {
  return sub + "_" + io::format_double(eps) + "_" + std::to_string(seed);
}

void write_reports(Context& ctx, const std::string& sub, const std::vector<TailReport>& reports, std::uint64_t seed,
                   json config, json extra, std::chrono::steady_clock::time_point start) {
  const fs::path dir = prepare_out(ctx.common);
  const bool as_json = ctx.common.format == "json";
  ctx.out << "eps,n,trace_cee,mean_mse,mean_relative_excess,reference_expected,reference_asymptotic";
  const bool has_test = !reports.empty() && reports.front().test_values.has_value();
  if (has_test) ctx.out << ",mean_test_mse";
  ctx.out << '\n';
  for (const auto& rep : reports) {
    const std::string base = stem(sub, rep.eps, seed);
    json meta = sidecar(ctx, sub, config);
    meta.update(extra);
    meta["report"] = io::report_to_json(rep, as_json);
    meta["wall_time_seconds"] = seconds_since(start);
    if (!as_json) {
      io::write_text_file(dir / (base + ".csv"), io::tail_csv(rep));
      io::write_text_file(dir / (base + "_values.csv"), io::values_csv(rep));
    }
    write_json(dir / (base + ".json"), meta);

    const double mean_mse = mean_of(rep.mse_values);
    ctx.out << io::format_double(rep.eps) << ',' << rep.n << ',' << io::format_double(rep.trace_cee) << ','
            << io::format_double(mean_mse) << ',' << io::format_double(mean_mse / rep.trace_cee - 1.0) << ','
            << io::format_double(rep.reference_expected) << ',' << io::format_double(rep.reference_asymptotic);
    if (has_test) ctx.out << ',' << io::format_double(mean_of(*rep.test_values));
    ctx.out << '\n';
  }
}

struct CampaignArgs {
  std::int64_t m = 16;
  std::optional<std::int64_t> n_params;
  std::vector<double> eps{1.0 / 16, 0.25, 0.5, 1.0};
  std::int64_t reps = 300;
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<double> tau;
  double eig_floor = kDefaultEigenvalueFloor;
  double sigma = 0.1;
  std::string data_dir;
  std::string synthetic;
  std::int64_t test_count = 2000;
};

ExperimentConfig to_config(const CampaignArgs& a) {
  ExperimentConfig cfg;
  cfg.m = a.m;
  cfg.n_params = a.n_params.value_or(a.m);
  cfg.eps_list = a.eps;
  cfg.replications = a.reps;
  cfg.master_seed = a.seed;
  cfg.tau_grid = a.tau;
  cfg.sigma = a.sigma;
  cfg.workers = a.workers;
  cfg.eig_floor = a.eig_floor;
  return cfg;
}

json config_json(const ExperimentConfig& cfg, const std::vector<double>& tau) {
  return {{"M", cfg.m},
          {"N", cfg.n_params},
          {"eps", cfg.eps_list},
          {"reps", cfg.replications},
          {"seed", cfg.master_seed},
          {"workers", cfg.workers},
          {"tau", tau},
          {"eig_floor", cfg.eig_floor},
          {"sigma", cfg.sigma}};
}

void cmd_gaussian(Context& ctx, const CampaignArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentConfig cfg = to_config(a);
  const auto reports = run_gaussian_experiment(cfg);
  json config = config_json(cfg, cfg.tau_grid);
  config.erase("sigma");
  json extra = {{"stream_layout", "experiment e (1-based eps index), replication r: e*2^32 + r; "
                                  "retry k: e*2^32 + k*reps + r; model: A/Cxx/Czz at streams 0/1/2"}};
  write_reports(ctx, "gaussian-exp", reports, cfg.master_seed, config, extra, start);
}

std::pair<std::int64_t, std::int64_t> parse_synthetic(const std::string& spec) {
  const auto comma = spec.find(',');
  require(comma != std::string::npos, ErrorKind::InvalidArgument, "--synthetic expects N,count");
  try {
    std::size_t p1 = 0, p2 = 0;
    const long long n = std::stoll(spec.substr(0, comma), &p1);
    const long long count = std::stoll(spec.substr(comma + 1), &p2);
    require(p1 == comma && p2 == spec.size() - comma - 1 && n >= 1 && count >= 1, ErrorKind::InvalidArgument,
            "--synthetic expects two positive integers N,count");
    return {n, count};
  } catch (const std::logic_error&) {
    fail(ErrorKind::InvalidArgument, "--synthetic expects two positive integers N,count");
  }
}

void cmd_denoise(Context& ctx, const CampaignArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig cfg = to_config(a);
  ImageDataset train, test;
  json source;
  if (!a.synthetic.empty()) {
    require(a.data_dir.empty(), ErrorKind::InvalidArgument, "--synthetic and --data-dir are exclusive");
    const auto [n_pixels, count] = parse_synthetic(a.synthetic);
    require(a.test_count >= 1, ErrorKind::InvalidArgument, "--test-count must be positive");
    const ImageDataset all = synthetic_image_dataset(n_pixels, count + a.test_count, SeedSpec{a.seed, 0});
    auto split = split_rows(all, count);
    train = center_dataset(std::move(split.first));
    test = center_with(std::move(split.second), train.mean_vector - all.mean_vector);
    source = {{"kind", "synthetic"}, {"N", n_pixels}, {"train", count}, {"test", a.test_count}, {"stream", 0}};
  } else {
    std::string dir = a.data_dir;
    if (dir.empty()) {
      if (const char* env = std::getenv(kDataDirEnv)) dir = env;
    }
    require(!dir.empty(), ErrorKind::InvalidArgument,
            std::string("no dataset: pass --data-dir, --synthetic N,count or set ") + kDataDirEnv);
    ImageDataset raw_train = load_idx_images(fs::path(dir) / "train-images-idx3-ubyte");
    ImageDataset raw_test = load_idx_images(fs::path(dir) / "t10k-images-idx3-ubyte");
    train = center_dataset(std::move(raw_train));
    test = center_with(std::move(raw_test), train.mean_vector);
    source = {{"kind", "idx"}, {"data_dir", dir}, {"train", train.count()}, {"test", test.count()}};
  }
  cfg.m = train.dim();
  cfg.n_params = train.dim();
  const DenoiseCampaign result = run_denoise_experiment(cfg, train, test);
  json config = config_json(cfg, cfg.tau_grid);
  config.erase("eig_floor");
  config["dataset"] = source;
  json extra = {{"centering", "train-mean"},
                {"trace_cee_formula", result.trace_cee_formula},
                {"cxx_jitter", result.cxx_jitter},
                {"train_count", result.train_count},
                {"test_count", result.test_count}};
  write_reports(ctx, "denoise-exp", result.reports, cfg.master_seed, config, extra, start);
}

struct WishartArgs {
  std::int64_t m = 16;
  std::int64_t n = 81;
  std::int64_t reps = 1000;
  std::uint64_t seed = 0;
  int workers = 1;
};

void cmd_wishart(Context& ctx, const WishartArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const WishartSummary w = wishart_trace_experiment(a.m, a.n, a.reps, a.seed, a.workers);
  const fs::path dir = prepare_out(ctx.common);
  const std::string base = "wishart_" + std::to_string(a.seed);
  json meta = sidecar(ctx, "wishart", {{"M", a.m}, {"n", a.n}, {"reps", a.reps}, {"seed", a.seed}, {"workers", a.workers}});
  meta["results"] = {{"mean_trace", w.mean_trace},
                     {"sd", w.sd},
                     {"se", w.se},
                     {"reference_wishart", w.reference_wishart},
                     {"reference_lower", w.reference_lower}};
  if (ctx.common.format == "json") {
    meta["results"]["traces"] = w.traces;
  } else {
    std::string csv = "replication,trace\n";
    for (std::size_t i = 0; i < w.traces.size(); ++i) csv += std::to_string(i) + ',' + io::format_double(w.traces[i]) + '\n';
    io::write_text_file(dir / (base + ".csv"), csv);
  }
  meta["wall_time_seconds"] = seconds_since(start);
  write_json(dir / (base + ".json"), meta);
  ctx.out << "mean_trace,sd,se,reference_wishart,reference_lower\n"
          << io::format_double(w.mean_trace) << ',' << io::format_double(w.sd) << ',' << io::format_double(w.se) << ','
          << io::format_double(w.reference_wishart) << ',' << io::format_double(w.reference_lower) << '\n';
}

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Validation: return kExitValidation;
    case ErrorCategory::Numerical: return kExitNumerical;
    case ErrorCategory::Io: return kExitIo;
  }
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{args, out, {}};
  CLI::App app{"LMMSE estimation, sample-size planning and Monte Carlo campaigns", "lmmse-lab"};
  app.require_subcommand(1);
  std::function<void()> action;

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Sample counts n0, n1, n2 for given M, eps, delta");
  plan_cmd->add_option("--M", plan.m, "Data dimension")->required()->check(CLI::PositiveNumber);
  plan_cmd->add_option("--eps", plan.eps, "Relative excess tolerance")->required()->check(CLI::PositiveNumber);
  plan_cmd->add_option("--delta", plan.delta, "Failure probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  plan_cmd->add_option("--nu", plan.nu, "||Cee||_2 / trace(Cee)")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  plan_cmd->add_option("--rho", plan.rho, "Sub-Gaussian parameter of the whitened data");
  plan_cmd->add_option("--c", plan.c_abs, "Absolute constant of the singular-value bound");
  add_common(plan_cmd, ctx.common);
  plan_cmd->callback([&] { action = [&] { cmd_plan(ctx, plan); }; });

  std::string model_path;
  auto* lmmse_cmd = app.add_subcommand("lmmse", "Solve for the LMMSE estimator of a model");
  lmmse_cmd->add_option("--model", model_path, "Model directory (A.txt, Cxx.txt, Czz.txt) or JSON file")->required();
  add_common(lmmse_cmd, ctx.common);
  lmmse_cmd->callback([&] { action = [&] { cmd_lmmse(ctx, model_path); }; });

  BoundsArgs b;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate a sub-Gaussian tail bound");
  bounds_cmd->require_subcommand(1);
  auto bound = [&](const char* name, const char* help) {
    auto* c = bounds_cmd->add_subcommand(name, help);
    add_common(c, ctx.common);
    c->add_option("--delta", b.delta, "Sets the default t = s = ln(3/delta)")->capture_default_str();
    return c;
  };
  auto opt_t = [&](CLI::App* c) { c->add_option("--t", b.t, "Tail level t (default ln(3/delta))"); };

  auto* qf = bound("quadratic-form", "||H V||^2 for sigma-sub-Gaussian V");
  qf->add_option("--trace", b.trace, "trace(Sigma)")->required();
  qf->add_option("--trace2", b.trace2, "trace(Sigma^2)")->required();
  qf->add_option("--norm", b.norm, "||Sigma||_2")->required();
  qf->add_option("--sigma", b.sigma, "Sub-Gaussian parameter")->capture_default_str();
  qf->add_option("--mean", b.mean, "||H E[V]||^2")->capture_default_str();
  opt_t(qf);
  qf->callback([&] {
    action = [&] {
      check_t(b);
      const double t = resolved_t(b);
      emit_bound(ctx, "quadratic-form",
                 {{"trace", b.trace}, {"trace2", b.trace2}, {"norm", b.norm}, {"sigma", b.sigma}, {"mean", b.mean}, {"t", t}},
                 {{"bound", bounds::quadratic_form_bound(b.trace, b.trace2, b.norm, b.sigma, b.mean, t)}},
                 1.0 - std::exp(-t));
    };
  });

  auto* sum = bound("sum", "(1/n)||sum V_i||^2 for independent sigma-sub-Gaussian V_i");
  sum->add_option("--M", b.m, "Dimension")->required();
  sum->add_option("--sigma", b.sigma, "Sub-Gaussian parameter")->capture_default_str();
  opt_t(sum);
  sum->callback([&] {
    action = [&] {
      check_t(b);
      const double t = resolved_t(b);
      emit_bound(ctx, "sum", {{"M", b.m}, {"sigma", b.sigma}, {"t", t}},
                 {{"bound", bounds::sum_subgaussian_bound(b.m, b.sigma, t)}}, 1.0 - std::exp(-t));
    };
  });

  auto* prod = bound("product", "Sub-Gaussian parameter of V W with |W| <= b");
  prod->add_option("--sigma", b.sigma, "Parameter of V")->capture_default_str();
  prod->add_option("--b", b.b, "Bound on |W|")->capture_default_str();
  prod->callback([&] {
    action = [&] {
      emit_bound(ctx, "product", {{"sigma", b.sigma}, {"b", b.b}},
                 {{"parameter", bounds::product_subgaussian_param(b.sigma, b.b)}}, std::nullopt);
    };
  });

  auto* ws = bound("weighted-sum", "(1/n)||sum w_i V_i||^2 with |w| <= b");
  ws->add_option("--M", b.m, "Dimension")->required();
  ws->add_option("--sigma", b.sigma, "Sub-Gaussian parameter")->capture_default_str();
  ws->add_option("--b", b.b, "Bound on |w|")->capture_default_str();
  opt_t(ws);
  ws->callback([&] {
    action = [&] {
      check_t(b);
      const double t = resolved_t(b);
      emit_bound(ctx, "weighted-sum", {{"M", b.m}, {"sigma", b.sigma}, {"b", b.b}, {"t", t}},
                 {{"bound", bounds::weighted_sum_bound(b.m, b.sigma, b.b, t)}}, 1.0 - std::exp(-t));
    };
  });

  auto* mq = bound("matrix-quadratic", "||H E||_F^2 for independent sub-Gaussian rows");
  mq->add_option("--trace-c", b.trace_c, "trace(C)")->required();
  mq->add_option("--trace-c2", b.trace_c2, "trace(C^2)")->required();
  mq->add_option("--norm-c", b.norm_c, "||C||_2")->required();
  mq->add_option("--trace", b.trace, "trace(Sigma)")->required();
  mq->add_option("--trace2", b.trace2, "trace(Sigma^2)")->required();
  mq->add_option("--norm", b.norm, "||Sigma||_2")->required();
  mq->add_option("--mean", b.mean, "||H E[E]||_F^2")->capture_default_str();
  opt_t(mq);
  mq->callback([&] {
    action = [&] {
      check_t(b);
      const double t = resolved_t(b);
      emit_bound(ctx, "matrix-quadratic",
                 {{"trace_c", b.trace_c}, {"trace_c2", b.trace_c2}, {"norm_c", b.norm_c}, {"trace", b.trace},
                  {"trace2", b.trace2}, {"norm", b.norm}, {"mean", b.mean}, {"t", t}},
                 {{"bound", bounds::matrix_quadratic_bound(b.trace_c, b.trace_c2, b.norm_c, b.trace, b.trace2, b.norm,
                                                           b.mean, t)}},
                 1.0 - std::exp(-t));
    };
  });

  auto* sv = bound("singular-values", "Interval for the singular values of an n x M sub-Gaussian matrix");
  sv->add_option("--n", b.n, "Rows")->required();
  sv->add_option("--M", b.m, "Columns")->required();
  sv->add_option("--rho", b.rho, "Sub-Gaussian parameter")->capture_default_str();
  sv->add_option("--c", b.c_abs, "Absolute constant")->capture_default_str();
  opt_t(sv);
  sv->callback([&] {
    action = [&] {
      check_t(b);
      const double t = resolved_t(b);
      const auto iv = bounds::singular_value_bounds(b.n, b.m, b.rho, b.c_abs, t);
      emit_bound(ctx, "singular-values", {{"n", b.n}, {"M", b.m}, {"rho", b.rho}, {"c", b.c_abs}, {"t", t}},
                 {{"lower", iv.lower}, {"upper", iv.upper}}, 1.0 - 2.0 * std::exp(-t));
    };
  });

  auto* cond = bound("conditional", "Conditional approximation-error bound given the whitened design");
  cond->add_option("--trace-inv", b.trace_inv, "trace (Z^T Z)^-1")->required();
  cond->add_option("--trace-inv2", b.trace_inv2, "trace (Z^T Z)^-2")->required();
  cond->add_option("--norm-inv", b.norm_inv, "||(Z^T Z)^-1||_2")->required();
  cond->add_option("--trace-c", b.trace_c, "trace(C)")->required();
  cond->add_option("--trace-c2", b.trace_c2, "trace(C^2)")->required();
  cond->add_option("--norm-c", b.norm_c, "||C||_2")->required();
  cond->add_option("--M", b.m, "Data dimension")->required();
  cond->add_option("--mean", b.mean, "||(Z^T Z)^-1 Z^T E[E|Y]||_F^2")->capture_default_str();
  opt_t(cond);
  cond->callback([&] {
    action = [&] {
      check_t(b);
      const double t = resolved_t(b);
      bounds::GramStats gs;
      gs.trace_inv = b.trace_inv;
      gs.trace_inv2 = b.trace_inv2;
      gs.norm_inv = b.norm_inv;
      const auto r = bounds::conditional_error_bounds(gs, b.m, {b.trace_c, b.trace_c2, b.norm_c}, b.mean, t);
      emit_bound(ctx, "conditional",
                 {{"trace_inv", b.trace_inv}, {"trace_inv2", b.trace_inv2}, {"norm_inv", b.norm_inv},
                  {"trace_c", b.trace_c}, {"trace_c2", b.trace_c2}, {"norm_c", b.norm_c}, {"M", b.m},
                  {"mean", b.mean}, {"t", t}},
                 {{"eps_err", r.eps_err}, {"eps_bias", r.eps_bias}, {"total", r.eps_err + r.eps_bias}},
                 1.0 - std::exp(-t));
    };
  });

  auto* tail = bound("tail", "Unconditional approximation-error tail bound");
  tail->add_option("--trace-c", b.trace_c, "trace(C)")->required();
  tail->add_option("--trace-c2", b.trace_c2, "trace(C^2)")->required();
  tail->add_option("--norm-c", b.norm_c, "||C||_2")->required();
  tail->add_option("--N", b.n_params, "Parameter dimension")->required();
  tail->add_option("--n", b.n, "Sample count")->required();
  tail->add_option("--M", b.m, "Data dimension")->required();
  tail->add_option("--mu2", b.mu_sq, "|mu|_2^2")->capture_default_str();
  tail->add_option("--rho", b.rho, "Sub-Gaussian parameter")->capture_default_str();
  tail->add_option("--c", b.c_abs, "Absolute constant")->capture_default_str();
  opt_t(tail);
  tail->add_option("--s", b.s, "Union-bound level s (default ln(3/delta))");
  tail->callback([&] {
    action = [&] {
      check_t(b);
      const double t = resolved_t(b);
      const double s = resolved_s(b);
      const auto r = bounds::approx_error_tail_bound({b.trace_c, b.trace_c2, b.norm_c}, b.n_params, b.mu_sq, b.rho,
                                                     b.c_abs, b.n, b.m, t, s);
      emit_bound(ctx, "tail",
                 {{"trace_c", b.trace_c}, {"trace_c2", b.trace_c2}, {"norm_c", b.norm_c}, {"N", b.n_params},
                  {"n", b.n}, {"M", b.m}, {"mu2", b.mu_sq}, {"rho", b.rho}, {"c", b.c_abs}, {"t", t}, {"s", s}},
                 {{"eps_err", r.eps_err}, {"eps_bias", r.eps_bias}, {"total", r.eps_err + r.eps_bias}},
                 r.prob_floor);
    };
  });

  auto* asym = bound("asymptotic", "Limit of the approximation-error bound for M/n -> gamma");
  asym->add_option("--trace-c", b.trace_c, "trace(C)")->required();
  asym->add_option("--trace-c2", b.trace_c2, "trace(C^2)")->capture_default_str();
  asym->add_option("--norm-c", b.norm_c, "||C||_2")->capture_default_str();
  asym->add_option("--mu2", b.mu_sq, "|mu|_2^2")->capture_default_str();
  asym->add_option("--rho", b.rho, "Sub-Gaussian parameter")->capture_default_str();
  asym->add_option("--c", b.c_abs, "Absolute constant")->capture_default_str();
  asym->add_option("--gamma", b.gamma, "Limiting ratio M/n")->required();
  asym->callback([&] {
    action = [&] {
      const auto r = planner::asymptotic_error_bound(b.trace_c, b.trace_c2, b.norm_c, b.mu_sq, b.rho, b.c_abs, b.gamma);
      emit_bound(ctx, "asymptotic",
                 {{"trace_c", b.trace_c}, {"mu2", b.mu_sq}, {"rho", b.rho}, {"c", b.c_abs}, {"gamma", b.gamma}},
                 {{"eps_err", r.eps_err}, {"eps_bias", r.eps_bias}}, std::nullopt);
    };
  });

  auto* unif = bound("uniform-param", "Sub-Gaussian parameter of U[a, b]");
  unif->add_option("--a", b.lo, "Lower end")->required();
  unif->add_option("--b", b.hi, "Upper end")->required();
  unif->callback([&] {
    action = [&] {
      emit_bound(ctx, "uniform-param", {{"a", b.lo}, {"b", b.hi}},
                 {{"parameter", bounds::subgaussian_param_uniform(b.lo, b.hi)}}, std::nullopt);
    };
  });

  auto* bounded = bound("bounded-param", "Sub-Gaussian parameter of a variable supported in [a, b]");
  bounded->add_option("--a", b.lo, "Lower end")->required();
  bounded->add_option("--b", b.hi, "Upper end")->required();
  bounded->callback([&] {
    action = [&] {
      emit_bound(ctx, "bounded-param", {{"a", b.lo}, {"b", b.hi}},
                 {{"parameter", bounds::subgaussian_param_bounded(b.lo, b.hi)}}, std::nullopt);
    };
  });

  CampaignArgs camp;
  auto add_campaign = [&](CLI::App* c) {
    c->add_option("--eps", camp.eps, "Relative excess tolerances")->delimiter(',')->check(CLI::PositiveNumber);
    c->add_option("--reps", camp.reps, "Replications per eps")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--seed", camp.seed, "Master seed")->capture_default_str();
    c->add_option("--workers", camp.workers, "OpenMP worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--tau", camp.tau, "Tail grid (default: 64 log-spaced points)")->delimiter(',');
    add_common(c, ctx.common);
  };
  auto* gauss = app.add_subcommand("gaussian-exp", "Tail distribution of the least squares MSE, Gaussian model");
  gauss->add_option("--M", camp.m, "Data dimension")->check(CLI::PositiveNumber)->capture_default_str();
  gauss->add_option("--N", camp.n_params, "Parameter dimension (default M)")->check(CLI::PositiveNumber);
  gauss->add_option("--eig-floor", camp.eig_floor, "Lower end of the random covariance spectra")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  add_campaign(gauss);
  gauss->callback([&] { action = [&] { cmd_gaussian(ctx, camp); }; });

  auto* denoise = app.add_subcommand("denoise-exp", "Tail distribution of the least squares MSE, denoising model");
  denoise->add_option("--data-dir", camp.data_dir, std::string("Directory with IDX image files (or ") + kDataDirEnv + ")");
  denoise->add_option("--synthetic", camp.synthetic, "Synthetic dataset N,count instead of files");
  denoise->add_option("--test-count", camp.test_count, "Synthetic test images")->capture_default_str();
  denoise->add_option("--sigma", camp.sigma, "Noise level")->check(CLI::PositiveNumber)->capture_default_str();
  add_campaign(denoise);
  denoise->callback([&] { action = [&] { cmd_denoise(ctx, camp); }; });

  WishartArgs wish;
  auto* wcmd = app.add_subcommand("wishart", "Monte Carlo of trace((Z^T Z)^-1) for Gaussian Z");
  wcmd->add_option("--M", wish.m, "Columns")->check(CLI::PositiveNumber)->capture_default_str();
  wcmd->add_option("--n", wish.n, "Rows")->check(CLI::PositiveNumber)->capture_default_str();
  wcmd->add_option("--reps", wish.reps, "Replications")->check(CLI::PositiveNumber)->capture_default_str();
  wcmd->add_option("--seed", wish.seed, "Master seed")->capture_default_str();
  wcmd->add_option("--workers", wish.workers, "OpenMP worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(wcmd, ctx.common);
  wcmd->callback([&] { action = [&] { cmd_wishart(ctx, wish); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace lmmse::cli
