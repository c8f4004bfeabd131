#include "cbo/bench/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "cbo/bench/objectives.hpp"

namespace cbo::bench {

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

Aggregate aggregate_from(const std::vector<double>& finals, const std::string& metric,
                         std::optional<double> threshold, long successes) {
  Aggregate agg;
  agg.runs = static_cast<long>(finals.size());
  agg.metric = metric;
  agg.mean_final = mean(finals);
  agg.median_final = median(finals);
  agg.success_threshold = threshold;
  if (threshold && agg.runs > 0)
    agg.success_rate = static_cast<double>(successes) / static_cast<double>(agg.runs);
  return agg;
}

}  // namespace

Ensemble init_gaussian(int dim, std::span<const double> mean, double variance,
                       const Domain& domain, long count, std::uint64_t seed) {
  if (static_cast<int>(mean.size()) != dim)
    throw std::invalid_argument("init_gaussian: mean dimension mismatch");
  if (!(variance > 0.0)) throw std::invalid_argument("init_gaussian: variance must be positive");
  Ensemble ens(count, dim, seed);
  const double sd = std::sqrt(variance);
  for (long i = 0; i < count; ++i) {
    auto x = ens.position(i);
    for (int l = 0; l < dim; ++l) x[l] = mean[l] + sd * ens.stream(i).next_normal();
    domain.project_in_place(x);
  }
  return ens;
}

Ensemble init_uniform(int dim, std::span<const double> lower, std::span<const double> upper,
                      const Domain& domain, long count, std::uint64_t seed) {
  if (static_cast<int>(lower.size()) != dim || static_cast<int>(upper.size()) != dim)
    throw std::invalid_argument("init_uniform: bounds dimension mismatch");
  Ensemble ens(count, dim, seed);
  for (long i = 0; i < count; ++i) {
    auto x = ens.position(i);
    for (int l = 0; l < dim; ++l)
      x[l] = lower[l] + (upper[l] - lower[l]) * ens.stream(i).next_uniform();
    domain.project_in_place(x);
  }
  return ens;
}

Ensemble build_initial_ensemble(const ExperimentConfig& config, const Domain& domain,
                                std::uint64_t seed) {
  const int d = config.effective_dim();
  if (config.init.type == "gaussian") {
    std::vector<double> mean = config.init.mean;
    if (mean.empty()) mean.assign(static_cast<std::size_t>(d), 0.0);
    return init_gaussian(d, mean, config.init.variance, domain, config.particles, seed);
  }
  if (config.init.type == "uniform")
    return init_uniform(d, config.init.lower, config.init.upper, domain, config.particles, seed);
  throw ConfigError("init.type: '" + config.init.type + "' not usable here");
}

Objective build_objective(const ExperimentConfig& config) {
  if (config.objective == "rastrigin") return [](std::span<const double> x) { return rastrigin(x); };
  if (config.objective == "sphere") return [](std::span<const double> x) { return sphere(x); };
  throw ConfigError("objective: '" + config.objective + "' has no direct evaluator");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.objective == "allen_cahn")
    throw ConfigError("run_experiment: use run_allen_cahn for the multigrid pipeline");
  const auto t0 = std::chrono::steady_clock::now();

  const int d = config.effective_dim();
  const Domain domain = config.domain.build(d);
  const Objective objective = build_objective(config);

  std::vector<double> x_star;
  if (config.x_star)
    x_star = *config.x_star;
  else
    x_star.assign(static_cast<std::size_t>(d), 0.0);  // known minimizer of both test objectives

  ExperimentResult result;
  result.config = config;
  std::vector<double> finals;
  long successes = 0;
  for (std::uint64_t seed : config.seeds) {
    Ensemble ens = build_initial_ensemble(config, domain, seed);
    RunOptions opts;
    opts.x_star = x_star;
    opts.threads = config.threads;
    opts.ball_before_domain = config.ball_before_domain;
    RunRecord record = run(objective, domain, ens, config.params, config.heuristics, opts);
    record.seed = seed;

    RunOutcome outcome;
    outcome.seed = seed;
    outcome.final_metric = record.rows.back().residual;
    outcome.success =
        config.success_threshold && outcome.final_metric < *config.success_threshold;
    if (outcome.success) ++successes;
    finals.push_back(outcome.final_metric);
    outcome.record = std::move(record);
    result.runs.push_back(std::move(outcome));
  }

  result.aggregate = aggregate_from(finals, "residual", config.success_threshold, successes);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

SweepResult run_sweep(const ExperimentConfig& base, const SweepGrid& grid) {
  if (base.objective == "allen_cahn")
    throw ConfigError("run_sweep: sweeps cover the rastrigin/sphere objectives");
  const auto t0 = std::chrono::steady_clock::now();

  SweepResult result;
  result.config = base;
  result.config.sweep = grid;
  result.lambdas = grid.lambda_range.values();
  result.sigmas = grid.sigma_range.values();
  result.ln_final.assign(result.lambdas.size() * result.sigmas.size(), 0.0);

  const int d = base.effective_dim();
  const Domain domain = base.domain.build(d);
  const Objective objective = build_objective(base);
  std::vector<double> x_star;
  if (base.x_star)
    x_star = *base.x_star;
  else
    x_star.assign(static_cast<std::size_t>(d), 0.0);

  double ln_initial_acc = 0.0;
  for (int rep = 0; rep < grid.repetitions; ++rep) {
    const std::uint64_t seed = base.seeds[static_cast<std::size_t>(rep) % base.seeds.size()] +
                               static_cast<std::uint64_t>(rep / base.seeds.size());
    const Ensemble initial = build_initial_ensemble(base, domain, seed);
    ln_initial_acc += std::log(residual(initial, x_star));
    for (std::size_t li = 0; li < result.lambdas.size(); ++li) {
      for (std::size_t si = 0; si < result.sigmas.size(); ++si) {
        ExperimentConfig cell = base;
        cell.params.lambda = result.lambdas[li];
        cell.params.sigma = result.sigmas[si];
        Ensemble ens = initial;  // shared initial measure across all cells
        RunOptions opts;
        opts.x_star = x_star;
        opts.threads = base.threads;
        opts.ball_before_domain = base.ball_before_domain;
        RunRecord record = run(objective, domain, ens, cell.params, cell.heuristics, opts);
        result.ln_final[li * result.sigmas.size() + si] +=
            std::log(record.rows.back().residual) / static_cast<double>(grid.repetitions);
      }
    }
  }
  result.ln_initial = ln_initial_acc / static_cast<double>(grid.repetitions);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

AllenCahnResult run_allen_cahn(const ExperimentConfig& config) {
  if (config.objective != "allen_cahn" || !config.allen_cahn)
    throw ConfigError("run_allen_cahn: config must carry an allen_cahn block");
  const auto t0 = std::chrono::steady_clock::now();
  const AllenCahnSpec& ac = *config.allen_cahn;

  fem::MultigridProblem problem;
  problem.m = ac.m;
  problem.v0 = ac.v0;
  problem.v1 = ac.v1;
  problem.wells.w1 = ac.w1;
  problem.wells.w2 = ac.w2;
  problem.wells.p = ac.p;
  problem.wells.eps_inv_sq = ac.eps_inv_sq;
  if (ac.obstacle) problem.obstacle = ac.obstacle->sample(ac.m);

  fem::MultigridSchedule schedule;
  schedule.iters_per_level = ac.iters_per_level;
  schedule.iters_finest = ac.iters_finest;
  schedule.first_level = ac.first_level;

  RunOptions opts;
  opts.threads = config.threads;
  opts.ball_before_domain = config.ball_before_domain;

  CboParams params = config.params;
  params.hierarchical_rescale = ac.noise_rescale;

  AllenCahnResult result;
  result.config = config;
  std::vector<double> finals;
  long successes = 0;
  for (std::uint64_t seed : config.seeds) {
    AllenCahnOutcome outcome;
    outcome.seed = seed;
    outcome.result = fem::multigrid_solve(problem, params, config.heuristics, schedule,
                                          config.particles, seed, opts);
    outcome.final_best_energy = outcome.result.levels.back().record.rows.back().best_energy;
    finals.push_back(outcome.final_best_energy);
    if (config.success_threshold && outcome.final_best_energy < *config.success_threshold)
      ++successes;
    result.runs.push_back(std::move(outcome));
  }
  result.aggregate = aggregate_from(finals, "best_energy", config.success_threshold, successes);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace cbo::bench
