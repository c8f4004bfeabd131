#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbo/bench/config.hpp"
#include "cbo/dynamics.hpp"
#include "cbo/fem.hpp"

namespace cbo::bench {

// i.i.d. normal with covariance variance*Id about `mean`, then projected into
// the domain; deterministic per seed.
Ensemble init_gaussian(int dim, std::span<const double> mean, double variance,
                       const Domain& domain, long count, std::uint64_t seed);

Ensemble init_uniform(int dim, std::span<const double> lower, std::span<const double> upper,
                      const Domain& domain, long count, std::uint64_t seed);

Ensemble build_initial_ensemble(const ExperimentConfig& config, const Domain& domain,
                                std::uint64_t seed);

Objective build_objective(const ExperimentConfig& config);

struct RunOutcome {
  std::uint64_t seed = 0;
  RunRecord record;
  double final_metric = 0.0;  // final residual, or final best energy for Allen-Cahn
  bool success = false;
};

struct Aggregate {
  long runs = 0;
  std::string metric = "residual";
  double mean_final = 0.0;
  double median_final = 0.0;
  std::optional<double> success_rate;
  std::optional<double> success_threshold;
};

struct ExperimentResult {
  ExperimentConfig config;  // normalized echo
  std::vector<RunOutcome> runs;
  Aggregate aggregate;
  double wall_seconds = 0.0;
};

// One deterministic record per seed plus the aggregate row.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct SweepResult {
  ExperimentConfig config;
  std::vector<double> lambdas;
  std::vector<double> sigmas;
  // ln(final residual), row-major over (lambda, sigma), averaged over repetitions
  std::vector<double> ln_final;
  // ln(initial residual): the separating contour level between converging and
  // diverging cells
  double ln_initial = 0.0;
  double wall_seconds = 0.0;

  double at(int li, int si) const { return ln_final[static_cast<std::size_t>(li) * sigmas.size() + si]; }
};

// Per-cell runs with a shared seed (same initial measure across all cells).
SweepResult run_sweep(const ExperimentConfig& base, const SweepGrid& grid);

struct AllenCahnOutcome {
  std::uint64_t seed = 0;
  fem::MultigridResult result;
  double final_best_energy = 0.0;
};

struct AllenCahnResult {
  ExperimentConfig config;
  std::vector<AllenCahnOutcome> runs;
  Aggregate aggregate;
  double wall_seconds = 0.0;
};

AllenCahnResult run_allen_cahn(const ExperimentConfig& config);

}  // namespace cbo::bench
