#pragma once

#include <filesystem>
#include <string>

#include "cbo/bench/experiment.hpp"

namespace cbo::bench {

// CSV with header iter,time,residual,consensus_energy,best_energy,alpha,radius;
// '.' decimal separator, '\n' line endings, %.17g round-trip formatting.
void write_run_csv(const std::filesystem::path& file, const RunRecord& record);

RunRecord read_run_csv(const std::filesystem::path& file);

// Two columns (node coordinate, value) including both boundary nodes.
void write_field_csv(const std::filesystem::path& file, std::span<const double> interior,
                     int m, double v0, double v1);

// Matrix of ln(final residual): first row the sigma values, first column the
// lambda values.
void write_sweep_csv(const std::filesystem::path& file, const SweepResult& sweep);

// Writes run_seed<seed>.csv per run plus summary.json (config echo, seeds,
// aggregates, version stamp). Returns the summary path.
std::filesystem::path persist_experiment(const ExperimentResult& result,
                                         const std::filesystem::path& dir);

std::filesystem::path persist_sweep(const SweepResult& result, const std::filesystem::path& dir);

// run_seed<s>_level<i>.csv and field_seed<s>_level<i>.csv per level, plus
// summary.json.
std::filesystem::path persist_allen_cahn(const AllenCahnResult& result,
                                         const std::filesystem::path& dir);

}  // namespace cbo::bench
