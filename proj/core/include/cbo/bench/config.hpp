#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbo/domain.hpp"
#include "cbo/dynamics.hpp"
#include "cbo/fem.hpp"

namespace cbo::bench {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DomainSpec {
  std::string type = "all_space";  // all_space | box | ball | ball_minus_balls | omega1..omega4
  int dim = 0;
  std::vector<double> lower, upper;
  BallSpec outer;
  std::vector<BallSpec> removed;

  Domain build(int expected_dim) const;
};

struct InitSpec {
  std::string type = "gaussian";  // gaussian | uniform | fem_coarse
  std::vector<double> mean;
  double variance = 10.0;
  std::vector<double> lower, upper;  // uniform
};

struct ObstacleSpec {
  std::string type = "constant";  // constant | piecewise_linear | sampled
  double lower_value = 0.0, upper_value = 0.0;
  std::vector<std::array<double, 2>> lower_points, upper_points;
  std::vector<double> lower_samples, upper_samples;

  fem::Obstacle sample(int m) const;
};

struct AllenCahnSpec {
  int m = 5;
  double p = 1.5;
  double eps_inv_sq = 500.0;
  double v0 = 0.5, v1 = 1.0;
  double w1 = 0.25, w2 = 0.75;
  long iters_per_level = 100;
  long iters_finest = 1000;
  int first_level = 2;
  // keep the hierarchical draws at the amplitude of the coarse interpolant;
  // the raw mass-weighted transform is too weak to explore the energy
  bool noise_rescale = true;
  std::optional<ObstacleSpec> obstacle;
};

struct AxisSpec {
  double lo = 0.1;
  double hi = 10.0;
  int count = 10;
  bool log_spaced = true;

  std::vector<double> values() const;
};

struct SweepGrid {
  AxisSpec lambda_range;
  AxisSpec sigma_range;
  int repetitions = 1;
};

struct ExperimentConfig {
  std::string name;
  std::string objective = "rastrigin";  // rastrigin | sphere | allen_cahn
  int dim = 2;                          // ignored for allen_cahn (2^m - 1)
  DomainSpec domain;
  CboParams params;
  HeuristicsConfig heuristics;
  InitSpec init;
  long particles = 1000;
  std::vector<std::uint64_t> seeds = {1};
  int threads = 0;
  std::string output;  // directory; empty = no files written
  std::optional<double> success_threshold;
  std::optional<std::vector<double>> x_star;  // defaults to the origin for rastrigin/sphere
  std::optional<AllenCahnSpec> allen_cahn;
  std::optional<SweepGrid> sweep;
  bool ball_before_domain = true;

  int effective_dim() const;
};

// Parses JSON text; every validation failure is collected and reported in one
// ConfigError message.
ExperimentConfig parse_config(const std::string& json_text);

// Canonical JSON (sorted keys, 2-space indent). serialize(parse(serialize(c)))
// == serialize(c).
std::string serialize_config(const ExperimentConfig& config);

}  // namespace cbo::bench
