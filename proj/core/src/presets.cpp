#include "cbo/bench/presets.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cbo::bench {

namespace {

std::vector<std::uint64_t> seed_range(long n) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(n));
  std::iota(seeds.begin(), seeds.end(), 1);
  return seeds;
}

std::vector<double> shifted_corner_mean(int d) {
  // (5.12, ..., 5.12) / sqrt(d): covers the domain without centering on the
  // minimizer
  return std::vector<double>(static_cast<std::size_t>(d),
                             5.12 / std::sqrt(static_cast<double>(d)));
}

ExperimentConfig sweep_preset(Scale scale) {
  ExperimentConfig c;
  c.name = "fig-sweep";
  c.objective = "rastrigin";
  c.dim = 2;
  c.domain.type = "omega1";
  c.params.lambda = 1.0;
  c.params.sigma = 1.0;
  c.params.dt = 1e-2;
  c.params.iterations = 100;
  c.params.noise_kind = NoiseKind::anisotropic;
  c.heuristics.alpha0 = 1e6;
  c.heuristics.alphaK = 1e6;
  c.init.type = "gaussian";
  c.init.mean = shifted_corner_mean(2);
  c.init.variance = 10.0;
  c.seeds = {1};
  SweepGrid grid;
  if (scale == Scale::paper) {
    c.particles = 1000;
    grid.lambda_range = {1e-1, std::pow(10.0, 2.5), 100, true};
    grid.sigma_range = {1e-1, std::pow(10.0, 1.1), 100, true};
  } else {
    // desk grid keeps lambda*dt <= 0.1 so the explicit scheme stays in its
    // stable regime on every converging cell
    c.particles = 200;
    grid.lambda_range = {1e-1, 1e1, 10, true};
    grid.sigma_range = {1e-1, std::pow(10.0, 1.05), 10, true};
  }
  grid.repetitions = 1;
  c.sweep = grid;
  return c;
}

ExperimentConfig rastrigin_heuristics_preset(const std::string& name, int d, long seeds) {
  ExperimentConfig c;
  c.name = name;
  c.objective = "rastrigin";
  c.dim = d;
  c.domain.type = "omega2";
  c.params.lambda = 1.0;
  c.params.sigma = std::sqrt(2.0);  // overridden by boost_S
  c.params.dt = 1e-2;
  c.params.iterations = 1000;
  c.params.noise_kind = NoiseKind::anisotropic;
  c.heuristics.alpha0 = 1e6;
  c.heuristics.alphaK = 1e9;
  c.heuristics.gamma = 0.95;
  c.heuristics.boost_S = 5.0;
  c.init.type = "gaussian";
  c.init.mean = shifted_corner_mean(d);
  c.init.variance = 10.0;
  c.particles = 1000;
  c.seeds = seed_range(seeds);
  c.success_threshold = 1e-1;
  return c;
}

ObstacleSpec reconstructed_obstacle() {
  // illustrative piecewise-linear bounds: a floor bump pushing the middle of
  // the field above the upper well, and a ceiling notch near the left edge
  ObstacleSpec o;
  o.type = "piecewise_linear";
  o.lower_points = {{0.0, -2.0}, {0.35, -2.0}, {0.45, 0.85},
                    {0.55, 0.85}, {0.65, -2.0}, {1.0, -2.0}};
  o.upper_points = {{0.0, 2.0}, {0.1, 2.0}, {0.2, 0.6}, {0.3, 0.6}, {0.4, 2.0}, {1.0, 2.0}};
  return o;
}

ExperimentConfig allen_cahn_preset(const std::string& name, Scale scale, bool obstacle) {
  ExperimentConfig c;
  c.name = name;
  c.objective = "allen_cahn";
  AllenCahnSpec ac;
  ac.p = 1.5;
  ac.eps_inv_sq = 500.0;
  ac.v0 = 0.5;
  ac.v1 = 1.0;
  ac.w1 = 0.25;
  ac.w2 = 0.75;
  ac.first_level = 2;
  if (scale == Scale::paper) {
    ac.m = 7;
    ac.iters_per_level = obstacle ? 1000 : 100;
    ac.iters_finest = obstacle ? 10000 : 1000;
    c.particles = 20 * ((1 << ac.m) - 1);  // 2540
    c.seeds = {1};
  } else {
    ac.m = 5;
    ac.iters_per_level = 100;
    ac.iters_finest = obstacle ? 500 : 1000;
    c.particles = 20 * ((1 << ac.m) - 1);  // 620
    c.seeds = seed_range(obstacle ? 2 : 5);
  }
  if (obstacle) ac.obstacle = reconstructed_obstacle();
  c.allen_cahn = ac;
  c.dim = (1 << ac.m) - 1;
  c.params.lambda = 1.0;
  c.params.sigma = 7.0;
  c.params.dt = 1e-2;
  c.params.noise_kind = NoiseKind::hierarchical;  // level set per stage by the driver
  c.heuristics.alpha0 = 1e6;
  c.heuristics.alphaK = 1e6;
  c.init.type = "fem_coarse";
  return c;
}

}  // namespace

ExperimentConfig preset(const std::string& name, Scale scale) {
  if (name == "fig-sweep") return sweep_preset(scale);
  if (name == "fig-middle-scale")
    return rastrigin_heuristics_preset(name, 15, 20);
  if (name == "fig-large-scale")
    return rastrigin_heuristics_preset(name, 100, scale == Scale::paper ? 20 : 5);
  if (name == "fig-allen-cahn") return allen_cahn_preset(name, scale, false);
  if (name == "fig-obstacle") return allen_cahn_preset(name, scale, true);
  throw std::invalid_argument("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"fig-sweep", "fig-middle-scale", "fig-large-scale", "fig-allen-cahn", "fig-obstacle"};
}

}  // namespace cbo::bench
