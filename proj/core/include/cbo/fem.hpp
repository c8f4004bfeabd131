#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cbo/domain.hpp"
#include "cbo/dynamics.hpp"

namespace cbo::fem {

// Uniform first-order Lagrange discretization of [0,1] with M = 2^m elements
// and fixed boundary values. Optimization variables are the M-1 interior
// nodal values.
struct FeLevel {
  int m = 5;
  double v0 = 0.0;
  double v1 = 0.0;

  int elements() const { return 1 << m; }
  int interior_nodes() const { return (1 << m) - 1; }
  double h() const { return std::ldexp(1.0, -m); }
};

struct WellParams {
  double w1 = 0.25;
  double w2 = 0.75;
  double p = 2.0;            // gradient exponent, >= 1
  double eps_inv_sq = 0.0;   // 1/eps^2 weight on the double well

  void validate() const;
};

// (v - w1)^2 (v - w2)^2
double double_well(double v, const WellParams& wells);

// Exact integral of the double well along the linear segment from xl to xr
// over an element of length h (3-point Gauss-Legendre, exact for the quartic).
double element_potential(double xl, double xr, double h, const WellParams& wells);

// sum_j (h/p)|(x_j - x_{j-1})/h|^p + eps_inv_sq * elementwise potential, with
// the boundary values of `level` substituted at both ends.
double gl_energy(std::span<const double> interior, const FeLevel& level,
                 const WellParams& wells);

// Linear interpolation of coarse interior nodal values (level i, boundary
// values supplied) onto the fine grid (level m); exact at coarse nodes.
std::vector<double> prolongate(std::span<const double> coarse_interior, int coarse_level,
                               int fine_level, double v0, double v1);

// Pointwise bounds g <= v <= f sampled at the interior nodes of the finest
// grid (length 2^m - 1).
struct Obstacle {
  std::vector<double> lower;
  std::vector<double> upper;

  void validate() const;
};

// Hypercuboid enforcing the obstacle only at the active-level node indices
// l = k * 2^(m-i); all other coordinates stay free.
Domain obstacle_domain(const Obstacle& obstacle, int active_level, int fine_level);

// Clamps the active-level nodes of `interior` into [g, f]; other nodes untouched.
void apply_obstacle(std::span<double> interior, const Obstacle& obstacle,
                    int active_level, int fine_level);

struct MultigridProblem {
  int m = 5;  // finest level; optimization dimension is 2^m - 1
  double v0 = 0.5;
  double v1 = 1.0;
  WellParams wells;
  std::optional<Obstacle> obstacle;  // sampled at finest interior nodes
};

struct MultigridSchedule {
  long iters_per_level = 100;
  long iters_finest = 1000;
  int first_level = 2;
};

struct LevelResult {
  int level = 0;
  RunRecord record;
  std::vector<double> consensus_interior;  // consensus field at the end of the level
};

struct MultigridResult {
  std::vector<double> final_consensus;  // interior nodal values at the finest level
  std::vector<LevelResult> levels;
};

// Coarse-to-fine driver: the state always lives at the finest resolution; each
// stage switches the hierarchical-noise level (and the active obstacle level)
// and warm-starts from the previous stage's final ensemble. The initial
// ensemble draws coarse interior values i.i.d. uniform on
// [w1 - 0.25, w2 + 0.25] and prolongates them to the fine grid.
// `particles` <= 0 selects the default N = 20 * (2^m - 1).
MultigridResult multigrid_solve(const MultigridProblem& problem, const CboParams& cbo,
                                const HeuristicsConfig& heuristics,
                                const MultigridSchedule& schedule, long particles,
                                std::uint64_t seed, const RunOptions& opts = {});

}  // namespace cbo::fem
