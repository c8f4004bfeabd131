#include "cbo/fem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cbo::fem {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 3-point Gauss-Legendre on [0,1]
constexpr double kGlOffset = 0.3872983346207417;  // sqrt(3/5)/2
constexpr double kGlNode0 = 0.5 - kGlOffset;
constexpr double kGlNode2 = 0.5 + kGlOffset;
constexpr double kGlWeightOuter = 5.0 / 18.0;
constexpr double kGlWeightMid = 8.0 / 18.0;

double gradient_power(double slope, double p) {
  if (p == 2.0) return slope * slope;
  if (p == 1.0) return std::abs(slope);
  return std::pow(std::abs(slope), p);
}

}  // namespace

void WellParams::validate() const {
  if (!(w1 < w2)) throw std::invalid_argument("WellParams: w1 < w2 required");
  if (!(p >= 1.0)) throw std::invalid_argument("WellParams: p >= 1 required");
  if (!(eps_inv_sq >= 0.0)) throw std::invalid_argument("WellParams: eps_inv_sq >= 0 required");
}

double double_well(double v, const WellParams& wells) {
  const double a = v - wells.w1;
  const double b = v - wells.w2;
  return a * a * b * b;
}

double element_potential(double xl, double xr, double h, const WellParams& wells) {
  if (!(h > 0.0)) throw std::invalid_argument("element_potential: h must be positive");
  const double span = xr - xl;
  const double f0 = double_well(xl + span * kGlNode0, wells);
  const double f1 = double_well(xl + span * 0.5, wells);
  const double f2 = double_well(xl + span * kGlNode2, wells);
  return h * (kGlWeightOuter * (f0 + f2) + kGlWeightMid * f1);
}

double gl_energy(std::span<const double> interior, const FeLevel& level,
                 const WellParams& wells) {
  const int M = level.elements();
  if (static_cast<int>(interior.size()) != M - 1)
    throw std::invalid_argument("gl_energy: field length must be M - 1");
  const double h = level.h();
  const double inv_h = static_cast<double>(M);
  double acc = 0.0;
  double prev = level.v0;
  for (int j = 1; j <= M; ++j) {
    const double cur = (j == M) ? level.v1 : interior[static_cast<std::size_t>(j - 1)];
    if (!std::isfinite(cur)) throw std::invalid_argument("gl_energy: non-finite nodal value");
    const double slope = (cur - prev) * inv_h;
    acc += (h / wells.p) * gradient_power(slope, wells.p);
    if (wells.eps_inv_sq != 0.0)
      acc += wells.eps_inv_sq * element_potential(prev, cur, h, wells);
    prev = cur;
  }
  return acc;
}

std::vector<double> prolongate(std::span<const double> coarse_interior, int coarse_level,
                               int fine_level, double v0, double v1) {
  if (coarse_level < 1 || fine_level < coarse_level)
    throw std::invalid_argument("prolongate: levels must satisfy 1 <= i <= m");
  const long coarse_nodes = (1L << coarse_level);
  if (static_cast<long>(coarse_interior.size()) != coarse_nodes - 1)
    throw std::invalid_argument("prolongate: coarse field length must be 2^i - 1");
  const long n = (1L << fine_level) - 1;
  const long step = 1L << (fine_level - coarse_level);
  std::vector<double> fine(static_cast<std::size_t>(n));
  for (long l = 1; l <= n; ++l) {
    const long k = l / step;
    const long rem = l - k * step;
    const double vl = (k == 0) ? v0 : coarse_interior[static_cast<std::size_t>(k - 1)];
    const double vr = (k + 1 == coarse_nodes) ? v1 : coarse_interior[static_cast<std::size_t>(k)];
    fine[static_cast<std::size_t>(l - 1)] =
        (rem == 0) ? vl
                   : vl + (vr - vl) * (static_cast<double>(rem) / static_cast<double>(step));
  }
  return fine;
}

void Obstacle::validate() const {
  if (lower.empty() || lower.size() != upper.size())
    throw std::invalid_argument("Obstacle: bounds must match and be nonempty");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]))
      throw std::invalid_argument("Obstacle: bounds must not be NaN");
    if (!(lower[i] <= upper[i]))
      throw std::invalid_argument("Obstacle: g <= f required at every sampled node");
  }
}

Domain obstacle_domain(const Obstacle& obstacle, int active_level, int fine_level) {
  obstacle.validate();
  if (active_level < 1 || fine_level < active_level)
    throw std::invalid_argument("obstacle_domain: levels must satisfy 1 <= i <= m");
  const long n = (1L << fine_level) - 1;
  if (static_cast<long>(obstacle.lower.size()) != n)
    throw std::invalid_argument("obstacle_domain: bounds must be sampled at 2^m - 1 nodes");
  std::vector<double> lo(static_cast<std::size_t>(n), -kInf);
  std::vector<double> hi(static_cast<std::size_t>(n), kInf);
  const long step = 1L << (fine_level - active_level);
  for (long k = 1; k < (1L << active_level); ++k) {
    const std::size_t idx = static_cast<std::size_t>(k * step - 1);
    lo[idx] = obstacle.lower[idx];
    hi[idx] = obstacle.upper[idx];
  }
  return Domain::obstacle_box(std::move(lo), std::move(hi));
}

void apply_obstacle(std::span<double> interior, const Obstacle& obstacle, int active_level,
                    int fine_level) {
  obstacle.validate();
  if (active_level < 1 || fine_level < active_level)
    throw std::invalid_argument("apply_obstacle: levels must satisfy 1 <= i <= m");
  const long n = (1L << fine_level) - 1;
  if (static_cast<long>(interior.size()) != n ||
      static_cast<long>(obstacle.lower.size()) != n)
    throw std::invalid_argument("apply_obstacle: field length must be 2^m - 1");
  const long step = 1L << (fine_level - active_level);
  for (long k = 1; k < (1L << active_level); ++k) {
    const std::size_t idx = static_cast<std::size_t>(k * step - 1);
    interior[idx] = std::clamp(interior[idx], obstacle.lower[idx], obstacle.upper[idx]);
  }
}

MultigridResult multigrid_solve(const MultigridProblem& problem, const CboParams& cbo,
                                const HeuristicsConfig& heuristics,
                                const MultigridSchedule& schedule, long particles,
                                std::uint64_t seed, const RunOptions& opts) {
  problem.wells.validate();
  if (problem.m < 2) throw std::invalid_argument("multigrid_solve: finest level m >= 2 required");
  if (schedule.first_level < 1 || schedule.first_level > problem.m)
    throw std::invalid_argument("multigrid_solve: first level must lie in [1, m]");
  if (schedule.iters_per_level < 0 || schedule.iters_finest < 0)
    throw std::invalid_argument("multigrid_solve: iteration counts must be >= 0");

  const int m = problem.m;
  const long dim = (1L << m) - 1;
  const long n = particles > 0 ? particles : 20 * dim;
  const FeLevel level{m, problem.v0, problem.v1};
  if (problem.obstacle) problem.obstacle->validate();

  // coarse-resolution initial law: uniform nodal values spanning both wells,
  // interpolated up to the fine grid
  Ensemble ensemble(n, static_cast<int>(dim), seed);
  const int coarse0 = schedule.first_level;
  const double lo = problem.wells.w1 - 0.25;
  const double span = (problem.wells.w2 + 0.25) - lo;
  std::vector<double> coarse(static_cast<std::size_t>((1L << coarse0) - 1));
  for (long i = 0; i < n; ++i) {
    for (double& c : coarse) c = lo + span * ensemble.stream(i).next_uniform();
    const auto fine = prolongate(coarse, coarse0, m, problem.v0, problem.v1);
    auto x = ensemble.position(i);
    std::copy(fine.begin(), fine.end(), x.begin());
  }

  Objective energy = [&level, &problem](std::span<const double> x) {
    return gl_energy(x, level, problem.wells);
  };

  MultigridResult result;
  for (int i = schedule.first_level; i <= m; ++i) {
    CboParams stage = cbo;
    stage.noise_kind = NoiseKind::hierarchical;
    stage.noise_coarse_level = i;
    stage.noise_fine_level = m;
    stage.iterations = (i == m) ? schedule.iters_finest : schedule.iters_per_level;

    Domain domain = problem.obstacle ? obstacle_domain(*problem.obstacle, i, m)
                                     : Domain::all_space(static_cast<int>(dim));
    // refined obstacles activate new nodes; restore feasibility before the run
    for (long j = 0; j < n; ++j) domain.project_in_place(ensemble.position(j));

    RunRecord record = run(energy, domain, ensemble, stage, heuristics, opts);
    record.seed = seed;
    LevelResult lr;
    lr.level = i;
    lr.consensus_interior = record.rows.back().consensus;
    lr.record = std::move(record);
    result.levels.push_back(std::move(lr));
  }

  result.final_consensus = result.levels.back().consensus_interior;
  return result;
}

}  // namespace cbo::fem
