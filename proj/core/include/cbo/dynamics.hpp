#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cbo/domain.hpp"
#include "cbo/ensemble.hpp"
#include "cbo/heuristics.hpp"
#include "cbo/noise.hpp"
#include "cbo/run_record.hpp"

namespace cbo {

using Objective = std::function<double(std::span<const double>)>;

// A run aborted mid-flight (non-finite update or objective value).
class RunAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CboParams {
  double lambda = 1.0;
  double sigma = 1.0;  // ignored when HeuristicsConfig::boost_S is set
  double dt = 1e-2;
  long iterations = 100;  // K
  NoiseKind noise_kind = NoiseKind::anisotropic;
  int noise_coarse_level = 0;  // hierarchical only
  int noise_fine_level = 0;
  bool hierarchical_rescale = false;

  void validate() const;
};

// 2*lambda - sigma^2 > 0; informational, runs proceed either way.
bool theory_admissible(double lambda, double sigma);

struct StagnationStop {
  long window = 50;
  double tol = 1e-12;  // on consensus displacement over the window
};

struct RunOptions {
  std::optional<std::vector<double>> x_star;  // residual reference point
  int threads = 0;                            // 0 = library default
  std::optional<double> stop_residual;        // requires x_star
  std::optional<StagnationStop> stop_stagnation;
  bool ball_before_domain = true;  // order of exploitation ball vs domain projection
};

struct StepOptions {
  std::optional<double> ball_radius;
  bool ball_before_domain = true;
  int threads = 0;
};

// w_i proportional to exp(-alpha * E_i), computed with a min-energy shift so
// the largest exponent is exactly zero; safe for alpha up to 1e9 and beyond.
std::vector<double> gibbs_weights(std::span<const double> energies, double alpha);

// Gibbs-weighted mean of the particle positions.
std::vector<double> consensus_point(const Ensemble& ensemble,
                                    std::span<const double> energies, double alpha);

// (1/N) sum_i |X^i - x_star|^2
double residual(const Ensemble& ensemble, std::span<const double> x_star);

// log(V0/eps) / ((1 - tau) * (2*lambda - sigma^2)); 0 when V0 <= eps.
double planned_horizon(double v0, double eps, double tau, double lambda, double sigma);

// One explicit Euler step: drift toward the consensus, a noise draw per the
// model, the optional exploitation-ball clamp, then the domain projection.
void cbo_step(Ensemble& ensemble, std::span<const double> consensus,
              const CboParams& params, const NoiseModel& noise, const Domain& domain,
              const StepOptions& opts = {});

// Full iteration loop. Mutates `ensemble` in place (the final state stays
// available for warm starts) and returns the per-iteration diagnostics.
// Identical seeds and configs give bit-identical records for any thread count.
RunRecord run(const Objective& objective, const Domain& domain, Ensemble& ensemble,
              const CboParams& params, const HeuristicsConfig& heuristics,
              const RunOptions& opts = {});

}  // namespace cbo
