#pragma once

#include <optional>
#include <span>

#include "cbo/ensemble.hpp"

namespace cbo {

// Few-particle enhancements: the linear alpha ramp, the shrinking consensus
// ball (gamma) and the boosted volatility sigma = S * sqrt(2 * lambda).
// alphaK defaults to 1e9; alpha0 is chosen per experiment.
struct HeuristicsConfig {
  double alpha0 = 1e6;
  double alphaK = 1e9;
  std::optional<double> gamma;    // exploitation ball factor, in (0, 1]
  std::optional<double> boost_S;  // exploration boost, >= 1; overrides sigma

  void validate() const;
};

// alpha0 + (k/K)(alphaK - alpha0); endpoints are exact.
double alpha_schedule(long k, long iterations, double alpha0, double alphaK);

// S * sqrt(2 * lambda); S = 1 is the admissibility boundary.
double boosted_sigma(double lambda, double S);

// gamma * max_i |X^i - consensus| (Euclidean).
double exploitation_radius(const Ensemble& ensemble, std::span<const double> consensus,
                           double gamma);

// Projects every particle onto the closed ball B(consensus, radius); particles
// already inside are untouched. Idempotent for a fixed radius.
void clamp_to_ball(Ensemble& ensemble, std::span<const double> consensus, double radius);

void clamp_point_to_ball(std::span<double> x, std::span<const double> center, double radius);

// exploitation_radius followed by clamp_to_ball on the same ensemble.
void exploitation_project(Ensemble& ensemble, std::span<const double> consensus, double gamma);

}  // namespace cbo
