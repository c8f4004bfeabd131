#include "cbo/heuristics.hpp"

#include <cmath>
#include <stdexcept>

namespace cbo {

void HeuristicsConfig::validate() const {
  if (!(alpha0 > 0.0) || !(alphaK > 0.0))
    throw std::invalid_argument("HeuristicsConfig: alpha endpoints must be positive");
  if (alpha0 > alphaK)
    throw std::invalid_argument("HeuristicsConfig: alpha0 must not exceed alphaK");
  if (gamma && !(*gamma > 0.0 && *gamma <= 1.0))
    throw std::invalid_argument("HeuristicsConfig: gamma must lie in (0, 1]");
  if (boost_S && !(*boost_S >= 1.0))
    throw std::invalid_argument("HeuristicsConfig: boost factor S must be >= 1");
}

double alpha_schedule(long k, long iterations, double alpha0, double alphaK) {
  if (iterations < 1) throw std::invalid_argument("alpha_schedule: K must be >= 1");
  if (k < 0 || k > iterations)
    throw std::invalid_argument("alpha_schedule: iteration outside [0, K]");
  if (k == 0) return alpha0;
  if (k == iterations) return alphaK;
  return alpha0 + (static_cast<double>(k) / static_cast<double>(iterations)) * (alphaK - alpha0);
}

double boosted_sigma(double lambda, double S) {
  if (!(lambda > 0.0)) throw std::invalid_argument("boosted_sigma: lambda must be positive");
  return S * std::sqrt(2.0 * lambda);
}

double exploitation_radius(const Ensemble& ensemble, std::span<const double> consensus,
                           double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("exploitation_radius: gamma must lie in (0, 1]");
  if (static_cast<int>(consensus.size()) != ensemble.dim())
    throw std::invalid_argument("exploitation_radius: dimension mismatch");
  double max2 = 0.0;
  for (long i = 0; i < ensemble.size(); ++i) {
    auto x = ensemble.position(i);
    double d2 = 0.0;
    for (std::size_t l = 0; l < consensus.size(); ++l) {
      const double d = x[l] - consensus[l];
      d2 += d * d;
    }
    if (d2 > max2) max2 = d2;
  }
  return gamma * std::sqrt(max2);
}

void clamp_point_to_ball(std::span<double> x, std::span<const double> center, double radius) {
  double d2 = 0.0;
  for (std::size_t l = 0; l < x.size(); ++l) {
    const double d = x[l] - center[l];
    d2 += d * d;
  }
  if (d2 > radius * radius) {
    const double scale = radius / std::sqrt(d2);
    for (std::size_t l = 0; l < x.size(); ++l)
      x[l] = center[l] + (x[l] - center[l]) * scale;
  }
}

void clamp_to_ball(Ensemble& ensemble, std::span<const double> consensus, double radius) {
  if (static_cast<int>(consensus.size()) != ensemble.dim())
    throw std::invalid_argument("clamp_to_ball: dimension mismatch");
  if (!(radius >= 0.0)) throw std::invalid_argument("clamp_to_ball: radius must be >= 0");
  for (long i = 0; i < ensemble.size(); ++i)
    clamp_point_to_ball(ensemble.position(i), consensus, radius);
}

void exploitation_project(Ensemble& ensemble, std::span<const double> consensus, double gamma) {
  clamp_to_ball(ensemble, consensus, exploitation_radius(ensemble, consensus, gamma));
}

}  // namespace cbo
