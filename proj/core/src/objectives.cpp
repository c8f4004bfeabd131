#include "cbo/bench/objectives.hpp"

#include <cmath>
#include <numbers>

namespace cbo::bench {

double rastrigin(std::span<const double> x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double acc = 10.0 * static_cast<double>(x.size());
  for (double xi : x) acc += xi * xi - 10.0 * std::cos(two_pi * xi);
  return acc;
}

double sphere(std::span<const double> x) {
  double acc = 0.0;
  for (double xi : x) acc += xi * xi;
  return acc;
}

}  // namespace cbo::bench
