#pragma once

#include <span>

namespace cbo::bench {

// 10 d + sum_i (x_i^2 - 10 cos(2 pi x_i)); global minimum 0 at the origin.
double rastrigin(std::span<const double> x);

// |x|^2
double sphere(std::span<const double> x);

}  // namespace cbo::bench
