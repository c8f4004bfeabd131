#pragma once

#include <span>
#include <vector>

#include "cbo/rng.hpp"

namespace cbo {

enum class NoiseKind { anisotropic, isotropic, hierarchical };

struct NoiseModel {
  NoiseKind kind = NoiseKind::anisotropic;
  double sigma = 1.0;
  // hierarchical only: coarse level i in [1, m]; operates on 2^m - 1 coordinates
  int coarse_level = 0;
  int fine_level = 0;
  // optional 1/h amplitude compensation for the hierarchical transform;
  // off by default (the mass-weighted formula is kept as written)
  bool rescale_amplitude = false;
};

// sigma * (x - consensus)_l * z_l * sqrt(dt), z standard normal per coordinate
void anisotropic_draw(std::span<const double> x, std::span<const double> consensus,
                      double sigma, double dt, RngStream& stream, std::span<double> out);

// sigma * |x - consensus| * sqrt(dt) * z, z standard normal vector
void isotropic_draw(std::span<const double> x, std::span<const double> consensus,
                    double sigma, double dt, RngStream& stream, std::span<double> out);

// Mass-weighted trace of the coarse piecewise-linear interpolant of the fine
// noise vector: interprets beta_fine as nodal values on the interior nodes of
// a uniform grid with 2^m elements on [0,1], subsamples it at the coarse
// (level i) interior nodes, interpolates back to all fine nodes with zero
// boundary values and applies the fine 1D mass operator (tridiagonal with
// diagonal 2h/3 and off-diagonal h/6, h = 2^-m). Exact for the piecewise
// quadratic integrand.
std::vector<double> hierarchical_transform(std::span<const double> beta_fine,
                                           int coarse_level, int fine_level);

// In-place variant; `out` receives the result, `scratch` must have the same
// length and may alias neither argument.
void hierarchical_transform_into(std::span<const double> beta_fine, int coarse_level,
                                 int fine_level, std::span<double> out,
                                 std::span<double> scratch);

// Dispatch on the model kind. `scratch` must be at least x.size() long; it is
// only touched by the hierarchical kind.
void noise_draw(const NoiseModel& model, std::span<const double> x,
                std::span<const double> consensus, double dt, RngStream& stream,
                std::span<double> out, std::span<double> scratch);

}  // namespace cbo
