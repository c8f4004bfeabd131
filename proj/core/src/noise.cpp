#include "cbo/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace cbo {

namespace {

void check_dims(std::span<const double> x, std::span<const double> consensus,
                std::span<const double> out, double dt) {
  if (x.size() != consensus.size() || x.size() != out.size())
    throw std::invalid_argument("noise draw: dimension mismatch");
  if (!(dt > 0.0)) throw std::invalid_argument("noise draw: dt must be positive");
}

void check_levels(int coarse, int fine, std::size_t len) {
  if (coarse < 1 || fine < coarse)
    throw std::invalid_argument("hierarchical_transform: levels must satisfy 1 <= i <= m");
  if (len != static_cast<std::size_t>((1 << fine) - 1))
    throw std::invalid_argument("hierarchical_transform: input length must be 2^m - 1");
}

}  // namespace

void anisotropic_draw(std::span<const double> x, std::span<const double> consensus,
                      double sigma, double dt, RngStream& stream, std::span<double> out) {
  check_dims(x, consensus, out, dt);
  const double sqrt_dt = std::sqrt(dt);
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = sigma * (x[i] - consensus[i]) * stream.next_normal() * sqrt_dt;
}

void isotropic_draw(std::span<const double> x, std::span<const double> consensus,
                    double sigma, double dt, RngStream& stream, std::span<double> out) {
  check_dims(x, consensus, out, dt);
  double gap2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - consensus[i];
    gap2 += d * d;
  }
  const double scale = sigma * std::sqrt(gap2) * std::sqrt(dt);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = scale * stream.next_normal();
}

void hierarchical_transform_into(std::span<const double> beta_fine, int coarse_level,
                                 int fine_level, std::span<double> out,
                                 std::span<double> scratch) {
  check_levels(coarse_level, fine_level, beta_fine.size());
  const long n = static_cast<long>(beta_fine.size());
  if (static_cast<long>(out.size()) != n || static_cast<long>(scratch.size()) != n)
    throw std::invalid_argument("hierarchical_transform: output length mismatch");

  // coarse piecewise-linear interpolant through the subsampled values
  // beta_{k * 2^(m-i)}, zero at both boundary endpoints, evaluated at all fine
  // nodes
  const long step = 1L << (fine_level - coarse_level);
  const long coarse_max = (1L << coarse_level);  // coarse node count incl. boundary
  for (long l = 1; l <= n; ++l) {
    const long k = l / step;
    const long rem = l - k * step;
    const double vl = (k == 0) ? 0.0 : beta_fine[k * step - 1];
    const double vr = (k + 1 == coarse_max) ? 0.0 : beta_fine[(k + 1) * step - 1];
    scratch[l - 1] =
        (rem == 0) ? vl : vl + (vr - vl) * (static_cast<double>(rem) / static_cast<double>(step));
  }

  // fine mass operator, tridiagonal with diagonal 2h/3 and off-diagonal h/6
  const double h = std::ldexp(1.0, -fine_level);
  const double diag = 2.0 * h / 3.0;
  const double off = h / 6.0;
  for (long l = 0; l < n; ++l) {
    const double left = (l == 0) ? 0.0 : scratch[l - 1];
    const double right = (l == n - 1) ? 0.0 : scratch[l + 1];
    out[l] = diag * scratch[l] + off * (left + right);
  }
}

std::vector<double> hierarchical_transform(std::span<const double> beta_fine, int coarse_level,
                                           int fine_level) {
  std::vector<double> out(beta_fine.size());
  std::vector<double> scratch(beta_fine.size());
  hierarchical_transform_into(beta_fine, coarse_level, fine_level, out, scratch);
  return out;
}

void noise_draw(const NoiseModel& model, std::span<const double> x,
                std::span<const double> consensus, double dt, RngStream& stream,
                std::span<double> out, std::span<double> scratch) {
  switch (model.kind) {
    case NoiseKind::anisotropic:
      anisotropic_draw(x, consensus, model.sigma, dt, stream, out);
      return;
    case NoiseKind::isotropic:
      isotropic_draw(x, consensus, model.sigma, dt, stream, out);
      return;
    case NoiseKind::hierarchical: {
      if (scratch.size() != x.size())
        throw std::invalid_argument("noise_draw: scratch length mismatch");
      anisotropic_draw(x, consensus, model.sigma, dt, stream, scratch);
      std::vector<double> w(x.size());
      hierarchical_transform_into(scratch, model.coarse_level, model.fine_level, out, w);
      if (model.rescale_amplitude) {
        const double inv_h = std::ldexp(1.0, model.fine_level);
        for (double& v : out) v *= inv_h;
      }
      return;
    }
  }
}

}  // namespace cbo
