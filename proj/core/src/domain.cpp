#include "cbo/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cbo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument("Domain: " + msg);
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void rescale_about(std::span<double> x, const BallSpec& b, double scale) {
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = b.center[i] + (x[i] - b.center[i]) * scale;
}

// radial clamp that is exactly idempotent: nudge the scale by ulps until the
// result tests inside
void clamp_inside_sphere(std::span<double> x, const BallSpec& b) {
  const double r2 = dist2(x, b.center);
  if (r2 <= b.radius * b.radius) return;
  double scale = b.radius / std::sqrt(r2);
  std::vector<double> saved(x.begin(), x.end());
  for (;;) {
    rescale_about(x, b, scale);
    if (dist2(x, b.center) <= b.radius * b.radius) return;
    std::copy(saved.begin(), saved.end(), x.begin());
    scale = std::nextafter(scale, 0.0);
  }
}

// radial pushout that lands on or outside the sphere
void push_onto_sphere(std::span<double> x, const BallSpec& b) {
  const double r2 = dist2(x, b.center);
  double scale = b.radius / std::sqrt(r2);
  std::vector<double> saved(x.begin(), x.end());
  for (;;) {
    rescale_about(x, b, scale);
    if (dist2(x, b.center) >= b.radius * b.radius) return;
    std::copy(saved.begin(), saved.end(), x.begin());
    scale = std::nextafter(scale, std::numeric_limits<double>::infinity());
  }
}

}  // namespace

Domain Domain::all_space(int dim) {
  require(dim >= 1, "dimension must be >= 1");
  return Domain(Kind::all_space, dim);
}

Domain Domain::box(std::vector<double> lower, std::vector<double> upper) {
  require(!lower.empty() && lower.size() == upper.size(), "box bounds must match and be nonempty");
  require(all_finite(lower) && all_finite(upper), "box bounds must be finite");
  for (std::size_t i = 0; i < lower.size(); ++i)
    require(lower[i] <= upper[i], "box requires lower <= upper coordinatewise");
  Domain d(Kind::box, static_cast<int>(lower.size()));
  d.lower_ = std::move(lower);
  d.upper_ = std::move(upper);
  return d;
}

Domain Domain::ball(std::vector<double> center, double radius) {
  require(!center.empty(), "ball center must be nonempty");
  require(all_finite(center), "ball center must be finite");
  require(std::isfinite(radius) && radius > 0.0, "ball radius must be positive");
  Domain d(Kind::ball, static_cast<int>(center.size()));
  d.outer_ = {std::move(center), radius};
  return d;
}

Domain Domain::ball_minus_balls(BallSpec outer, std::vector<BallSpec> removed) {
  require(!outer.center.empty(), "outer ball center must be nonempty");
  require(all_finite(outer.center) && std::isfinite(outer.radius) && outer.radius > 0.0,
          "outer ball must be finite with positive radius");
  const std::size_t dim = outer.center.size();
  for (const auto& b : removed) {
    require(b.center.size() == dim, "removed ball dimension mismatch");
    require(all_finite(b.center) && std::isfinite(b.radius) && b.radius > 0.0,
            "removed balls must be finite with positive radius");
    const double gap = std::sqrt(dist2(b.center, outer.center));
    require(gap + b.radius < outer.radius, "removed balls must lie strictly inside the outer ball");
  }
  // touching removed balls are fine (the open balls stay disjoint)
  for (std::size_t i = 0; i < removed.size(); ++i)
    for (std::size_t j = i + 1; j < removed.size(); ++j) {
      const double gap = std::sqrt(dist2(removed[i].center, removed[j].center));
      require(gap >= removed[i].radius + removed[j].radius - 1e-9,
              "removed balls must be pairwise disjoint");
    }
  Domain d(Kind::ball_minus_balls, static_cast<int>(dim));
  d.outer_ = std::move(outer);
  d.removed_ = std::move(removed);
  return d;
}

Domain Domain::obstacle_box(std::vector<double> lower, std::vector<double> upper) {
  require(!lower.empty() && lower.size() == upper.size(),
          "obstacle bounds must match and be nonempty");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    require(!std::isnan(lower[i]) && !std::isnan(upper[i]), "obstacle bounds must not be NaN");
    require(lower[i] <= upper[i], "obstacle requires lower <= upper coordinatewise");
  }
  Domain d(Kind::obstacle_box, static_cast<int>(lower.size()));
  d.lower_ = std::move(lower);
  d.upper_ = std::move(upper);
  return d;
}

void Domain::project(std::span<const double> x, std::span<double> out) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(out.size()) != dim_)
    throw std::invalid_argument("Domain::project: dimension mismatch");
  if (out.data() != x.data()) std::copy(x.begin(), x.end(), out.begin());
  project_in_place(out);
}

std::vector<double> Domain::project(std::span<const double> x) const {
  std::vector<double> out(x.begin(), x.end());
  project_in_place(out);
  return out;
}

void Domain::project_in_place(std::span<double> x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("Domain::project: dimension mismatch");
  switch (kind_) {
    case Kind::all_space:
      return;
    case Kind::box:
    case Kind::obstacle_box:
      for (int i = 0; i < dim_; ++i) x[i] = std::clamp(x[i], lower_[i], upper_[i]);
      return;
    case Kind::ball:
      clamp_inside_sphere(x, outer_);
      return;
    case Kind::ball_minus_balls: {
      // inside a removed open ball: push radially out to its sphere
      for (const auto& b : removed_) {
        const double r2 = dist2(x, b.center);
        if (r2 < b.radius * b.radius) {
          if (r2 == 0.0) {
            // measure-zero tie at the removed-ball center: move along +e1
            x[0] = b.center[0] + b.radius;
            for (int i = 1; i < dim_; ++i) x[i] = b.center[i];
          } else {
            push_onto_sphere(x, b);
          }
          break;  // removed balls are disjoint, at most one contains x
        }
      }
      // clamp to the outer sphere (removed balls are strictly interior, so
      // this cannot re-enter one)
      clamp_inside_sphere(x, outer_);
      return;
    }
  }
}

double Domain::distance(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("Domain::distance: dimension mismatch");
  switch (kind_) {
    case Kind::all_space:
      return 0.0;
    case Kind::box:
    case Kind::obstacle_box: {
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) {
        double e = 0.0;
        if (x[i] < lower_[i])
          e = lower_[i] - x[i];
        else if (x[i] > upper_[i])
          e = x[i] - upper_[i];
        s += e * e;
      }
      return std::sqrt(s);
    }
    case Kind::ball: {
      const double r = std::sqrt(dist2(x, outer_.center));
      return std::max(0.0, r - outer_.radius);
    }
    case Kind::ball_minus_balls: {
      const double r = std::sqrt(dist2(x, outer_.center));
      if (r > outer_.radius) return r - outer_.radius;
      for (const auto& b : removed_) {
        const double rb = std::sqrt(dist2(x, b.center));
        if (rb < b.radius) return b.radius - rb;
      }
      return 0.0;
    }
  }
  return 0.0;
}

bool Domain::contains(std::span<const double> x, double tol) const {
  return distance(x) <= tol;
}

Domain make_paper_domain(PaperDomain which, int dim) {
  if (dim < 1) throw std::invalid_argument("make_paper_domain: dimension must be >= 1");
  switch (which) {
    case PaperDomain::omega1:
      return Domain::box(std::vector<double>(dim, -6.12), std::vector<double>(dim, 5.12));
    case PaperDomain::omega2:
      return Domain::box(std::vector<double>(dim, 0.0), std::vector<double>(dim, 11.24));
    case PaperDomain::omega3: {
      std::vector<double> xbar(dim, 0.0);
      xbar[0] = 1.0;
      std::vector<double> neg(dim, 0.0);
      neg[0] = -1.0;
      return Domain::ball_minus_balls({std::vector<double>(dim, 0.0), 5.12},
                                      {{xbar, 1.0}, {neg, 1.0}});
    }
    case PaperDomain::omega4: {
      const double c = 1.0 / std::sqrt(static_cast<double>(dim));
      std::vector<double> xbar(dim, c);
      std::vector<double> neg(dim, -c);
      return Domain::ball_minus_balls({std::vector<double>(dim, 0.0), 5.12},
                                      {{xbar, 1.0}, {neg, 1.0}});
    }
  }
  throw std::invalid_argument("make_paper_domain: unknown domain name");
}

}  // namespace cbo
