#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cbo/domain.hpp"
#include "cbo/rng.hpp"

using cbo::BallSpec;
using cbo::Domain;
using cbo::PaperDomain;
using cbo::RngStream;

namespace {

double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::vector<double> random_point(RngStream& rng, int d, double lo, double hi) {
  std::vector<double> x(d);
  for (double& v : x) v = lo + (hi - lo) * rng.next_uniform();
  return x;
}

// Every feasible point of a dense grid must not beat the projection by more
// than the tolerance; a correct nearest-point projection passes at any grid
// density.
void grid_oracle(const Domain& dom, int d, double lo, double hi, double spacing,
                 int n_queries, std::uint64_t seed) {
  std::vector<std::vector<double>> grid;
  const int per_axis = static_cast<int>((hi - lo) / spacing) + 1;
  std::vector<int> idx(d, 0);
  std::vector<double> pt(d);
  while (true) {
    for (int k = 0; k < d; ++k) pt[k] = lo + idx[k] * spacing;
    if (dom.contains(pt, 0.0)) grid.push_back(pt);
    int k = 0;
    while (k < d && ++idx[k] >= per_axis) idx[k++] = 0;
    if (k == d) break;
  }
  REQUIRE(grid.size() > 0);
  RngStream rng(seed, 0);
  for (int q = 0; q < n_queries; ++q) {
    const auto x = random_point(rng, d, lo - 1.0, hi + 1.0);
    const auto px = dom.project(x);
    CHECK(dom.contains(px, 1e-12));
    const double dproj = dist(x, px);
    for (const auto& z : grid) {
      CHECK(dproj <= dist(x, z) + 1e-6);
    }
  }
}

}  // namespace

TEST_CASE("box projection clamps coordinatewise") {
  auto dom = Domain::box({-1.0, -1.0}, {1.0, 1.0});
  const auto p = dom.project(std::vector<double>{2.0, 0.0});
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.0);
}

TEST_CASE("ball projection rescales radially") {
  auto dom = Domain::ball({0.0, 0.0}, 1.0);
  const auto p = dom.project(std::vector<double>{3.0, 4.0});
  CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("removed-ball interior projects to the removed sphere") {
  auto dom = cbo::make_paper_domain(PaperDomain::omega3, 2);
  const auto p = dom.project(std::vector<double>{1.0, 0.5});
  CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("removed-ball center tie breaks along +e1") {
  auto dom = cbo::make_paper_domain(PaperDomain::omega3, 2);
  const auto p = dom.project(std::vector<double>{1.0, 0.0});
  CHECK(p[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(p[1] == 0.0);
}

TEST_CASE("contains with tolerance band") {
  auto box = Domain::box({0.0}, {1.0});
  CHECK(box.contains(std::vector<double>{0.5}, 0.0));
  auto ball = Domain::ball({0.0, 0.0}, 1.0);
  CHECK(ball.contains(std::vector<double>{1.0 + 1e-13, 0.0}, 1e-12));
  CHECK_FALSE(ball.contains(std::vector<double>{1.0 + 1e-11, 0.0}, 1e-12));
  auto omega3 = cbo::make_paper_domain(PaperDomain::omega3, 2);
  CHECK_FALSE(omega3.contains(std::vector<double>{1.0, 0.0}, 0.0));
  CHECK(omega3.contains(std::vector<double>{2.0, 0.0}, 0.0));  // on the removed sphere
}

TEST_CASE("paper domains carry the published geometry") {
  auto o1 = cbo::make_paper_domain(PaperDomain::omega1, 2);
  CHECK(o1.lower() == std::vector<double>{-6.12, -6.12});
  CHECK(o1.upper() == std::vector<double>{5.12, 5.12});

  auto o2 = cbo::make_paper_domain(PaperDomain::omega2, 3);
  CHECK(o2.lower() == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(o2.upper() == std::vector<double>{11.24, 11.24, 11.24});

  auto o4 = cbo::make_paper_domain(PaperDomain::omega4, 4);
  CHECK(o4.outer_ball().radius == 5.12);
  REQUIRE(o4.removed_balls().size() == 2);
  for (double c : o4.removed_balls()[0].center) CHECK(c == doctest::Approx(0.5).epsilon(1e-14));
  for (double c : o4.removed_balls()[1].center) CHECK(c == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("construction rejects bad geometry") {
  CHECK_THROWS_AS(Domain::box({1.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Domain::ball({0.0}, -1.0), std::invalid_argument);
  // removed ball poking out of the outer ball
  CHECK_THROWS_AS(Domain::ball_minus_balls({{0.0, 0.0}, 2.0}, {{{1.5, 0.0}, 1.0}}),
                  std::invalid_argument);
  // overlapping removed balls
  CHECK_THROWS_AS(Domain::ball_minus_balls({{0.0, 0.0}, 10.0},
                                           {{{1.0, 0.0}, 1.0}, {{2.0, 0.0}, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Domain::obstacle_box({0.0, 1.0}, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("projection is idempotent") {
  RngStream rng(11, 0);
  auto o3 = cbo::make_paper_domain(PaperDomain::omega3, 3);
  std::vector<Domain> convex;
  convex.push_back(Domain::box({-1.0, -2.0, 0.0}, {1.0, 2.0, 3.0}));
  convex.push_back(Domain::ball({0.5, -0.5, 0.0}, 2.0));
  for (const auto& dom : convex) {
    for (int q = 0; q < 200; ++q) {
      const auto x = random_point(rng, 3, -8.0, 8.0);
      const auto p1 = dom.project(x);
      const auto p2 = dom.project(p1);
      for (int k = 0; k < 3; ++k) CHECK(p2[k] == p1[k]);
    }
  }
  for (int q = 0; q < 200; ++q) {
    const auto x = random_point(rng, 3, -8.0, 8.0);
    const auto p1 = o3.project(x);
    const auto p2 = o3.project(p1);
    CHECK(dist(p1, p2) <= 1e-12);
  }
}

TEST_CASE("convex projections are nonexpansive") {
  RngStream rng(13, 0);
  std::vector<Domain> convex;
  convex.push_back(Domain::box({-1.0, -2.0}, {1.0, 2.0}));
  convex.push_back(Domain::ball({0.0, 0.0}, 1.5));
  convex.push_back(Domain::obstacle_box(
      {-std::numeric_limits<double>::infinity(), 0.0},
      {1.0, std::numeric_limits<double>::infinity()}));
  for (const auto& dom : convex) {
    for (int q = 0; q < 500; ++q) {
      const auto x = random_point(rng, 2, -6.0, 6.0);
      const auto y = random_point(rng, 2, -6.0, 6.0);
      const auto px = dom.project(x);
      const auto py = dom.project(y);
      CHECK(dist(px, py) <= dist(x, y) + 1e-12);
    }
  }
}

TEST_CASE("feasible points are projection fixed points") {
  RngStream rng(17, 0);
  auto box = Domain::box({-1.0, -1.0}, {1.0, 1.0});
  auto ball = Domain::ball({0.0, 0.0}, 1.0);
  for (int q = 0; q < 300; ++q) {
    std::vector<double> in_box = random_point(rng, 2, -1.0, 1.0);
    const auto p = box.project(in_box);
    CHECK(p[0] == in_box[0]);
    CHECK(p[1] == in_box[1]);

    auto in_ball = random_point(rng, 2, -0.7, 0.7);
    const auto q2 = ball.project(in_ball);
    CHECK(dist(q2, in_ball) <= 1e-14);
  }
}

TEST_CASE("grid oracle confirms nearest-point optimality") {
  // d = 1 at fine spacing, higher dimensions at coarser spacing; the check
  // direction is density-independent
  grid_oracle(Domain::box({-1.0}, {1.5}), 1, -2.0, 2.0, 1e-3, 400, 101);
  grid_oracle(Domain::ball({0.25}, 1.0), 1, -2.0, 2.0, 1e-3, 400, 102);
  grid_oracle(Domain::box({-1.0, -0.5}, {1.0, 2.0}), 2, -3.0, 3.0, 0.02, 200, 103);
  grid_oracle(Domain::ball({0.0, 0.0}, 2.0), 2, -3.0, 3.0, 0.02, 200, 104);
  grid_oracle(cbo::make_paper_domain(PaperDomain::omega3, 2), 2, -6.0, 6.0, 0.04, 200, 105);
  grid_oracle(cbo::make_paper_domain(PaperDomain::omega4, 3), 3, -6.0, 6.0, 0.25, 60, 106);
}
