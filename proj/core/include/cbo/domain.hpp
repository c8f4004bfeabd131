#pragma once

#include <span>
#include <vector>

namespace cbo {

struct BallSpec {
  std::vector<double> center;
  double radius = 1.0;
};

// Feasible sets with membership test and exact nearest-point projection.
// Convex variants project to the unique Euclidean nearest point; the
// ball-minus-balls variant resolves its measure-zero ties deterministically
// (a point sitting exactly on a removed-ball center moves along +e1).
class Domain {
 public:
  enum class Kind { all_space, box, ball, ball_minus_balls, obstacle_box };

  static Domain all_space(int dim);
  static Domain box(std::vector<double> lower, std::vector<double> upper);
  static Domain ball(std::vector<double> center, double radius);
  static Domain ball_minus_balls(BallSpec outer, std::vector<BallSpec> removed);
  // Coordinatewise bounds where entries may be -inf/+inf for free coordinates.
  static Domain obstacle_box(std::vector<double> lower, std::vector<double> upper);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  void project(std::span<const double> x, std::span<double> out) const;
  std::vector<double> project(std::span<const double> x) const;
  void project_in_place(std::span<double> x) const;

  // Euclidean distance from x to the feasible set.
  double distance(std::span<const double> x) const;
  bool contains(std::span<const double> x, double tol = kMembershipTol) const;

  static constexpr double kMembershipTol = 1e-12;

  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const BallSpec& outer_ball() const { return outer_; }
  const std::vector<BallSpec>& removed_balls() const { return removed_; }

 private:
  Domain(Kind kind, int dim) : kind_(kind), dim_(dim) {}

  Kind kind_ = Kind::all_space;
  int dim_ = 0;
  std::vector<double> lower_, upper_;  // box / obstacle_box
  BallSpec outer_;                     // ball / ball_minus_balls
  std::vector<BallSpec> removed_;      // ball_minus_balls
};

// The benchmark geometries: omega1 = [-6.12, 5.12]^d, omega2 = [0, 11.24]^d,
// omega3/omega4 = B_5.12(0) minus two unit balls at +-xbar with xbar = e1
// resp. (1,...,1)/sqrt(d).
enum class PaperDomain { omega1, omega2, omega3, omega4 };

Domain make_paper_domain(PaperDomain which, int dim);

}  // namespace cbo
