#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "origami/configspace.hpp"
#include "origami/pattern.hpp"

namespace origami {

struct SpanCheck {
  bool in_span = false;
  // norm of the component of the unit direction outside the span
  double residual = 1.0;
};

// Distance of the (normalized) direction from the linear span of the given
// vectors. An empty spanning set leaves the whole direction outside.
SpanCheck span_membership(const std::vector<Eigen::VectorXd>& spanning,
                          const Eigen::VectorXd& direction);

struct DrivingForce {
  // unit torque vector, one entry per crease (valley positive)
  Eigen::VectorXd torque;
  // first-order work rate along the target branch at the flat state
  double forward_force_flat = 0.0;
  // largest |torque . tangent| over the surrounding branches
  double max_surrounding_overlap = 0.0;
};

// Constant crease torque that pushes the target branch forward while doing
// zero first-order work on every surrounding branch tangent: the normalized
// component of the target direction orthogonal to the surrounding span.
// Throws NotUniquelySelfFoldable when the target lies inside that span.
DrivingForce synthesize_driving_force(
    const std::vector<Eigen::VectorXd>& surrounding,
    const Eigen::VectorXd& target);

struct Analysis {
  PatternClass pattern_class = PatternClass::Unsupported;
  std::vector<GlobalMode> modes;
  int target_mode = 0;
  int tangent_dim = 0;
  int surrounding_span_dim = 0;
  double span_residual = 0.0;
  bool uniquely_self_foldable = false;
  std::optional<DrivingForce> force;
};

// Full decision pipeline for one target branch: classify the pattern,
// enumerate branches through the flat state, test the target tangent against
// the span of every other branch orientation, and synthesize a driving force
// when the target is uniquely reachable.
Analysis analyze(const CreasePattern& cp, int target_mode);

}  // namespace origami
