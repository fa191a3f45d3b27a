#pragma once

#include <vector>

#include <Eigen/Dense>

#include "origami/configspace.hpp"
#include "origami/pattern.hpp"

namespace origami {

// Crease used to parameterize a branch: the lowest-index crease whose tangent
// component reaches a tenth of the largest magnitude.
int mode_driver_crease(const GlobalMode& mode);

// All crease angles on the branch when driver_crease is held at driver_value
// (radians, valley positive). Exact tan-half transfer when every interior
// vertex is flat-foldable, vertex-by-vertex continuation otherwise. Throws
// DegenerateMultiplier when the branch never folds the requested crease.
Eigen::VectorXd propagate_fold(const CreasePattern& cp, const GlobalMode& mode,
                               int driver_crease, double driver_value);

struct FoldPath {
  int driver_crease = 0;
  std::vector<double> driver_values;    // radians at the driver crease
  std::vector<Eigen::VectorXd> points;  // full angle vector per sample
  double arc_length = 0.0;              // polyline length in angle space
};

// Samples the branch from flat to driver_max with uniform tan-half spacing
// at the driver crease.
FoldPath fold_path(const CreasePattern& cp, const GlobalMode& mode,
                   double driver_max, int steps);

struct FoldedState {
  std::vector<Eigen::Vector3d> vertices;
  // worst disagreement between placements of the same face reached along
  // different routes
  double max_placement_gap = 0.0;
  // worst edge or diagonal length error against the flat face
  double max_face_distortion = 0.0;
};

// Embeds the folded pattern in space: face 0 stays in the z = 0 plane and
// every other face is reached by rotating across shared creases by their
// fold angles (valley folds lift the far face toward +z).
FoldedState reconstruct_3d(const CreasePattern& cp, const Eigen::VectorXd& rho);

// Work rate of a constant crease torque along the sampled path: torque dotted
// with the unit path tangent at every sample (central differences inside,
// one-sided at the ends).
std::vector<double> forward_force_along_path(const FoldPath& path,
                                             const Eigen::VectorXd& torque);

}  // namespace origami
