#pragma once

#include <vector>

#include <Eigen/Dense>

#include "origami/pattern.hpp"

namespace origami {

// First-order closure constraints at the flat state: two rows per interior
// vertex (in ascending vertex order), columns indexed by crease. A tangent t
// of the configuration space satisfies  A t = 0.
Eigen::MatrixXd flat_constraint_matrix(const CreasePattern& cp);

// Dimension of the first-order tangent space (kernel of the constraint
// matrix). Throws RankDeficiencyAmbiguous when a singular value lands inside
// the guard band around the relative cutoff.
int tangent_space_dim(const CreasePattern& cp);

// Worst per-vertex rotational closure residual of a full fold angle
// assignment (Frobenius distance of the loop product from identity).
double pattern_closure_residual(const CreasePattern& cp,
                                const Eigen::VectorXd& rho);

// One branch of the configuration space through the flat state.
struct GlobalMode {
  // normalized tangent: largest |component| = 1, first nonzero positive,
  // entries below tol::kModeZero snapped to 0
  Eigen::VectorXd tangent;
  // chosen local branch (index into local_modes) per interior vertex, in
  // ascending vertex order; for vertices this branch leaves flat the entry
  // is the smallest compatible index
  std::vector<int> vertex_modes;
  // +1 valley / -1 mountain / 0 unfolded, per crease
  std::vector<int> mv;
  // dimension of the linear family the tangent was drawn from (straight-line
  // book families can exceed 1)
  int family_dim = 1;
};

// Branch enumeration for flat-foldable patterns via tan-half multiplier
// loop products around every face whose four corners are interior vertices.
// Throws NotFlatFoldable if a vertex violates the angle condition and
// DegenerateMultiplier if a local mode has a vanishing component (pleat and
// chicken wire vertices; use the general enumerator for those).
std::vector<GlobalMode> enumerate_modes_flat_foldable(const CreasePattern& cp);

// Branch enumeration for arbitrary vertex geometry: intersects per-vertex
// local branch choices with the global first-order kernel, then confirms a
// finite fold on each candidate by Newton solving all vertex closures with
// the candidate's largest crease pinned at 5 degrees.
std::vector<GlobalMode> enumerate_modes_general(const CreasePattern& cp);

// Picks the appropriate enumerator: loop products when every vertex is
// flat-foldable with nonvanishing multipliers, Newton confirmation otherwise.
std::vector<GlobalMode> enumerate_modes(const CreasePattern& cp);

// Unit tangents of every branch, both orientations (+t then -t, in catalog
// order).
std::vector<Eigen::VectorXd> valid_tangents_flat(const CreasePattern& cp);
std::vector<Eigen::VectorXd> valid_tangents_flat(
    const std::vector<GlobalMode>& modes);

// Removes the orientation pair matching `direction` from the valid tangent
// list; throws DirectionNotValid when no entry matches.
std::vector<Eigen::VectorXd> surrounding_tangents(
    const std::vector<Eigen::VectorXd>& valid,
    const Eigen::VectorXd& direction);

}  // namespace origami
