#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "origami/geometry.hpp"

namespace origami {

// Geometry of a degree-4 vertex: crease direction angles theta[0..3] listed
// counterclockwise, and the sector angles between consecutive creases
// (sector[i] lies between crease i and crease i+1, indices mod 4).
struct VertexGeometry {
  std::array<double, 4> theta{};
  std::array<double, 4> sector{};

  // builds a vertex from its four sector angles, placing crease 0 at angle 0
  static VertexGeometry from_sectors(const std::array<double, 4>& sectors);
  // builds a vertex from four absolute crease angles (any order); creases are
  // sorted counterclockwise starting at the smallest angle in [0, 2*pi)
  static VertexGeometry from_crease_angles(const std::array<double, 4>& angles);

  // true when creases `i` and `i+2` point in exactly opposite directions;
  // `which` (optional) receives 0 for the pair {0,2}, 1 for {1,3}
  bool has_collinear_pair(int* which = nullptr) const;
  // both opposite crease pairs collinear (e.g. a square vertex)
  bool doubly_degenerate() const;
  // Kawasaki: alternating sector sums equal pi
  bool flat_foldable(double tolerance = tol::kSectorSum) const;
};

// First-order folding multipliers of a flat-foldable vertex with sector
// angles (alpha, beta, pi-alpha, pi-beta).
struct FoldingMultipliers {
  double p;
  double q;
};

FoldingMultipliers folding_multipliers(double alpha, double beta);

// One branch of the rigid-folding configuration space of a degree-4 vertex
// through the flat state, described by its tangent direction. Components are
// normalized so the largest magnitude is 1 and the first nonzero entry is
// positive; entries below tol::kModeZero are snapped to exactly 0.
struct LocalMode {
  Eigen::Vector4d multipliers;
  // index of the crease whose mountain/valley parity differs from the other
  // three; -1 for a straight-line (two-crease book) fold
  int different_crease = -1;
  // true when only a collinear crease pair folds
  bool straight_fold = false;
  // for flat-foldable vertices: the scalar multiplier (p or q) this branch
  // realizes; NaN otherwise
  double pq = std::numeric_limits<double>::quiet_NaN();
};

// The branches of the configuration space at the flat state. Exactly two for
// every supported vertex; bird's-foot modes first (ordered by different
// crease index), straight folds last.
std::vector<LocalMode> local_modes(const VertexGeometry& g);

// Checks the strict bird's-foot condition for a full mountain/valley
// assignment mv (entries +1 = valley, -1 = mountain; anything else fails):
// exactly a 3+1 parity split, all sectors strictly below pi, and the two
// sectors adjacent to the different crease summing strictly below pi.
bool birds_foot_check(const VertexGeometry& g, const std::array<int, 4>& mv);

// Frobenius distance from the identity of the loop product of the four
// crease rotations; zero exactly on the folding configuration space.
double vertex_closure_residual(const VertexGeometry& g,
                               const Eigen::Vector4d& rho);

// First-order closure matrix (2x4): row 0 holds cos(theta_i), row 1 holds
// sin(theta_i); its kernel is the tangent space of the constraint at flat.
Eigen::Matrix<double, 2, 4> vertex_constraint_matrix(const VertexGeometry& g);

// Exact single-multiplier transfer for flat-foldable vertices in tan-half
// space: rho_out = 2*atan(m * tan(rho_in / 2)).
double transfer_flat_foldable(double multiplier, double rho_in);

// All four folding angles of the branch `mode` when crease `crease_in` is
// held at rho_in, found by Newton continuation on the closure residual with
// steps of at most 2 degrees (straight folds use their exact closed form).
// Throws BranchExhausted when the mechanism reaches a fold limit before
// rho_in is attained.
Eigen::Vector4d transfer_general(const VertexGeometry& g, const LocalMode& mode,
                                 double rho_in, int crease_in = 0);

}  // namespace origami
