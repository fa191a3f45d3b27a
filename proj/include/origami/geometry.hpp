#pragma once

#include <Eigen/Dense>

namespace origami {

// Central tolerance constants. Every numerical decision in the library goes
// through one of these so that behavior is reproducible and documentable.
namespace tol {

// angle validation and exact-value comparisons (radians)
inline constexpr double kAngle = 1e-9;
// sector sums, tile angle sums
inline constexpr double kSectorSum = 1e-9;
// relative SVD cutoff for rank decisions
inline constexpr double kSvdRelCutoff = 1e-9;
// guard band (factor per side) around the rank cutoff; singular values inside
// the band make the rank call ambiguous
inline constexpr double kSvdGuardBand = 10.0;
// residual for "tangent lies in the constraint kernel"
inline constexpr double kKernelResidual = 1e-10;
// span membership residual for the self-foldability test
inline constexpr double kInSpan = 1e-8;
// synthesized force must be orthogonal to surrounding tangents to this level
inline constexpr double kPerp = 1e-10;
// Newton convergence (iterate acceptance) and final closure acceptance
inline constexpr double kNewtonConverge = 1e-12;
inline constexpr double kNewtonAccept = 1e-10;
// loop products must equal 1 to this absolute tolerance
inline constexpr double kLoopProduct = 1e-12;
// per-point closure along sampled folding paths
inline constexpr double kPathClosure = 1e-9;
// agreement between independently propagated values of the same crease angle
inline constexpr double kConsistency = 1e-9;
// two-path face placement agreement in 3D reconstruction
inline constexpr double kPlacement = 1e-8;
// per-face rigidity (isometry) error in 3D reconstruction
inline constexpr double kRigidity = 1e-10;
// angular distance below which two unit tangents count as the same branch
inline constexpr double kTangentMatch = 1e-6;
// components below this fraction of the largest one are treated as unfolded
inline constexpr double kModeZero = 1e-9;

// continuation step cap for Newton path following (radians, 2 degrees)
inline constexpr double kMaxContinuationStep = 0.034906585039886591;
inline constexpr int kNewtonMaxIter = 50;
inline constexpr int kMaxStepShrinks = 3;

}  // namespace tol

inline double deg2rad(double d) { return d * M_PI / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / M_PI; }

// direction vector for a planar angle
inline Eigen::Vector2d dir2(double theta) {
  return {std::cos(theta), std::sin(theta)};
}

// wrap an angle to [0, 2*pi)
double wrap_2pi(double theta);

// right-handed rotation by angle rho about the in-plane axis with direction
// angle theta (the workhorse of every closure computation)
Eigen::Matrix3d crease_rotation(double theta, double rho);

// Frobenius distance of a 3x3 matrix from the identity
double identity_distance(const Eigen::Matrix3d& m);

}  // namespace origami
