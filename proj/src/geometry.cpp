#include "origami/geometry.hpp"

#include <cmath>

#include "origami/errors.hpp"

namespace origami {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonConvexTile: return "NonConvexTile";
    case ErrorCode::DegenerateTile: return "DegenerateTile";
    case ErrorCode::InvalidAngle: return "InvalidAngle";
    case ErrorCode::BoundaryVertex: return "BoundaryVertex";
    case ErrorCode::WrongDegree: return "WrongDegree";
    case ErrorCode::MixedVertexGeometry: return "MixedVertexGeometry";
    case ErrorCode::NotFlatFoldable: return "NotFlatFoldable";
    case ErrorCode::DegenerateAngles: return "DegenerateAngles";
    case ErrorCode::NotRigidlyFoldable: return "NotRigidlyFoldable";
    case ErrorCode::AngleOutOfRange: return "AngleOutOfRange";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::BranchExhausted: return "BranchExhausted";
    case ErrorCode::TooManyVertices: return "TooManyVertices";
    case ErrorCode::DegenerateMultiplier: return "DegenerateMultiplier";
    case ErrorCode::RankDeficiencyAmbiguous: return "RankDeficiencyAmbiguous";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoModes: return "NoModes";
    case ErrorCode::DirectionNotValid: return "DirectionNotValid";
    case ErrorCode::NotUniquelySelfFoldable: return "NotUniquelySelfFoldable";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::InconsistentPropagation: return "InconsistentPropagation";
    case ErrorCode::InconsistentPlacement: return "InconsistentPlacement";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::NonQuadFace: return "NonQuadFace";
    case ErrorCode::NonManifold: return "NonManifold";
  }
  return "UnknownError";
}

double wrap_2pi(double theta) {
  double t = std::fmod(theta, 2.0 * M_PI);
  if (t < 0) t += 2.0 * M_PI;
  return t;
}

Eigen::Matrix3d crease_rotation(double theta, double rho) {
  Eigen::Vector3d axis(std::cos(theta), std::sin(theta), 0.0);
  return Eigen::AngleAxisd(rho, axis).toRotationMatrix();
}

double identity_distance(const Eigen::Matrix3d& m) {
  return (m - Eigen::Matrix3d::Identity()).norm();
}

}  // namespace origami
