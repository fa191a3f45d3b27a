#pragma once

#include <stdexcept>
#include <string>

namespace origami {

enum class ErrorCode {
  // tile / pattern validation
  NonConvexTile,
  DegenerateTile,
  InvalidAngle,
  BoundaryVertex,
  WrongDegree,
  MixedVertexGeometry,
  // vertex analysis
  NotFlatFoldable,
  DegenerateAngles,
  NotRigidlyFoldable,
  AngleOutOfRange,
  // numerics
  NoConvergence,
  BranchExhausted,
  TooManyVertices,
  DegenerateMultiplier,
  RankDeficiencyAmbiguous,
  DimensionMismatch,
  // self-foldability
  NoModes,
  DirectionNotValid,
  NotUniquelySelfFoldable,
  // internal cross-checks
  InternalInconsistency,
  InconsistentPropagation,
  InconsistentPlacement,
  // io
  MalformedDocument,
  NonQuadFace,
  NonManifold,
};

const char* error_code_name(ErrorCode code);

// Single exception type for the whole library; `code()` tells callers (and
// the CLI exit-code mapping) what went wrong without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace origami
