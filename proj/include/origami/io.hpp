#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "origami/pattern.hpp"
#include "origami/selffold.hpp"
#include "origami/sim.hpp"

namespace origami {

// FOLD 1.1 interchange document. Plain pattern: flat 2D frame with every
// interior crease unassigned ("F"). With a mode: creases carry M/V letters
// from the mode's sign pattern. With fold angles: the frame becomes a 3D
// folded form and edges_foldAngle records degrees (valley positive); the
// assignment then follows the angle signs when no mode is given.
std::string export_fold(const CreasePattern& cp,
                        const GlobalMode* mode = nullptr,
                        const Eigen::VectorXd* rho = nullptr);

// Rebuilds a pattern from a flat FOLD frame: faces drive the topology, the
// crease reading order is re-derived, and the file's edge list plus any
// edge assignments are validated against it. Throws MalformedDocument,
// NonQuadFace, or NonManifold.
CreasePattern import_fold(const std::string& document);

// Deterministic crease pattern drawing, one user unit per length unit:
// boundary black, mountains solid red, valleys dashed blue, unassigned gray.
std::string export_svg(const CreasePattern& cp,
                       const GlobalMode* mode = nullptr);

// Comparison tolerance recorded in reports for downstream consumers;
// ORIGAMI_SELFFOLD_TOLERANCE overrides the default 1e-9. Does not affect any
// solver tolerance.
double report_tolerance();

// crease signs as a letter string: V valley, M mountain, F unfolded
std::string mv_string(const std::vector<int>& mv);

struct PathSummary {
  int driver_crease = 0;
  int steps = 0;
  double driver_max_deg = 0.0;
  double arc_length = 0.0;
  double max_closure_residual = 0.0;
  bool has_force = false;
  double min_forward_force = 0.0;
  double max_forward_force = 0.0;
};

// Condenses a sampled path (and, when a torque is given, its forward force
// trace) for the report.
PathSummary summarize_path(const CreasePattern& cp, const FoldPath& path,
                           const Eigen::VectorXd* torque = nullptr);

// Machine-readable analysis report: tool version, pattern metadata, the
// mode catalog, one verdict per analyzed mode, and every tolerance used.
// `paths`, when non-empty, must align with `verdicts`.
std::string report_json(
    const CreasePattern& cp, const std::vector<Analysis>& verdicts,
    const std::vector<std::optional<PathSummary>>& paths = {});

}  // namespace origami
