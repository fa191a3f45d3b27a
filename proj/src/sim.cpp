#include "origami/sim.hpp"

#include <cmath>
#include <deque>
#include <map>

#include "origami/errors.hpp"
#include "origami/vertex.hpp"

namespace origami {

namespace {

bool all_flat_foldable(const std::vector<VertexStar>& stars) {
  for (const VertexStar& s : stars)
    if (!s.geom.flat_foldable()) return false;
  return true;
}

std::vector<VertexStar> collect_stars(const CreasePattern& cp) {
  std::vector<VertexStar> stars;
  stars.reserve(cp.interior.size());
  for (int v : cp.interior) stars.push_back(vertex_star(cp, v));
  return stars;
}

}  // namespace

int mode_driver_crease(const GlobalMode& mode) {
  double amax = mode.tangent.cwiseAbs().maxCoeff();
  for (int i = 0; i < mode.tangent.size(); ++i)
    if (std::abs(mode.tangent[i]) >= 0.1 * amax) return i;
  throw Error(ErrorCode::InternalInconsistency, "mode tangent is zero");
}

Eigen::VectorXd propagate_fold(const CreasePattern& cp, const GlobalMode& mode,
                               int driver_crease, double driver_value) {
  int n = cp.crease_count();
  if (mode.tangent.size() != n)
    throw Error(ErrorCode::DimensionMismatch,
                "mode does not belong to this pattern");
  if (driver_crease < 0 || driver_crease >= n)
    throw Error(ErrorCode::DimensionMismatch, "driver crease out of range");
  if (std::abs(driver_value) >= M_PI - tol::kAngle)
    throw Error(ErrorCode::AngleOutOfRange,
                "driver angle must stay strictly inside (-pi, pi)");
  if (mode.tangent[driver_crease] == 0.0) {
    if (driver_value == 0.0) return Eigen::VectorXd::Zero(n);
    throw Error(ErrorCode::DegenerateMultiplier,
                "branch never folds the requested driver crease");
  }
  if (driver_value == 0.0) return Eigen::VectorXd::Zero(n);

  std::vector<VertexStar> stars = collect_stars(cp);

  if (all_flat_foldable(stars)) {
    // branch is an exact line in tan-half space
    double w =
        std::tan(0.5 * driver_value) / mode.tangent[driver_crease];
    Eigen::VectorXd rho(n);
    for (int c = 0; c < n; ++c)
      rho[c] = 2.0 * std::atan(mode.tangent[c] * w);
    double res = 0.0;
    for (const VertexStar& s : stars) {
      Eigen::Matrix3d p = Eigen::Matrix3d::Identity();
      for (int i = 0; i < 4; ++i)
        p = p * crease_rotation(s.geom.theta[i], rho[s.crease[i]]);
      res = std::max(res, identity_distance(p));
    }
    if (res > 1e-10)
      throw Error(ErrorCode::InternalInconsistency,
                  "tan-half transfer violates vertex closure");
    return rho;
  }

  // general patterns: continue each vertex numerically from a known crease
  Eigen::VectorXd rho = Eigen::VectorXd::Constant(n, std::nan(""));
  std::vector<char> known(n, 0);
  for (int c = 0; c < n; ++c)
    if (mode.tangent[c] == 0.0) {
      rho[c] = 0.0;
      known[c] = 1;
    }
  rho[driver_crease] = driver_value;
  known[driver_crease] = 1;

  int nv = static_cast<int>(stars.size());
  std::vector<LocalMode> lmode(nv);
  for (int v = 0; v < nv; ++v)
    lmode[v] = local_modes(stars[v].geom)[mode.vertex_modes[v]];

  for (int pass = 0; pass < nv + 1; ++pass) {
    bool progress = false;
    for (int v = 0; v < nv; ++v) {
      bool missing = false;
      for (int i = 0; i < 4; ++i)
        if (!known[stars[v].crease[i]]) missing = true;
      if (!missing) continue;
      int anchor = -1;
      for (int i = 0; i < 4; ++i) {
        int c = stars[v].crease[i];
        if (!known[c] || lmode[v].multipliers[i] == 0.0) continue;
        if (anchor < 0 || std::abs(lmode[v].multipliers[i]) >
                              std::abs(lmode[v].multipliers[anchor]))
          anchor = i;
      }
      if (anchor < 0) continue;
      Eigen::Vector4d local = transfer_general(
          stars[v].geom, lmode[v], rho[stars[v].crease[anchor]], anchor);
      for (int i = 0; i < 4; ++i) {
        int c = stars[v].crease[i];
        if (known[c]) {
          if (std::abs(rho[c] - local[i]) > tol::kConsistency)
            throw Error(ErrorCode::InconsistentPropagation,
                        "fold angle disagreement between vertices");
        } else {
          rho[c] = local[i];
          known[c] = 1;
          progress = true;
        }
      }
    }
    if (!progress) break;
  }
  for (int c = 0; c < n; ++c)
    if (!known[c])
      throw Error(ErrorCode::InternalInconsistency,
                  "crease unreachable during fold propagation");
  if (pattern_closure_residual(cp, rho) > 1e-10)
    throw Error(ErrorCode::InconsistentPropagation,
                "propagated angles violate vertex closure");
  return rho;
}

FoldPath fold_path(const CreasePattern& cp, const GlobalMode& mode,
                   double driver_max, int steps) {
  if (steps < 2)
    throw Error(ErrorCode::DimensionMismatch, "need at least two samples");
  if (std::abs(driver_max) >= M_PI - tol::kAngle)
    throw Error(ErrorCode::AngleOutOfRange,
                "target angle must stay strictly inside (-pi, pi)");
  FoldPath path;
  path.driver_crease = mode_driver_crease(mode);
  double wmax = std::tan(0.5 * driver_max);
  for (int k = 0; k < steps; ++k) {
    double w = wmax * k / (steps - 1);
    double driver = 2.0 * std::atan(w);
    path.driver_values.push_back(driver);
    path.points.push_back(propagate_fold(cp, mode, path.driver_crease, driver));
    if (k > 0)
      path.arc_length += (path.points[k] - path.points[k - 1]).norm();
  }
  return path;
}

FoldedState reconstruct_3d(const CreasePattern& cp,
                           const Eigen::VectorXd& rho) {
  if (rho.size() != cp.crease_count())
    throw Error(ErrorCode::DimensionMismatch,
                "angle vector length must match crease count");
  int nf = static_cast<int>(cp.faces.size());
  int nvtx = static_cast<int>(cp.vertices.size());

  std::map<std::pair<int, int>, int> crease_of_edge;
  for (int c = 0; c < cp.crease_count(); ++c) {
    auto key = std::minmax(cp.creases[c].v0, cp.creases[c].v1);
    crease_of_edge[{key.first, key.second}] = c;
  }
  // directed edge -> face owning it in CCW order
  std::map<std::pair<int, int>, int> face_of_edge;
  for (int f = 0; f < nf; ++f)
    for (int i = 0; i < 4; ++i)
      face_of_edge[{cp.faces[f][i], cp.faces[f][(i + 1) % 4]}] = f;

  struct Placement {
    Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
    Eigen::Vector3d shift = Eigen::Vector3d::Zero();
    bool placed = false;
    Eigen::Vector3d apply(const Eigen::Vector2d& p) const {
      return rot * Eigen::Vector3d(p.x(), p.y(), 0.0) + shift;
    }
  };
  std::vector<Placement> place(nf);
  place[0].placed = true;

  FoldedState state;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop_front();
    for (int i = 0; i < 4; ++i) {
      int a = cp.faces[f][i];
      int b = cp.faces[f][(i + 1) % 4];
      auto it = face_of_edge.find({b, a});
      if (it == face_of_edge.end()) continue;  // boundary edge
      int g = it->second;
      auto key = std::minmax(a, b);
      auto cit = crease_of_edge.find({key.first, key.second});
      if (cit == crease_of_edge.end())
        throw Error(ErrorCode::InternalInconsistency,
                    "shared edge missing from crease list");
      double angle = rho[cit->second];

      // rotate the far face about the directed crease line a -> b of face f;
      // a valley fold (positive angle) lifts it toward +z
      Eigen::Vector2d pa = cp.vertices[a], pb = cp.vertices[b];
      Eigen::Vector3d axis(pb.x() - pa.x(), pb.y() - pa.y(), 0.0);
      axis.normalize();
      Eigen::Matrix3d hinge =
          Eigen::AngleAxisd(-angle, axis).toRotationMatrix();
      Eigen::Vector3d origin(pa.x(), pa.y(), 0.0);

      Placement cand;
      cand.rot = place[f].rot * hinge;
      cand.shift =
          place[f].rot * (origin - hinge * origin) + place[f].shift;
      cand.placed = true;

      if (!place[g].placed) {
        place[g] = cand;
        queue.push_back(g);
      } else {
        double gap = 0.0;
        for (int corner : cp.faces[g])
          gap = std::max(gap, (place[g].apply(cp.vertices[corner]) -
                               cand.apply(cp.vertices[corner]))
                                  .norm());
        state.max_placement_gap = std::max(state.max_placement_gap, gap);
      }
    }
  }
  for (int f = 0; f < nf; ++f)
    if (!place[f].placed)
      throw Error(ErrorCode::InternalInconsistency,
                  "disconnected face during reconstruction");
  if (state.max_placement_gap > tol::kPlacement)
    throw Error(ErrorCode::InconsistentPlacement,
                "face placements disagree along different routes");

  // rigidity: every face keeps its flat edge and diagonal lengths
  for (int f = 0; f < nf; ++f) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const Eigen::Vector2d& p = cp.vertices[cp.faces[f][i]];
        const Eigen::Vector2d& q = cp.vertices[cp.faces[f][j]];
        double flat = (p - q).norm();
        double folded = (place[f].apply(p) - place[f].apply(q)).norm();
        state.max_face_distortion =
            std::max(state.max_face_distortion, std::abs(folded - flat));
      }
    }
  }
  if (state.max_face_distortion > tol::kRigidity)
    throw Error(ErrorCode::InternalInconsistency,
                "face distorted during reconstruction");

  state.vertices.assign(nvtx, Eigen::Vector3d::Zero());
  std::vector<int> hits(nvtx, 0);
  for (int f = 0; f < nf; ++f)
    for (int corner : cp.faces[f]) {
      state.vertices[corner] += place[f].apply(cp.vertices[corner]);
      ++hits[corner];
    }
  for (int v = 0; v < nvtx; ++v) {
    if (hits[v] == 0)
      throw Error(ErrorCode::InternalInconsistency,
                  "vertex belongs to no face");
    state.vertices[v] /= hits[v];
  }
  return state;
}

std::vector<double> forward_force_along_path(const FoldPath& path,
                                             const Eigen::VectorXd& torque) {
  int m = static_cast<int>(path.points.size());
  if (m < 2)
    throw Error(ErrorCode::DimensionMismatch, "path needs at least two samples");
  if (torque.size() != path.points[0].size())
    throw Error(ErrorCode::DimensionMismatch,
                "torque length must match crease count");
  std::vector<double> out(m);
  for (int k = 0; k < m; ++k) {
    Eigen::VectorXd diff = (k == 0)       ? path.points[1] - path.points[0]
                           : (k == m - 1) ? path.points[m - 1] - path.points[m - 2]
                                          : path.points[k + 1] - path.points[k - 1];
    double dn = diff.norm();
    if (!(dn > 0))
      throw Error(ErrorCode::InternalInconsistency,
                  "stationary path samples");
    out[k] = torque.dot(diff) / dn;
  }
  return out;
}

}  // namespace origami
