#include "origami/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "origami/errors.hpp"

namespace origami {

namespace {

double interior_angle(const Eigen::Vector2d& prev, const Eigen::Vector2d& at,
                      const Eigen::Vector2d& next) {
  Eigen::Vector2d u = next - at;
  Eigen::Vector2d v = prev - at;
  double cross = u.x() * v.y() - u.y() * v.x();
  double dot = u.dot(v);
  double a = std::atan2(cross, dot);
  return a < 0 ? a + 2.0 * M_PI : a;
}

std::array<double, 4> face_angles(const std::vector<Eigen::Vector2d>& pts,
                                  const std::array<int, 4>& f) {
  std::array<double, 4> a{};
  for (int i = 0; i < 4; ++i)
    a[i] = interior_angle(pts[f[(i + 3) % 4]], pts[f[i]], pts[f[(i + 1) % 4]]);
  return a;
}

// tolerance-aware lexicographic order on angle tuples
bool necklace_less(const std::array<double, 4>& a,
                   const std::array<double, 4>& b) {
  for (int i = 0; i < 4; ++i) {
    if (a[i] < b[i] - tol::kAngle) return true;
    if (a[i] > b[i] + tol::kAngle) return false;
  }
  return false;
}

bool angles_close(double a, double b) { return std::abs(a - b) < tol::kAngle; }

}  // namespace

QuadTile QuadTile::from_corners(const std::array<Eigen::Vector2d, 4>& corners) {
  QuadTile t;
  Eigen::Vector2d origin = corners[0];
  Eigen::Vector2d edge = corners[1] - corners[0];
  double len = edge.norm();
  if (len < 1e-12)
    throw Error(ErrorCode::DegenerateTile, "coincident corners");
  double rot = std::atan2(edge.y(), edge.x());
  Eigen::Rotation2Dd undo(-rot);
  for (int i = 0; i < 4; ++i) t.corners[i] = undo * (corners[i] - origin);

  double area2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector2d& p = t.corners[i];
    const Eigen::Vector2d& q = t.corners[(i + 1) % 4];
    area2 += p.x() * q.y() - p.y() * q.x();
  }
  if (area2 < 0)
    throw Error(ErrorCode::NonConvexTile,
                "corners must be listed counterclockwise");
  if (area2 < 1e-10)
    throw Error(ErrorCode::DegenerateTile, "tile area is degenerate");
  for (int i = 0; i < 4; ++i) {
    Eigen::Vector2d e0 = t.corners[(i + 1) % 4] - t.corners[i];
    Eigen::Vector2d e1 = t.corners[(i + 2) % 4] - t.corners[(i + 1) % 4];
    if (e0.norm() < 1e-9)
      throw Error(ErrorCode::DegenerateTile, "zero-length edge");
    double cross = e0.x() * e1.y() - e0.y() * e1.x();
    if (cross < 1e-12)
      throw Error(ErrorCode::NonConvexTile, "interior angle at or above pi");
  }
  return t;
}

QuadTile QuadTile::from_angles(const std::array<double, 4>& angles) {
  double sum = 0.0;
  for (double a : angles) {
    if (!(a > tol::kAngle) || !(a < M_PI - tol::kAngle))
      throw Error(ErrorCode::InvalidAngle,
                  "tile angles must lie strictly inside (0, pi)");
    sum += a;
  }
  if (std::abs(sum - 2.0 * M_PI) > tol::kSectorSum)
    throw Error(ErrorCode::InvalidAngle, "tile angles must sum to 2*pi");

  double alpha = angles[0], beta = angles[1];
  std::array<Eigen::Vector2d, 4> pts;
  if (angles_close(angles[0] + angles[2], M_PI)) {
    // flat-foldable angle set: inscribe in the unit circle; consecutive
    // corner arcs a1..a4 satisfy alpha = (a2+a3)/2, beta = (a3+a4)/2
    double lo = std::max(0.0, 2.0 * alpha + 2.0 * beta - 2.0 * M_PI);
    double hi = std::min(2.0 * alpha, 2.0 * beta);
    if (!(hi - lo > 1e-9))
      throw Error(ErrorCode::DegenerateTile, "no feasible inscribed tile");
    double a3 = 0.5 * (lo + hi);
    double a2 = 2.0 * alpha - a3;
    double a4 = 2.0 * beta - a3;
    double a1 = 2.0 * M_PI - a2 - a3 - a4;
    double c = 0.0;
    std::array<double, 4> arc{a1, a2, a3, a4};
    for (int i = 0; i < 4; ++i) {
      pts[i] = dir2(c);
      c += arc[i];
    }
  } else {
    // fix |AB| = 1 and pick side lengths from the middle of the interval
    // where the remaining two lengths stay positive
    Eigen::Vector2d e1 = dir2(M_PI - angles[1]);
    Eigen::Vector2d e2 = dir2(2.0 * M_PI - angles[1] - angles[2]);
    Eigen::Vector2d e3 = dir2(M_PI + angles[0]);
    Eigen::Matrix2d m;
    m.col(0) = e2;
    m.col(1) = e3;
    if (std::abs(m.determinant()) < 1e-12)
      throw Error(ErrorCode::DegenerateTile, "parallel closure directions");
    // r(s), t(s) solve  s*e1 + r*e2 + t*e3 = -(1,0)
    Eigen::Vector2d base = m.partialPivLu().solve(Eigen::Vector2d(-1.0, 0.0));
    Eigen::Vector2d slope = m.partialPivLu().solve(-e1);
    double lo = 0.0, hi = 1e30;
    auto bound = [&](double b, double d) {
      // b + s*d > 0
      if (d > 1e-12)
        lo = std::max(lo, -b / d);
      else if (d < -1e-12)
        hi = std::min(hi, -b / d);
      else if (b <= 0)
        throw Error(ErrorCode::DegenerateTile, "no feasible side lengths");
    };
    bound(base[0], slope[0]);
    bound(base[1], slope[1]);
    if (!(hi > lo))
      throw Error(ErrorCode::DegenerateTile, "no feasible side lengths");
    if (hi > 1e29) hi = std::max(2.0, 2.0 * lo + 2.0);
    double s = 0.5 * (lo + hi);
    double r = base[0] + s * slope[0];
    double t = base[1] + s * slope[1];
    if (!(s > 0) || !(r > 0) || !(t > 0))
      throw Error(ErrorCode::DegenerateTile, "no feasible side lengths");
    pts[0] = {0.0, 0.0};
    pts[1] = {1.0, 0.0};
    pts[2] = pts[1] + s * e1;
    pts[3] = pts[2] + r * e2;
  }

  QuadTile t = from_corners(pts);
  std::array<double, 4> got = t.angles();
  for (int i = 0; i < 4; ++i)
    if (std::abs(got[i] - angles[i]) > 1e-7)
      throw Error(ErrorCode::InternalInconsistency,
                  "tile realization missed the requested angles");
  return t;
}

std::array<double, 4> QuadTile::angles() const {
  std::array<double, 4> a{};
  for (int i = 0; i < 4; ++i)
    a[i] = interior_angle(corners[(i + 3) % 4], corners[i],
                          corners[(i + 1) % 4]);
  return a;
}

bool CreasePattern::is_interior(int v) const {
  return std::binary_search(interior.begin(), interior.end(), v);
}

VertexStar vertex_star(const CreasePattern& cp, int vertex) {
  if (vertex < 0 || vertex >= static_cast<int>(cp.vertices.size()))
    throw Error(ErrorCode::DimensionMismatch, "vertex id out of range");
  if (!cp.is_interior(vertex))
    throw Error(ErrorCode::BoundaryVertex,
                "vertex stars exist only at interior vertices");

  std::vector<std::pair<double, int>> spokes;
  for (int c = 0; c < cp.crease_count(); ++c) {
    const Crease& e = cp.creases[c];
    int other = -1;
    if (e.v0 == vertex)
      other = e.v1;
    else if (e.v1 == vertex)
      other = e.v0;
    else
      continue;
    Eigen::Vector2d d = cp.vertices[other] - cp.vertices[vertex];
    spokes.emplace_back(wrap_2pi(std::atan2(d.y(), d.x())), c);
  }
  if (spokes.size() != 4)
    throw Error(ErrorCode::WrongDegree,
                "interior vertices must have exactly four creases");
  std::sort(spokes.begin(), spokes.end());

  VertexStar star;
  star.vertex = vertex;
  std::array<double, 4> th{};
  for (int i = 0; i < 4; ++i) {
    th[i] = spokes[i].first;
    star.crease[i] = spokes[i].second;
  }
  star.geom = VertexGeometry::from_crease_angles(th);
  return star;
}

CreasePattern finalize_pattern(std::vector<Eigen::Vector2d> vertices,
                               std::vector<std::array<int, 4>> faces) {
  CreasePattern cp;
  cp.vertices = std::move(vertices);
  cp.faces = std::move(faces);

  std::map<std::pair<int, int>, int> edge_faces;
  for (const auto& f : cp.faces) {
    for (int i = 0; i < 4; ++i) {
      int a = f[i], b = f[(i + 1) % 4];
      if (a == b || a < 0 || b < 0 ||
          a >= static_cast<int>(cp.vertices.size()) ||
          b >= static_cast<int>(cp.vertices.size()))
        throw Error(ErrorCode::MalformedDocument, "bad face vertex index");
      auto key = std::minmax(a, b);
      if (++edge_faces[{key.first, key.second}] > 2)
        throw Error(ErrorCode::NonManifold, "edge shared by more than two faces");
    }
  }

  std::vector<char> on_boundary(cp.vertices.size(), 0);
  std::vector<std::array<int, 2>> interior_edges;
  for (const auto& [e, count] : edge_faces) {
    if (count == 1) {
      cp.boundary_edges.push_back({e.first, e.second});
      on_boundary[e.first] = 1;
      on_boundary[e.second] = 1;
    } else {
      interior_edges.push_back({e.first, e.second});
    }
  }
  for (int v = 0; v < static_cast<int>(cp.vertices.size()); ++v)
    if (!on_boundary[v]) cp.interior.push_back(v);

  // reading order: top line first, left to right, using a quantized band so
  // vertices of the same line compare equal
  double diam = 0.0;
  Eigen::Vector2d lo = cp.vertices.empty() ? Eigen::Vector2d::Zero()
                                           : cp.vertices[0];
  Eigen::Vector2d hi = lo;
  for (const auto& p : cp.vertices) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  diam = (hi - lo).norm();
  double band = std::max(1e-12, 1e-7 * diam);
  auto qkey = [&](const std::array<int, 2>& e) {
    Eigen::Vector2d mid =
        0.5 * (cp.vertices[e[0]] + cp.vertices[e[1]]);
    long long qy = std::llround(mid.y() / band);
    long long qx = std::llround(mid.x() / band);
    return std::tuple<long long, long long, int, int>(-qy, qx, e[0], e[1]);
  };
  std::sort(interior_edges.begin(), interior_edges.end(),
            [&](const auto& a, const auto& b) { return qkey(a) < qkey(b); });
  for (const auto& e : interior_edges) cp.creases.push_back({e[0], e[1]});
  return cp;
}

CreasePattern generate_rotationally_symmetric(const QuadTile& tile, int rows,
                                              int cols) {
  if (rows < 1 || cols < 1)
    throw Error(ErrorCode::DimensionMismatch, "grid must be at least 1x1");
  if (rows > 64 || cols > 64)
    throw Error(ErrorCode::TooManyVertices, "grid too large");

  // vertex grid, row 0 on top; the base tile becomes face (0,0)
  std::vector<std::vector<Eigen::Vector2d>> v(
      rows + 1, std::vector<Eigen::Vector2d>(cols + 1));
  v[1][0] = tile.corners[0];
  v[1][1] = tile.corners[1];
  v[0][1] = tile.corners[2];
  v[0][0] = tile.corners[3];
  // half-turn about the midpoint of the shared edge generates neighbors
  for (int j = 0; j + 2 <= cols; ++j) {
    v[0][j + 2] = v[0][j + 1] + v[1][j + 1] - v[1][j];
    v[1][j + 2] = v[0][j + 1] + v[1][j + 1] - v[0][j];
  }
  for (int i = 1; i + 1 <= rows; ++i) {
    v[i + 1][0] = v[i][0] + v[i][1] - v[i - 1][1];
    for (int j = 0; j + 1 <= cols; ++j)
      v[i + 1][j + 1] = v[i][j] + v[i][j + 1] - v[i - 1][j];
  }

  std::vector<Eigen::Vector2d> pts;
  pts.reserve((rows + 1) * (cols + 1));
  auto vid = [&](int i, int j) { return i * (cols + 1) + j; };
  for (int i = 0; i <= rows; ++i)
    for (int j = 0; j <= cols; ++j) pts.push_back(v[i][j]);

  std::vector<std::array<int, 4>> faces;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      faces.push_back(
          {vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1), vid(i, j)});

  CreasePattern cp = finalize_pattern(std::move(pts), std::move(faces));
  cp.rows = rows;
  cp.cols = cols;
  cp.tile = tile;

  // every shared crease must map one neighbor tile onto the other under a
  // half-turn about its midpoint
  std::map<std::pair<int, int>, std::vector<int>> edge_face;
  for (int f = 0; f < static_cast<int>(cp.faces.size()); ++f)
    for (int i = 0; i < 4; ++i) {
      auto key = std::minmax(cp.faces[f][i], cp.faces[f][(i + 1) % 4]);
      edge_face[{key.first, key.second}].push_back(f);
    }
  for (const Crease& c : cp.creases) {
    auto key = std::minmax(c.v0, c.v1);
    const auto& fs = edge_face[{key.first, key.second}];
    if (fs.size() != 2)
      throw Error(ErrorCode::InternalInconsistency, "crease without two faces");
    Eigen::Vector2d mid =
        0.5 * (cp.vertices[c.v0] + cp.vertices[c.v1]);
    for (int corner : cp.faces[fs[0]]) {
      Eigen::Vector2d image = 2.0 * mid - cp.vertices[corner];
      double best = 1e30;
      for (int other : cp.faces[fs[1]])
        best = std::min(best, (image - cp.vertices[other]).norm());
      if (best > 1e-9)
        throw Error(ErrorCode::InternalInconsistency,
                    "tiling is not rotationally symmetric across a crease");
    }
  }
  return cp;
}

CreasePattern generate_miura(double theta, double len_a, double len_b,
                             int rows, int cols) {
  if (!(theta > tol::kAngle) || !(theta < M_PI / 2.0 - tol::kAngle))
    throw Error(ErrorCode::InvalidAngle,
                "miura angle must lie strictly inside (0, pi/2)");
  if (!(len_a > 1e-9) || !(len_b > 1e-9))
    throw Error(ErrorCode::DegenerateTile, "side lengths must be positive");
  if (rows < 1 || cols < 1)
    throw Error(ErrorCode::DimensionMismatch, "grid must be at least 1x1");
  if (rows > 64 || cols > 64)
    throw Error(ErrorCode::TooManyVertices, "grid too large");

  std::vector<Eigen::Vector2d> pts;
  auto vid = [&](int i, int j) { return i * (cols + 1) + j; };
  for (int i = 0; i <= rows; ++i)
    for (int j = 0; j <= cols; ++j)
      pts.push_back({j * len_b + (i % 2) * len_a * std::cos(theta),
                     -i * len_a * std::sin(theta)});

  std::vector<std::array<int, 4>> faces;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      faces.push_back(
          {vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1), vid(i, j)});

  CreasePattern cp = finalize_pattern(std::move(pts), std::move(faces));
  cp.rows = rows;
  cp.cols = cols;
  Eigen::Vector2d slant(len_a * std::cos(theta), len_a * std::sin(theta));
  cp.tile = QuadTile::from_corners({Eigen::Vector2d(0, 0),
                                    Eigen::Vector2d(len_b, 0),
                                    Eigen::Vector2d(len_b, 0) + slant, slant});
  return cp;
}

CreasePattern generate_chicken_wire(double theta, double len_a, double len_b,
                                    int rows, int cols) {
  if (!(theta > tol::kAngle) || !(theta < M_PI / 2.0 - tol::kAngle))
    throw Error(ErrorCode::InvalidAngle,
                "chicken wire angle must lie strictly inside (0, pi/2)");
  if (!(len_a > 1e-9) || !(len_b > 1e-9))
    throw Error(ErrorCode::DegenerateTile, "side lengths must be positive");
  if (!(len_b > 2.0 * len_a * std::cos(theta) + 1e-9))
    throw Error(ErrorCode::DegenerateTile,
                "base must exceed twice the projected leg");
  QuadTile trapezoid = QuadTile::from_corners(
      {Eigen::Vector2d(0, 0), Eigen::Vector2d(len_b, 0),
       Eigen::Vector2d(len_b - len_a * std::cos(theta),
                       len_a * std::sin(theta)),
       Eigen::Vector2d(len_a * std::cos(theta), len_a * std::sin(theta))});
  return generate_rotationally_symmetric(trapezoid, rows, cols);
}

bool check_kawasaki(const CreasePattern& cp) {
  int pass = 0, fail = 0;
  for (int v : cp.interior) {
    VertexStar star = vertex_star(cp, v);
    if (star.geom.flat_foldable())
      ++pass;
    else
      ++fail;
  }
  if (pass > 0 && fail > 0)
    throw Error(ErrorCode::MixedVertexGeometry,
                "interior vertices disagree on flat-foldability");
  return fail == 0;
}

const char* pattern_class_name(PatternClass c) {
  switch (c) {
    case PatternClass::MiuraLike: return "MiuraLike";
    case PatternClass::ChickenWireLike: return "ChickenWireLike";
    case PatternClass::GenericFlatFoldable: return "GenericFlatFoldable";
    case PatternClass::GenericNonFlatFoldable: return "GenericNonFlatFoldable";
    case PatternClass::Unsupported: return "Unsupported";
  }
  return "Unsupported";
}

std::array<double, 4> canonical_necklace(const std::array<double, 4>& angles) {
  std::array<double, 4> best = angles;
  std::array<double, 4> reversed{angles[3], angles[2], angles[1], angles[0]};
  for (int r = 0; r < 4; ++r) {
    std::array<double, 4> c1{}, c2{};
    for (int i = 0; i < 4; ++i) {
      c1[i] = angles[(i + r) % 4];
      c2[i] = reversed[(i + r) % 4];
    }
    if (necklace_less(c1, best)) best = c1;
    if (necklace_less(c2, best)) best = c2;
  }
  return best;
}

PatternClass classify_pattern(const CreasePattern& cp) {
  std::array<double, 4> raw{};
  if (cp.tile) {
    raw = cp.tile->angles();
  } else {
    if (cp.faces.empty()) return PatternClass::Unsupported;
    raw = face_angles(cp.vertices, cp.faces[0]);
    std::array<double, 4> canon = canonical_necklace(raw);
    for (const auto& f : cp.faces) {
      std::array<double, 4> other =
          canonical_necklace(face_angles(cp.vertices, f));
      for (int i = 0; i < 4; ++i)
        if (std::abs(other[i] - canon[i]) > 1e-7)
          return PatternClass::Unsupported;
    }
  }
  std::array<double, 4> n = canonical_necklace(raw);
  double alpha = n[0], beta = n[1], gamma = n[2], delta = n[3];

  bool parallelogram = angles_close(alpha, gamma) && angles_close(beta, delta);
  if (parallelogram) return PatternClass::MiuraLike;

  bool kawasaki = angles_close(alpha + gamma, M_PI) &&
                  angles_close(beta + delta, M_PI);
  bool alpha_acute = alpha < M_PI / 2.0 - tol::kAngle;
  if (kawasaki && angles_close(alpha, beta) && alpha_acute)
    return PatternClass::ChickenWireLike;
  if (kawasaki && alpha_acute && !angles_close(alpha, beta))
    return PatternClass::GenericFlatFoldable;
  if (!kawasaki && alpha_acute && !angles_close(alpha, beta) &&
      !angles_close(alpha, delta))
    return PatternClass::GenericNonFlatFoldable;
  return PatternClass::Unsupported;
}

std::optional<FoldingMultipliers> pattern_multipliers(const CreasePattern& cp) {
  if (cp.interior.empty()) return std::nullopt;
  VertexStar star = vertex_star(cp, cp.interior.front());
  if (!star.geom.flat_foldable()) return std::nullopt;
  std::array<double, 4> n = canonical_necklace(star.geom.sector);
  return folding_multipliers(n[0], n[1]);
}

}  // namespace origami
