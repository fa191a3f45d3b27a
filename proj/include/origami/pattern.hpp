#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "origami/geometry.hpp"
#include "origami/vertex.hpp"

namespace origami {

// Convex quadrilateral prototile, corners counterclockwise with corner 0 at
// the origin and edge 0->1 along +x.
struct QuadTile {
  std::array<Eigen::Vector2d, 4> corners;

  // canonicalizes (translate/rotate) and validates an explicit corner list
  static QuadTile from_corners(const std::array<Eigen::Vector2d, 4>& corners);
  // realizes a tile with the given interior angles (radians, sum 2*pi).
  // Flat-foldable angle sets are inscribed in a unit circle; otherwise side
  // lengths come from the midpoint of the feasible length interval with
  // edge 0->1 of length 1.
  static QuadTile from_angles(const std::array<double, 4>& angles);

  std::array<double, 4> angles() const;
};

struct Crease {
  int v0;
  int v1;
};

struct CreasePattern {
  std::vector<Eigen::Vector2d> vertices;
  // interior edges in reading order (top line first, left to right)
  std::vector<Crease> creases;
  std::vector<std::array<int, 2>> boundary_edges;
  // counterclockwise quads, row-major when generated
  std::vector<std::array<int, 4>> faces;
  // ascending ids of interior vertices (not on any boundary edge)
  std::vector<int> interior;
  // face-grid shape when generated; 0 when imported
  int rows = 0;
  int cols = 0;
  std::optional<QuadTile> tile;

  int crease_count() const { return static_cast<int>(creases.size()); }
  bool is_interior(int v) const;
};

// Four incident creases of an interior degree-4 vertex, counterclockwise
// starting from the smallest direction angle.
struct VertexStar {
  int vertex = -1;
  std::array<int, 4> crease{};
  VertexGeometry geom;
};

VertexStar vertex_star(const CreasePattern& cp, int vertex);

// assembles a pattern from vertices and faces, deriving edges, boundary,
// interior set, and the canonical crease order (shared by generators and
// the FOLD importer)
CreasePattern finalize_pattern(std::vector<Eigen::Vector2d> vertices,
                               std::vector<std::array<int, 4>> faces);

// tiling generators; `rows` x `cols` counts faces
CreasePattern generate_rotationally_symmetric(const QuadTile& tile, int rows,
                                              int cols);
CreasePattern generate_miura(double theta, double len_a, double len_b,
                             int rows, int cols);
CreasePattern generate_chicken_wire(double theta, double len_a, double len_b,
                                    int rows, int cols);

// true when every interior vertex satisfies the alternating sector sum
// condition; throws MixedVertexGeometry when vertices disagree
bool check_kawasaki(const CreasePattern& cp);

enum class PatternClass {
  MiuraLike,
  ChickenWireLike,
  GenericFlatFoldable,
  GenericNonFlatFoldable,
  Unsupported,
};

const char* pattern_class_name(PatternClass c);

// smallest angle tuple over all rotations and reflections of a cyclic
// necklace (tolerance-aware lexicographic comparison)
std::array<double, 4> canonical_necklace(const std::array<double, 4>& angles);

PatternClass classify_pattern(const CreasePattern& cp);

// effective multiplier pair of a flat-foldable pattern, computed from the
// canonical necklace of a representative interior vertex; empty for
// non-flat-foldable patterns or patterns without interior vertices
std::optional<FoldingMultipliers> pattern_multipliers(const CreasePattern& cp);

}  // namespace origami
