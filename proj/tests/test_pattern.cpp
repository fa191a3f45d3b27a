#include <doctest.h>

#include <set>

#include "origami/errors.hpp"
#include "origami/pattern.hpp"

using namespace origami;

namespace {

QuadTile tile_deg(double a, double b, double c, double d) {
  return QuadTile::from_angles(
      {deg2rad(a), deg2rad(b), deg2rad(c), deg2rad(d)});
}

std::array<double, 4> sector_deg(const CreasePattern& cp, int v) {
  VertexStar s = vertex_star(cp, v);
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = rad2deg(s.geom.sector[i]);
  return out;
}

bool sectors_are(const std::array<double, 4>& got,
                 const std::array<double, 4>& want) {
  for (int i = 0; i < 4; ++i)
    if (std::abs(got[i] - want[i]) > 1e-9) return false;
  return true;
}

}  // namespace

TEST_CASE("tile realization from angles") {
  SUBCASE("flat-foldable set is inscribed and canonical") {
    QuadTile t = tile_deg(50, 110, 130, 70);
    std::array<double, 4> a = t.angles();
    CHECK(rad2deg(a[0]) == doctest::Approx(50).epsilon(1e-10));
    CHECK(rad2deg(a[1]) == doctest::Approx(110).epsilon(1e-10));
    CHECK(rad2deg(a[2]) == doctest::Approx(130).epsilon(1e-10));
    CHECK(rad2deg(a[3]) == doctest::Approx(70).epsilon(1e-10));
    CHECK(t.corners[0].norm() < 1e-12);
    CHECK(std::abs(t.corners[1].y()) < 1e-12);
    CHECK(t.corners[1].x() > 0.5);
  }
  SUBCASE("non-flat-foldable set keeps unit base edge") {
    QuadTile t = tile_deg(50, 60, 120, 130);
    std::array<double, 4> a = t.angles();
    for (int i = 0; i < 4; ++i)
      CHECK(rad2deg(a[i]) ==
            doctest::Approx(std::array<double, 4>{50, 60, 120, 130}[i])
                .epsilon(1e-10));
    CHECK(t.corners[1].x() == doctest::Approx(1.0));
    CHECK(std::abs(t.corners[1].y()) < 1e-12);
  }
  SUBCASE("bad angle sets are rejected") {
    CHECK_THROWS_AS((void)tile_deg(100, 100, 100, 80), Error);
    CHECK_THROWS_AS((void)tile_deg(0, 120, 120, 120), Error);
    CHECK_THROWS_AS((void)tile_deg(180, 60, 60, 60), Error);
  }
}

TEST_CASE("tile corner validation") {
  // clockwise listing
  CHECK_THROWS_AS((void)QuadTile::from_corners({Eigen::Vector2d(0, 0),
                                                Eigen::Vector2d(0, 1),
                                                Eigen::Vector2d(1, 1),
                                                Eigen::Vector2d(1, 0)}),
                  Error);
  // reflex corner
  CHECK_THROWS_AS((void)QuadTile::from_corners({Eigen::Vector2d(0, 0),
                                                Eigen::Vector2d(2, 0),
                                                Eigen::Vector2d(1, 0.1),
                                                Eigen::Vector2d(2, 2)}),
                  Error);
  // coincident corners
  CHECK_THROWS_AS((void)QuadTile::from_corners({Eigen::Vector2d(0, 0),
                                                Eigen::Vector2d(0, 0),
                                                Eigen::Vector2d(1, 1),
                                                Eigen::Vector2d(0, 1)}),
                  Error);
}

TEST_CASE("generated grids have the expected structure") {
  for (const CreasePattern& cp :
       {generate_miura(deg2rad(60), 1.0, 1.0, 3, 3),
        generate_chicken_wire(deg2rad(60), 1.0, 2.2, 3, 3),
        generate_rotationally_symmetric(tile_deg(50, 110, 130, 70), 3, 3),
        generate_rotationally_symmetric(tile_deg(50, 60, 120, 130), 3, 3)}) {
    CHECK(cp.vertices.size() == 16);
    CHECK(cp.creases.size() == 12);
    CHECK(cp.boundary_edges.size() == 12);
    CHECK(cp.faces.size() == 9);
    CHECK(cp.interior == std::vector<int>{5, 6, 9, 10});
    for (int v : cp.interior) {
      VertexStar s = vertex_star(cp, v);
      double sum = 0;
      for (double x : s.geom.sector) sum += x;
      CHECK(std::abs(sum - 2 * M_PI) < 1e-12);
    }
  }
  CreasePattern small =
      generate_rotationally_symmetric(tile_deg(50, 110, 130, 70), 2, 2);
  CHECK(small.vertices.size() == 9);
  CHECK(small.creases.size() == 4);
  CHECK(small.interior == std::vector<int>{4});
}

TEST_CASE("crease reading order matches the grid layout") {
  CreasePattern cp = generate_miura(deg2rad(60), 1.0, 1.0, 3, 3);
  auto ends = [&](int c) {
    return std::minmax(cp.creases[c].v0, cp.creases[c].v1);
  };
  CHECK(ends(0) == std::minmax(1, 5));
  CHECK(ends(1) == std::minmax(2, 6));
  CHECK(ends(2) == std::minmax(4, 5));
  CHECK(ends(3) == std::minmax(5, 6));
  CHECK(ends(4) == std::minmax(6, 7));
  CHECK(ends(5) == std::minmax(5, 9));
  CHECK(ends(6) == std::minmax(6, 10));
  CHECK(ends(7) == std::minmax(8, 9));
  CHECK(ends(8) == std::minmax(9, 10));
  CHECK(ends(9) == std::minmax(10, 11));
  CHECK(ends(10) == std::minmax(9, 13));
  CHECK(ends(11) == std::minmax(10, 14));
}

TEST_CASE("vertex necklaces of the generated tilings") {
  CreasePattern miura = generate_miura(deg2rad(60), 1.0, 1.0, 3, 3);
  CHECK(sectors_are(sector_deg(miura, 5), {120, 60, 60, 120}));
  CHECK(sectors_are(sector_deg(miura, 9), {60, 120, 120, 60}));

  // tile corner order (alpha, beta, gamma, delta) appears around each vertex
  // as the cycle (alpha, delta, gamma, beta) up to rotation
  CreasePattern ff =
      generate_rotationally_symmetric(tile_deg(50, 110, 130, 70), 3, 3);
  CHECK(sectors_are(sector_deg(ff, 6), {50, 70, 130, 110}));
  CHECK(sectors_are(sector_deg(ff, 5), {110, 50, 70, 130}));
  CHECK(sectors_are(sector_deg(ff, 9), {50, 70, 130, 110}));

  CreasePattern nff =
      generate_rotationally_symmetric(tile_deg(50, 60, 120, 130), 3, 3);
  CHECK(sectors_are(sector_deg(nff, 6), {50, 130, 120, 60}));
  // the trapezoid tile produces a collinear crease pair at every vertex
  for (int v : nff.interior) {
    VertexStar s = vertex_star(nff, v);
    CHECK(s.geom.has_collinear_pair());
  }
}

TEST_CASE("rotational symmetry invariant holds across every crease") {
  CreasePattern cp =
      generate_rotationally_symmetric(tile_deg(50, 60, 120, 130), 4, 5);
  // generator throws if the half-turn invariant fails; spot-check one crease
  const Crease& c = cp.creases[0];
  Eigen::Vector2d mid = 0.5 * (cp.vertices[c.v0] + cp.vertices[c.v1]);
  // find the two faces sharing this crease
  std::vector<int> fs;
  for (int f = 0; f < static_cast<int>(cp.faces.size()); ++f) {
    int hits = 0;
    for (int v : cp.faces[f])
      if (v == c.v0 || v == c.v1) ++hits;
    if (hits == 2) fs.push_back(f);
  }
  REQUIRE(fs.size() == 2);
  for (int corner : cp.faces[fs[0]]) {
    Eigen::Vector2d image = 2.0 * mid - cp.vertices[corner];
    double best = 1e30;
    for (int other : cp.faces[fs[1]])
      best = std::min(best, (image - cp.vertices[other]).norm());
    CHECK(best < 1e-9);
  }
}

TEST_CASE("kawasaki check and mixed geometry detection") {
  CHECK(check_kawasaki(generate_miura(deg2rad(60), 1.0, 1.0, 3, 3)));
  CHECK(check_kawasaki(
      generate_rotationally_symmetric(tile_deg(50, 110, 130, 70), 3, 3)));
  CHECK_FALSE(check_kawasaki(
      generate_rotationally_symmetric(tile_deg(50, 60, 120, 130), 3, 3)));

  // nudging one interior vertex of a flat-foldable grid makes some vertices
  // pass and others fail
  CreasePattern cp =
      generate_rotationally_symmetric(tile_deg(50, 110, 130, 70), 3, 3);
  std::vector<Eigen::Vector2d> pts = cp.vertices;
  pts[5] += Eigen::Vector2d(0.03, -0.02);
  CreasePattern bent = finalize_pattern(pts, cp.faces);
  CHECK_THROWS_AS((void)check_kawasaki(bent), Error);
  try {
    (void)check_kawasaki(bent);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MixedVertexGeometry);
  }
}

TEST_CASE("pattern classification") {
  CHECK(classify_pattern(generate_miura(deg2rad(60), 1.0, 1.0, 3, 3)) ==
        PatternClass::MiuraLike);
  CHECK(classify_pattern(generate_chicken_wire(deg2rad(60), 1.0, 2.2, 3, 3)) ==
        PatternClass::ChickenWireLike);
  CHECK(classify_pattern(generate_rotationally_symmetric(
            tile_deg(50, 110, 130, 70), 3, 3)) ==
        PatternClass::GenericFlatFoldable);
  CHECK(classify_pattern(generate_rotationally_symmetric(
            tile_deg(50, 60, 120, 130), 3, 3)) ==
        PatternClass::GenericNonFlatFoldable);
  CHECK(classify_pattern(generate_rotationally_symmetric(
            tile_deg(50, 65, 120, 125), 3, 3)) ==
        PatternClass::GenericNonFlatFoldable);
  // squares are degenerate parallelograms
  CHECK(classify_pattern(generate_rotationally_symmetric(
            tile_deg(90, 90, 90, 90), 2, 2)) == PatternClass::MiuraLike);
  // isosceles trapezoid stated in rotated corner order
  CHECK(classify_pattern(generate_rotationally_symmetric(
            tile_deg(50, 50, 130, 130), 2, 2)) ==
        PatternClass::ChickenWireLike);
  // repeated acute angle without the trapezoid structure is out of scope
  CHECK(classify_pattern(generate_rotationally_symmetric(
            tile_deg(50, 50, 120, 140), 2, 2)) == PatternClass::Unsupported);
}

TEST_CASE("canonical necklace picks the smallest dihedral image") {
  std::array<double, 4> n = canonical_necklace(
      {deg2rad(130), deg2rad(70), deg2rad(50), deg2rad(110)});
  CHECK(rad2deg(n[0]) == doctest::Approx(50).epsilon(1e-12));
  CHECK(rad2deg(n[1]) == doctest::Approx(70).epsilon(1e-12));
  CHECK(rad2deg(n[2]) == doctest::Approx(130).epsilon(1e-12));
  CHECK(rad2deg(n[3]) == doctest::Approx(110).epsilon(1e-12));
}

TEST_CASE("pattern multipliers report the effective vertex pair") {
  auto pm = pattern_multipliers(
      generate_rotationally_symmetric(tile_deg(50, 110, 130, 70), 3, 3));
  REQUIRE(pm.has_value());
  CHECK(pm->p == doctest::Approx(0.507713305942873).epsilon(1e-12));
  CHECK(pm->q == doctest::Approx(0.200511644240580).epsilon(1e-12));

  auto miura = pattern_multipliers(generate_miura(deg2rad(60), 1, 1, 3, 3));
  REQUIRE(miura.has_value());
  CHECK(miura->p == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(miura->q == doctest::Approx(0.0));

  CHECK_FALSE(pattern_multipliers(generate_rotationally_symmetric(
                  tile_deg(50, 60, 120, 130), 3, 3))
                  .has_value());
}

TEST_CASE("star and generator guard rails") {
  CreasePattern cp = generate_miura(deg2rad(60), 1.0, 1.0, 3, 3);
  CHECK_THROWS_AS((void)vertex_star(cp, 0), Error);  // boundary vertex
  CHECK_THROWS_AS((void)vertex_star(cp, 99), Error);
  CHECK_THROWS_AS((void)generate_miura(deg2rad(95), 1, 1, 3, 3), Error);
  CHECK_THROWS_AS((void)generate_miura(deg2rad(60), 1, 1, 0, 3), Error);
  CHECK_THROWS_AS((void)generate_miura(deg2rad(60), 1, 1, 65, 3), Error);
  // chicken wire needs a base longer than both projected legs
  CHECK_THROWS_AS((void)generate_chicken_wire(deg2rad(60), 1.0, 0.9, 3, 3),
                  Error);
}
