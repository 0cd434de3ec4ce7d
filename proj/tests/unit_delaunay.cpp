#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "acutile/delaunay.hpp"
#include "acutile/io.hpp"
#include "acutile/shapes.hpp"
#include "acutile/validate.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace acutile;
using acutile::testing::auto_periodic_delaunay;

namespace {

constexpr std::int64_t kUnit = std::int64_t{1} << 32;

std::set<std::array<std::int32_t, 4>> vertex_index_sets(const TetMesh& mesh) {
  std::set<std::array<std::int32_t, 4>> out;
  for (const TetRef& t : mesh.tets()) {
    std::array<std::int32_t, 4> ids = {t.v[0].v, t.v[1].v, t.v[2].v, t.v[3].v};
    std::sort(ids.begin(), ids.end());
    out.insert(ids);
  }
  return out;
}

BigInt six_times_volume(const TetMesh& mesh) {
  BigInt total = 0;
  for (const TetRef& t : mesh.tets()) {
    const Point3 a = mesh.position(t.v[0]);
    total += det3x3(mesh.position(t.v[1]) - a, mesh.position(t.v[2]) - a,
                    mesh.position(t.v[3]) - a);
  }
  return total;
}

}  // namespace

TEST_CASE("four points make a single tetrahedron") {
  const TetMesh mesh =
      delaunay({Point3{0, 0, 0}, Point3{6, 0, 0}, Point3{0, 6, 0}, Point3{0, 0, 6}});
  CHECK(mesh.size() == 1);
  CHECK(mesh.points().periodicity() == Periodicity::kNone);
  CHECK(six_times_volume(mesh) == 216);
}

TEST_CASE("cube corners split into five or six tetrahedra covering the cube") {
  std::vector<Point3> corners;
  for (int x : {0, 2}) {
    for (int y : {0, 2}) {
      for (int z : {0, 2}) corners.push_back(Point3{x, y, z});
    }
  }
  const TetMesh mesh = delaunay(corners);
  CHECK(mesh.size() >= 5);
  CHECK(mesh.size() <= 6);
  CHECK(six_times_volume(mesh) == 48);
  CHECK(check_tiling(mesh).passed);
  CHECK(delaunay_empty_sphere_check(mesh).passed);

  SUBCASE("duplicate points are merged") {
    corners.push_back(corners.front());
    const TetMesh again = delaunay(corners);
    CHECK(again.points().size() == 8);
    CHECK(mesh_to_json(again) == mesh_to_json(mesh));
  }
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(delaunay({Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}}),
                  std::invalid_argument);
  std::vector<Point3> collinear;
  for (int i = 0; i < 8; ++i) collinear.push_back(Point3{i, 2 * i, 3 * i});
  CHECK_THROWS_AS(delaunay(collinear), std::invalid_argument);
  CHECK_THROWS_AS(delaunay({Point3{0, 0, 0}, Point3{5, 0, 0}, Point3{0, 5, 0},
                            Point3{5, 5, 0}, Point3{2, 3, 0}}),
                  std::invalid_argument);
}

TEST_CASE("five-point configuration triangulates around the central edge") {
  const TetMesh mesh = delaunay(five_point_configuration(), kFivePointScale);
  REQUIRE(mesh.size() == 3);
  CHECK(mesh.points().scale() == kFivePointScale);

  const std::set<std::array<std::int32_t, 4>> expected = {
      {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4}};
  CHECK(vertex_index_sets(mesh) == expected);

  // Every cell meets edge (0, 4) with a 120 degree dihedral there.
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const TetRef& t = mesh.tets()[i];
    std::vector<Point3> others;
    Point3 a{}, e{};
    for (const VertexRef& r : t.v) {
      if (r.v == 0) a = mesh.position(r);
      else if (r.v == 4) e = mesh.position(r);
      else others.push_back(mesh.position(r));
    }
    REQUIRE(others.size() == 2);
    CHECK(dihedral_angle_degrees(a, e, others[0], others[1]) ==
          doctest::Approx(120.0).epsilon(2e-4));
  }
  CHECK(delaunay_empty_sphere_check(mesh).passed);
  CHECK_FALSE(check_acute_all(mesh).passed);
}

TEST_CASE("a 3-to-2 flip turns the central-edge fan into the acute pair") {
  const TetMesh fan = delaunay(five_point_configuration(), kFivePointScale);
  const TetMesh pair =
      flip_3to2(fan, VertexRef{0, {0, 0, 0}}, VertexRef{4, {0, 0, 0}});
  REQUIRE(pair.size() == 2);
  const std::set<std::array<std::int32_t, 4>> expected = {{0, 1, 2, 3},
                                                          {1, 2, 3, 4}};
  CHECK(vertex_index_sets(pair) == expected);
  CHECK(check_acute_all(pair).passed);
  CHECK(check_tiling(pair).passed);
  CHECK_FALSE(delaunay_empty_sphere_check(pair).passed);
  CHECK(six_times_volume(pair) == six_times_volume(fan));

  // Edge (1, 2) lies on only one tetrahedron of the fan.
  CHECK_THROWS_AS(flip_3to2(fan, VertexRef{1, {0, 0, 0}}, VertexRef{2, {0, 0, 0}}),
                  std::invalid_argument);
}

TEST_CASE("a single-point cubic cell is resolved deterministically") {
  const Lattice cell{{Point3{4 * kUnit, 0, 0}, Point3{0, 4 * kUnit, 0},
                      Point3{0, 0, 4 * kUnit}}};
  const PeriodicPointSet pps(Periodicity::kFull, cell, {Point3{0, 0, 0}});
  const TetMesh mesh = auto_periodic_delaunay(pps);
  CHECK(mesh.size() >= 5);
  CHECK(mesh.size() <= 6);
  CHECK(check_tiling(mesh).passed);
  CHECK(delaunay_empty_sphere_check(mesh).passed);

  const TetMesh again = auto_periodic_delaunay(pps);
  CHECK(mesh_to_json(again) == mesh_to_json(mesh));
}

TEST_CASE("the body-centered cubic cell yields twelve congruent cells") {
  const Lattice cell{{Point3{4 * kUnit, 0, 0}, Point3{0, 4 * kUnit, 0},
                      Point3{0, 0, 4 * kUnit}}};
  const PeriodicPointSet pps(Periodicity::kFull, cell,
                             {Point3{0, 0, 0}, Point3{2 * kUnit, 2 * kUnit, 2 * kUnit}});
  const TetMesh mesh = auto_periodic_delaunay(pps);
  CHECK(mesh.size() == 12);
  CHECK(check_tiling(mesh).passed);

  const QualityReport q = quality_report(mesh);
  CHECK(q.radius_edge_min == doctest::Approx(q.radius_edge_max).epsilon(1e-12));
  CHECK(q.radius_edge_min == doctest::Approx(std::sqrt(5.0 / 12.0)).epsilon(1e-9));
  CHECK(q.min_dihedral_min == doctest::Approx(60.0).epsilon(1e-9));
  CHECK(q.max_dihedral_max == doctest::Approx(90.0).epsilon(1e-9));

  // Right dihedrals on four-valent edges: correctly rejected by both checks.
  CHECK_FALSE(check_acute_all(mesh).passed);
  CHECK_FALSE(tcp_check(mesh).passed);
  const ValenceAngleIdentity identity = valence_angle_identity(mesh);
  CHECK(identity.product == doctest::Approx(360.0).epsilon(1e-12));
}

TEST_CASE("periodic patches refuse circumballs wider than their shield") {
  const Lattice cell{{Point3{100 * kUnit, 0, 0}, Point3{0, kUnit, 0},
                      Point3{0, 0, kUnit}}};
  const PeriodicPointSet pps(Periodicity::kFull, cell, {Point3{0, 0, 0}});
  CHECK_THROWS_AS(periodic_delaunay(pps, 1), std::runtime_error);
}

TEST_CASE("periodic_delaunay validates its arguments") {
  const Lattice cell{{Point3{4 * kUnit, 0, 0}, Point3{0, 4 * kUnit, 0},
                      Point3{0, 0, 4 * kUnit}}};
  const PeriodicPointSet pps(Periodicity::kFull, cell, {Point3{0, 0, 0}});
  CHECK_THROWS_AS(periodic_delaunay(pps, 0), std::invalid_argument);

  const PeriodicPointSet finite(Periodicity::kNone, Lattice{},
                                {Point3{0, 0, 0}, Point3{4, 0, 0}, Point3{0, 4, 0},
                                 Point3{0, 0, 4}});
  CHECK_THROWS_AS(periodic_delaunay(finite, 1), std::invalid_argument);
}
