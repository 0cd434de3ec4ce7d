#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <utility>

#include "acutile/delaunay.hpp"
#include "acutile/mesh.hpp"
#include "acutile/shapes.hpp"
#include "acutile/slab.hpp"
#include "acutile/validate.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace acutile;

namespace {

constexpr std::int64_t kUnit = std::int64_t{1} << 32;

// One count per multiset of internal height layers; mirror-symmetric about
// the slab midplane (layer 71).
const std::map<std::string, std::size_t> kExpectedLayerCensus = {
    {"0-0-0-40", 2},          {"0-0-40-40", 3},       {"0-40-40-46", 6},
    {"40-40-46-71", 6},       {"40-46-71-71", 6},     {"40-71-71-71", 2},
    {"46-71-71-96", 6},       {"71-71-71-102", 2},    {"71-71-96-102", 6},
    {"71-96-102-102", 6},     {"96-102-102-142", 6},  {"102-102-142-142", 3},
    {"102-142-142-142", 2},
};

}  // namespace

TEST_CASE("the slab cell has 56 tetrahedra over 11 points") {
  const TetMesh mesh = slab_tiling(SlabSpec{});
  CHECK(mesh.size() == 56);
  CHECK(mesh.points().size() == 11);
  CHECK(mesh.points().periodicity() == Periodicity::kSlab);
  CHECK(mesh.points().lattice().basis[2] == Point3{0, 0, 142 * kUnit});
}

TEST_CASE("the layer census matches the frozen family counts") {
  const SlabLayerReport report = slab_layer_report(slab_tiling(SlabSpec{}));
  CHECK(report.total == 56);
  CHECK(report.counts == kExpectedLayerCensus);

  // The lower half-cell families come in sizes 2, 3, 6, 6, 6, 2; the
  // midplane-symmetric family contributes the remaining 6 cells.
  const std::array<std::pair<const char*, std::size_t>, 6> lower = {{
      {"0-0-0-40", 2},
      {"0-0-40-40", 3},
      {"0-40-40-46", 6},
      {"40-40-46-71", 6},
      {"40-46-71-71", 6},
      {"40-71-71-71", 2},
  }};
  std::size_t lower_total = 0;
  for (const auto& [key, count] : lower) {
    CHECK(report.counts.at(key) == count);
    lower_total += count;
  }
  CHECK(lower_total == 25);
  CHECK(report.counts.at("46-71-71-96") == 6);

  // Reflection through the midplane (layer 71) maps the census onto itself.
  for (const auto& [key, count] : report.counts) {
    std::array<int, 4> layers{};
    std::sscanf(key.c_str(), "%d-%d-%d-%d", &layers[0], &layers[1], &layers[2],
                &layers[3]);
    std::array<int, 4> mirrored = {142 - layers[3], 142 - layers[2],
                                   142 - layers[1], 142 - layers[0]};
    const std::string mirrored_key =
        std::to_string(mirrored[0]) + "-" + std::to_string(mirrored[1]) + "-" +
        std::to_string(mirrored[2]) + "-" + std::to_string(mirrored[3]);
    CHECK(report.counts.at(mirrored_key) == count);
  }
}

TEST_CASE("the slab is an acute face-to-face tiling") {
  const TetMesh mesh = slab_tiling(SlabSpec{});
  CHECK(check_tiling(mesh).passed);
  CHECK(check_acute_all(mesh).passed);
  CHECK(delaunay_empty_sphere_check(mesh).passed);
}

TEST_CASE("one-sided facets lie only in the boundary planes") {
  const TetMesh mesh = slab_tiling(SlabSpec{});
  const std::int64_t thickness = mesh.points().lattice().basis[2].z;

  std::map<FacetKey, int> shared;
  std::map<FacetKey, std::array<VertexRef, 3>> corners;
  for (const TetRef& t : mesh.tets()) {
    for (int f = 0; f < 4; ++f) {
      std::array<VertexRef, 3> tri;
      int k = 0;
      for (int v = 0; v < 4; ++v) {
        if (v != f) tri[static_cast<std::size_t>(k++)] = t.v[static_cast<std::size_t>(v)];
      }
      const FacetKey key = facet_key(tri[0], tri[1], tri[2]);
      ++shared[key];
      corners[key] = tri;
    }
  }

  std::size_t one_sided = 0;
  for (const auto& [key, count] : shared) {
    REQUIRE(count <= 2);
    if (count == 2) continue;
    ++one_sided;
    std::set<std::int64_t> heights;
    for (const VertexRef& r : corners[key]) {
      heights.insert(mesh.position(r).z);
    }
    REQUIRE(heights.size() == 1);
    const std::int64_t z = *heights.begin();
    CHECK((z == 0 || z == thickness));
  }
  CHECK(one_sided == 4);
}

TEST_CASE("the extreme dihedral angles hit their exact values") {
  const QualityReport q = quality_report(slab_tiling(SlabSpec{}));
  const double largest = std::acos(1.0 / 26.0) * 180.0 / std::numbers::pi;
  CHECK(q.max_dihedral_max == doctest::Approx(largest).epsilon(1e-9));
  CHECK(q.max_dihedral_max < 90.0);
  CHECK(std::abs(q.min_dihedral_min - 46.83) <= 0.02);
  CHECK(std::abs(q.radius_edge_min - 0.636) <= 0.002);
  CHECK(std::abs(q.radius_edge_max - 0.938) <= 0.002);
}

TEST_CASE("the height only rescales the slab") {
  const TetMesh base = slab_tiling(SlabSpec{});
  const TetMesh doubled = slab_tiling(SlabSpec{28.4, 1, 1});
  CHECK(doubled.size() == 56);
  CHECK(doubled.points().scale() ==
        doctest::Approx(2.0 * base.points().scale()).epsilon(1e-15));

  const QualityReport qb = quality_report(base);
  const QualityReport qd = quality_report(doubled);
  CHECK(qb.radius_edge_min == doctest::Approx(qd.radius_edge_min).epsilon(1e-12));
  CHECK(qb.radius_edge_max == doctest::Approx(qd.radius_edge_max).epsilon(1e-12));
  CHECK(qb.min_dihedral_min == doctest::Approx(qd.min_dihedral_min).epsilon(1e-12));
  CHECK(qb.max_dihedral_max == doctest::Approx(qd.max_dihedral_max).epsilon(1e-12));
}

TEST_CASE("planar replication preserves the tiling") {
  const TetMesh mesh = slab_tiling(SlabSpec{14.2, 2, 3});
  CHECK(mesh.size() == 56 * 6);
  CHECK(mesh.points().size() == 11 * 6);
  CHECK(check_tiling(mesh).passed);
  CHECK(check_acute_all(mesh).passed);

  const QualityReport q1 = quality_report(slab_tiling(SlabSpec{}));
  const QualityReport q6 = quality_report(mesh);
  CHECK(q1.radius_edge_min == doctest::Approx(q6.radius_edge_min).epsilon(1e-12));
  CHECK(q1.radius_edge_max == doctest::Approx(q6.radius_edge_max).epsilon(1e-12));
  CHECK(q1.min_dihedral_min == doctest::Approx(q6.min_dihedral_min).epsilon(1e-12));
  CHECK(q1.max_dihedral_max == doctest::Approx(q6.max_dihedral_max).epsilon(1e-12));
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(slab_tiling(SlabSpec{0.0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(slab_tiling(SlabSpec{-2.0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(slab_tiling(SlabSpec{14.2, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(slab_tiling(SlabSpec{14.2, 1, -1}), std::invalid_argument);
}

TEST_CASE("the layer report rejects foreign meshes") {
  CHECK_THROWS_AS(slab_layer_report(acutile::testing::build_structure("z-triangle")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      slab_layer_report(delaunay(five_point_configuration(), kFivePointScale)),
      std::invalid_argument);
}
