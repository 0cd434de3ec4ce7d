#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "acutile/delaunay.hpp"
#include "acutile/geom.hpp"
#include "acutile/slab.hpp"
#include "acutile/structures.hpp"
#include "acutile/tilings.hpp"
#include "acutile/validate.hpp"

using namespace acutile;

namespace {

constexpr std::int64_t kUnit = std::int64_t{1} << 32;

std::vector<Point3> random_points(std::size_t n, std::int64_t range, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> d(-range, range);
  std::vector<Point3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({d(rng), d(rng), d(rng)});
  return out;
}

void BM_Orient3D(benchmark::State& state) {
  const auto pts = random_points(4096, std::int64_t{1} << 40, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t k = (i += 4) % (pts.size() - 4);
    benchmark::DoNotOptimize(orient3d(pts[k], pts[k + 1], pts[k + 2], pts[k + 3]));
  }
}
BENCHMARK(BM_Orient3D);

void BM_Orient3DNearCoplanar(benchmark::State& state) {
  // Exactly coplanar quadruples nudged by one grid step force the exact path.
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::int64_t> d(-(std::int64_t{1} << 30),
                                                std::int64_t{1} << 30);
  std::vector<std::array<Point3, 4>> cases;
  for (int i = 0; i < 1024; ++i) {
    const Point3 a{d(rng), d(rng), d(rng)};
    const Point3 b{d(rng), d(rng), d(rng)};
    const Point3 c{d(rng), d(rng), d(rng)};
    Point3 e = a + 2 * (b - a) + (-1) * (c - a);
    e.z += (i % 2 == 0) ? 1 : -1;
    cases.push_back({a, b, c, e});
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& q = cases[i++ % cases.size()];
    benchmark::DoNotOptimize(orient3d(q[0], q[1], q[2], q[3]));
  }
}
BENCHMARK(BM_Orient3DNearCoplanar);

void BM_Insphere(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> d(-(std::int64_t{1} << 20),
                                                std::int64_t{1} << 20);
  std::vector<std::array<Point3, 5>> cases;
  while (cases.size() < 1024) {
    std::array<Point3, 5> q;
    for (Point3& p : q) p = {d(rng), d(rng), d(rng)};
    if (orient3d(q[0], q[1], q[2], q[3]) > 0) cases.push_back(q);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& q = cases[i++ % cases.size()];
    benchmark::DoNotOptimize(insphere(q[0], q[1], q[2], q[3], q[4]));
  }
}
BENCHMARK(BM_Insphere);

void BM_DihedralAngles(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::int64_t> d(-(std::int64_t{1} << 20),
                                                std::int64_t{1} << 20);
  std::vector<Tetrahedron> tets;
  while (tets.size() < 512) {
    std::array<Point3, 4> v;
    for (Point3& p : v) p = {d(rng), d(rng), d(rng)};
    try {
      tets.emplace_back(v);
    } catch (const std::invalid_argument&) {
    }
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dihedral_angles(tets[i++ % tets.size()]));
  }
}
BENCHMARK(BM_DihedralAngles);

void BM_IsAcute(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> d(-(std::int64_t{1} << 20),
                                                std::int64_t{1} << 20);
  std::vector<Tetrahedron> tets;
  while (tets.size() < 512) {
    std::array<Point3, 4> v;
    for (Point3& p : v) p = {d(rng), d(rng), d(rng)};
    try {
      tets.emplace_back(v);
    } catch (const std::invalid_argument&) {
    }
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_acute(tets[i++ % tets.size()]));
  }
}
BENCHMARK(BM_IsAcute);

void BM_DelaunayFinite(benchmark::State& state) {
  const auto pts =
      random_points(static_cast<std::size_t>(state.range(0)), std::int64_t{1} << 34, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(delaunay(pts));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DelaunayFinite)->Arg(32)->Arg(128)->Arg(512)->Complexity();

void BM_PeriodicTriangleStructure(benchmark::State& state) {
  const PeriodicPointSet pps = tcp_point_set(builtin_tiling("Z"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(periodic_delaunay(pps, 1));
  }
}
BENCHMARK(BM_PeriodicTriangleStructure);

void BM_SlabTiling(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(slab_tiling(SlabSpec{}));
  }
}
BENCHMARK(BM_SlabTiling);

void BM_ColoringSearch(benchmark::State& state) {
  const SquareTriangleTiling t = builtin_tiling("sigma");
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_dot_coloring(t));
  }
}
BENCHMARK(BM_ColoringSearch);

void BM_CheckTiling(benchmark::State& state) {
  const TetMesh mesh = periodic_delaunay(tcp_point_set(builtin_tiling("sigma")), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_tiling(mesh));
  }
}
BENCHMARK(BM_CheckTiling);

void BM_EmptySphereCertificate(benchmark::State& state) {
  const TetMesh mesh = periodic_delaunay(tcp_point_set(builtin_tiling("sigma")), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(delaunay_empty_sphere_check(mesh));
  }
}
BENCHMARK(BM_EmptySphereCertificate);

}  // namespace

BENCHMARK_MAIN();
