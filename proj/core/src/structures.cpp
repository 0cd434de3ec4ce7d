#include "acutile/structures.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "acutile/delaunay.hpp"
#include "acutile/geom.hpp"

namespace acutile {

namespace {

constexpr std::int64_t kUnit = std::int64_t{1} << 32;

std::int64_t exact_quotient(const BigInt& num, const BigInt& den) {
  if (num % den != 0) {
    throw std::logic_error("a15_from_bcc: circumcenter is not a grid point");
  }
  return static_cast<std::int64_t>(BigInt(num / den).convert_to<std::int64_t>());
}

}  // namespace

PeriodicPointSet a15_from_bcc() {
  Lattice lattice;
  lattice.basis = {Point3{4 * kUnit, 0, 0}, Point3{0, 4 * kUnit, 0},
                   Point3{0, 0, 4 * kUnit}};
  const std::vector<Point3> seed = {Point3{0, 0, 0},
                                    Point3{2 * kUnit, 2 * kUnit, 2 * kUnit}};
  const PeriodicPointSet bcc(Periodicity::kFull, lattice, seed);
  const TetMesh mesh = periodic_delaunay(bcc, 1);
  const auto& tets = mesh.tets();

  std::map<FacetKey, std::vector<std::size_t>> shared;
  for (std::size_t i = 0; i < tets.size(); ++i) {
    for (int f = 0; f < 4; ++f) {
      std::array<VertexRef, 3> tri;
      int k = 0;
      for (int v = 0; v < 4; ++v) {
        if (v != f) tri[static_cast<std::size_t>(k++)] = tets[i].v[static_cast<std::size_t>(v)];
      }
      shared[facet_key(tri[0], tri[1], tri[2])].push_back(i);
    }
  }
  std::vector<std::vector<std::size_t>> adjacent(tets.size());
  for (const auto& [key, ids] : shared) {
    if (ids.size() != 2) {
      throw std::logic_error("a15_from_bcc: facet not shared by two cells");
    }
    adjacent[ids[0]].push_back(ids[1]);
    adjacent[ids[1]].push_back(ids[0]);
  }

  std::vector<int> color(tets.size(), -1);
  std::vector<std::size_t> frontier = {0};
  color[0] = 0;
  while (!frontier.empty()) {
    const std::size_t i = frontier.back();
    frontier.pop_back();
    for (const std::size_t j : adjacent[i]) {
      if (color[j] == -1) {
        color[j] = 1 - color[i];
        frontier.push_back(j);
      } else if (color[j] == color[i]) {
        throw std::logic_error("a15_from_bcc: cell adjacency is not two-colorable");
      }
    }
  }
  for (const int c : color) {
    if (c == -1) throw std::logic_error("a15_from_bcc: cell adjacency is disconnected");
  }

  std::set<Point3> centers;
  for (std::size_t i = 0; i < tets.size(); ++i) {
    if (color[i] != 0) continue;
    const ExactCircumcenter ec =
        exact_circumcenter(mesh.position(tets[i].v[0]), mesh.position(tets[i].v[1]),
                           mesh.position(tets[i].v[2]), mesh.position(tets[i].v[3]));
    const Point3 center{exact_quotient(ec.nx, ec.den), exact_quotient(ec.ny, ec.den),
                        exact_quotient(ec.nz, ec.den)};
    centers.insert(reduce_into_cell(center, lattice, 3));
  }

  std::vector<Point3> points = seed;
  points.insert(points.end(), centers.begin(), centers.end());
  return PeriodicPointSet(Periodicity::kFull, lattice, points);
}

PeriodicPointSet c15_point_set() {
  Lattice lattice;
  lattice.basis = {Point3{8 * kUnit, 0, 0}, Point3{0, 8 * kUnit, 0},
                   Point3{0, 0, 8 * kUnit}};
  constexpr std::array<std::array<std::int64_t, 3>, 24> sites = {{
      // diamond sublattice
      {0, 0, 0},
      {0, 4, 4},
      {4, 0, 4},
      {4, 4, 0},
      {2, 2, 2},
      {2, 6, 6},
      {6, 2, 6},
      {6, 6, 2},
      // 16-point sublattice
      {1, 1, 5},
      {1, 3, 7},
      {1, 5, 1},
      {1, 7, 3},
      {3, 1, 7},
      {3, 3, 5},
      {3, 5, 3},
      {3, 7, 1},
      {5, 1, 1},
      {5, 3, 3},
      {5, 5, 5},
      {5, 7, 7},
      {7, 1, 3},
      {7, 3, 1},
      {7, 5, 7},
      {7, 7, 5},
  }};
  std::vector<Point3> motif;
  motif.reserve(sites.size());
  for (const auto& s : sites) {
    motif.push_back(Point3{s[0] * kUnit, s[1] * kUnit, s[2] * kUnit});
  }
  return PeriodicPointSet(Periodicity::kFull, lattice, motif);
}

PeriodicPointSet icosahedral_z_point_set() {
  constexpr std::int64_t half = std::int64_t{1} << 31;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const std::int64_t f = std::llround(phi * static_cast<double>(half));
  const std::int64_t a = std::llround(static_cast<double>(half) / std::sqrt(3.0));
  const std::int64_t b = std::llround(phi * static_cast<double>(half) / std::sqrt(3.0));

  Lattice lattice;
  lattice.basis = {Point3{2 * f, 0, 0}, Point3{f, 3 * b, 0},
                   Point3{0, 0, 4 * a + 4 * b}};
  const std::vector<Point3> raw = {
      {0, 2 * a, 0},
      {-half, -a, 0},
      {half, -a, 0},
      {half, a, 2 * a + 2 * b},
      {-half, a, 2 * a + 2 * b},
      {0, -2 * a, 2 * a + 2 * b},
      {f, b, 2 * a},
      {0, 2 * b, 2 * b},
      {0, 2 * b, 4 * a + 2 * b},
      {-f, b, 2 * a + 4 * b},
      {0, 0, a + b},
      {0, 0, 3 * a + 3 * b},
  };
  std::vector<Point3> motif;
  motif.reserve(raw.size());
  for (const Point3& p : raw) motif.push_back(reduce_into_cell(p, lattice, 3));
  return PeriodicPointSet(Periodicity::kFull, lattice, motif);
}

}  // namespace acutile
