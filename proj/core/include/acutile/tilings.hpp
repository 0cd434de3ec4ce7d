#pragma once

#include <string>
#include <vector>

#include "acutile/mesh.hpp"

namespace acutile {

enum class DotKind {
  kEdgeMidpoint,
  kTriangleCenter,
  kSquareSide,  // one unit in from a square side, centered on it
};

struct Dot {
  Point3 position;  // planar (z = 0), reduced into the cell
  DotKind kind = DotKind::kEdgeMidpoint;
};

// A doubly periodic planar tiling by squares and equilateral triangles of
// edge length 4, on the 2^-32 grid. Faces carry concrete corner coordinates
// and appear once per translation orbit. The dot list is derived from the
// faces: every edge midpoint, every triangle center, and four per square,
// sorted by position.
struct SquareTriangleTiling {
  std::string name;
  std::array<Point3, 2> period;  // planar lattice generators (z = 0)
  std::vector<Point3> vertices;  // one per orbit, reduced, sorted
  std::vector<std::vector<Point3>> faces;  // corners in cyclic order
  std::vector<Dot> dots;

  Lattice planar_lattice() const;
};

// Built-in tilings: "Z" (triangles), "A15" (squares), "sigma" (the
// square-triangle mix), "H" (alternating square and triangle rows). Throws
// std::invalid_argument for other names.
SquareTriangleTiling builtin_tiling(const std::string& name);

// Searches for dot colorings (true = dark, placed at heights 3 mod 4; false =
// light, at heights 1 mod 4) under which the lifted structure is a valid
// acute tetrahedral cell complex. Dots closer than 1.8 edge-length-quarters
// must receive opposite colors, which prunes the search; every surviving leaf
// is verified by building the structure. Returns up to limit colorings in
// branch order (dark tried first).
std::vector<std::vector<bool>> enumerate_dot_colorings(const SquareTriangleTiling& t,
                                                       std::size_t limit);

// First valid coloring; throws std::runtime_error when none exists.
std::vector<bool> find_dot_coloring(const SquareTriangleTiling& t);

// Lifts the tiling to a triply periodic point set: vertex columns at heights
// 0 and 2 of the 4-high cell, dark dots at height 3, light dots at height 1.
PeriodicPointSet tcp_point_set(const SquareTriangleTiling& t,
                               const std::vector<bool>& dark);
PeriodicPointSet tcp_point_set(const SquareTriangleTiling& t);

}  // namespace acutile
