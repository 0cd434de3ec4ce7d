#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include "acutile/geom.hpp"

namespace acutile {

enum class Periodicity {
  kNone,  // finite point set, no lattice
  kSlab,  // periodic in the two horizontal lattice directions, bounded in z
  kFull,  // periodic in all three lattice directions
};

int periodic_dim_count(Periodicity p);

struct Lattice {
  // Generator rows; only the first periodic_dim_count entries are meaningful.
  // Slab generators must be horizontal (zero z component).
  std::array<Point3, 3> basis = {};
};

// A vertex of a periodic mesh: motif point index plus an integer lattice
// offset. Offsets along non-periodic directions are always zero.
struct VertexRef {
  std::int32_t v = 0;
  std::array<std::int32_t, 3> off = {0, 0, 0};

  friend constexpr auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

struct TetRef {
  std::array<VertexRef, 4> v;

  friend constexpr auto operator<=>(const TetRef&, const TetRef&) = default;
};

// Exact fractional coordinates of a point in the lattice cell: lambda_i =
// num[i] / den with den > 0; non-periodic directions report zero.
struct CellCoords {
  std::array<BigInt, 3> num;
  BigInt den;
};

CellCoords cell_coordinates(const Point3& p, const Lattice& lattice, int dims);

// Translates p by integer lattice steps into the half-open fundamental cell
// (0 <= lambda_i < 1 along each periodic direction). When shifts is non-null
// it receives the subtracted step counts.
Point3 reduce_into_cell(const Point3& p, const Lattice& lattice, int dims,
                        std::array<std::int64_t, 3>* shifts = nullptr);

class PeriodicPointSet {
 public:
  // Validates on construction: a nonzero lattice cell for periodic sets,
  // every point inside the half-open fundamental cell, and pairwise distinct
  // points. Throws std::invalid_argument on violation.
  PeriodicPointSet(Periodicity periodicity, const Lattice& lattice,
                   std::vector<Point3> points, double scale = kDefaultScale);

  Periodicity periodicity() const { return periodicity_; }
  const Lattice& lattice() const { return lattice_; }
  const std::vector<Point3>& points() const { return points_; }
  double scale() const { return scale_; }
  std::size_t size() const { return points_.size(); }

  Point3 position(const VertexRef& r) const;

 private:
  Periodicity periodicity_;
  Lattice lattice_;
  std::vector<Point3> points_;
  double scale_;
};

// Canonical form of one tetrahedron: offsets shifted so the lexicographically
// smallest offset is zero, vertex references sorted, then the last two swapped
// if needed for positive orientation.
TetRef canonical_tet(const PeriodicPointSet& points, TetRef t);

class TetMesh {
 public:
  // Canonicalizes every tetrahedron, sorts the list, and validates: reference
  // indices in range, zero offsets along non-periodic directions, no
  // degenerate and no duplicate tetrahedra.
  TetMesh(PeriodicPointSet points, std::vector<TetRef> tets);

  const PeriodicPointSet& points() const { return points_; }
  const std::vector<TetRef>& tets() const { return tets_; }
  std::size_t size() const { return tets_.size(); }

  Point3 position(const VertexRef& r) const { return points_.position(r); }
  Tetrahedron tetrahedron(std::size_t i) const;

 private:
  PeriodicPointSet points_;
  std::vector<TetRef> tets_;
};

// Translation-invariant key of an edge orbit.
struct EdgeKey {
  std::int32_t v1 = 0;
  std::int32_t v2 = 0;
  std::array<std::int32_t, 3> doff = {0, 0, 0};

  friend constexpr auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

EdgeKey edge_key(const VertexRef& a, const VertexRef& b);

// Translation-invariant key of a facet orbit.
struct FacetKey {
  std::array<VertexRef, 3> v;

  friend constexpr auto operator<=>(const FacetKey&, const FacetKey&) = default;
};

FacetKey facet_key(const VertexRef& a, const VertexRef& b, const VertexRef& c);

// Replicates a periodic mesh over periods[0] x periods[1] x periods[2] copies
// of its cell, producing a mesh on the enlarged lattice. Periods along
// non-periodic directions must be 1.
TetMesh tile_mesh(const TetMesh& mesh, const std::array<int, 3>& periods);

}  // namespace acutile
