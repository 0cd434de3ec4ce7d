#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "acutile/geom.hpp"
#include "acutile/mesh.hpp"

namespace acutile {

struct CheckResult {
  bool passed = false;
  std::string detail;

  explicit operator bool() const { return passed; }
};

// Verifies that the mesh is a face-to-face tiling: every facet orbit is
// shared by exactly two tetrahedra (for a slab, facets lying entirely in the
// bottom or top plane may instead be one-sided), and the tetrahedra cover the
// fundamental cell exactly once by exact volume. Finite meshes skip the
// volume identity and allow one-sided facets anywhere.
CheckResult check_tiling(const TetMesh& mesh);

// Verifies that every tetrahedron is acute, deciding each dihedral by exact
// sign. The detail line reports the extreme dihedral found.
CheckResult check_acute_all(const TetMesh& mesh);

// Edge valence statistics of a fully periodic mesh.
struct ValenceReport {
  std::map<int, std::size_t> histogram;  // valence -> edge orbit count
  std::size_t edge_orbits = 0;
  double average = 0.0;
};
ValenceReport valence_report(const TetMesh& mesh);

// Structural test for the lifted square-triangle arrangements: every edge
// valence is 5 or 6 and no facet carries two or more valence-6 edges. Only
// meaningful for fully periodic meshes; throws std::invalid_argument
// otherwise.
CheckResult tcp_check(const TetMesh& mesh);

// Around every interior edge the dihedral angles sum to a full turn, so the
// incidence-weighted mean dihedral times the mean valence equals 360 degrees
// for any fully periodic tiling.
struct ValenceAngleIdentity {
  double average_dihedral_degrees = 0.0;
  double average_valence = 0.0;
  double product = 0.0;
};
ValenceAngleIdentity valence_angle_identity(const TetMesh& mesh);

// Mean valence attained when every dihedral equals the regular tetrahedron's:
// 360 / arccos(1/3), about 5.1043.
double ideal_average_valence();

// Aggregate shape statistics: the range over tetrahedra of the
// circumradius-to-shortest-edge ratio, of the per-tetrahedron smallest
// dihedral, and of the per-tetrahedron largest dihedral, in degrees.
struct QualityReport {
  std::size_t count = 0;
  double radius_edge_min = 0.0;
  double radius_edge_max = 0.0;
  double min_dihedral_min = 0.0;
  double min_dihedral_max = 0.0;
  double max_dihedral_min = 0.0;
  double max_dihedral_max = 0.0;
};
QualityReport quality_report(const TetMesh& mesh);
QualityReport quality_report(const std::vector<Tetrahedron>& tets);

// Certifies the empty-ball property: no point of the set (including periodic
// images) lies strictly inside any tetrahedron's circumball, by exact
// arithmetic.
CheckResult delaunay_empty_sphere_check(const TetMesh& mesh);

}  // namespace acutile
