#pragma once

#include <vector>

#include "acutile/mesh.hpp"

namespace acutile {

// Delaunay tetrahedralization of a finite point set. Ties are broken by a
// symbolic perturbation, so the result is unique and deterministic for a given
// input order. Duplicate points are merged with a warning on stderr. Throws
// std::invalid_argument when fewer than four affinely independent points
// remain.
TetMesh delaunay(const std::vector<Point3>& points, double scale = kDefaultScale);

// Delaunay tetrahedralization of a periodic point set, one tetrahedron orbit
// per lattice class. Computed by triangulating a patch of (2 * shells + 1)
// translates per periodic direction and keeping the tetrahedra whose
// circumcenter falls in the home cell. Throws std::runtime_error when a kept
// circumball reaches beyond the patch; rerun with a larger shells value.
TetMesh periodic_delaunay(const PeriodicPointSet& points, int shells = 1);

// Replaces the three tetrahedra around edge (a, b) by two tetrahedra over the
// triangle of their remaining vertices. Throws std::invalid_argument unless
// exactly three tetrahedra share that edge and their union is a convex
// bipyramid.
TetMesh flip_3to2(const TetMesh& mesh, const VertexRef& a, const VertexRef& b);

}  // namespace acutile
