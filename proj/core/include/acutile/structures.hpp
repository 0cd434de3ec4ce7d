#pragma once

#include "acutile/mesh.hpp"

namespace acutile {

// Starts from a body-centered cubic point set, takes its tetrahedral cell
// decomposition, two-colors the cells by facet adjacency, and returns the
// seed points together with the circumcenters of one color class. The result
// is the A15 arrangement in a side-4 cubic cell (8 points).
PeriodicPointSet a15_from_bcc();

// The C15 Laves arrangement in a side-8 cubic cell: a diamond sublattice of 8
// points plus a 16-point sublattice.
PeriodicPointSet c15_point_set();

// A columnar arrangement whose cells stack icosahedral coordination shells
// along z; 12 points per cell on a centered rectangular planar lattice.
PeriodicPointSet icosahedral_z_point_set();

}  // namespace acutile
