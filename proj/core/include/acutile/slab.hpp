#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "acutile/mesh.hpp"

namespace acutile {

// Parameters for the slab construction. The slab occupies 0 <= z <= height
// and is periodic in the two planar directions; nx and ny replicate the
// fundamental cell before wrapping, which scales the planar period without
// changing the tiling.
struct SlabSpec {
  double height = 14.2;
  int nx = 1;
  int ny = 1;
};

// Builds the acute tetrahedral tiling of the slab. The mesh is periodic in
// x and y (Periodicity::kSlab); the third lattice row stores (0, 0, t) where
// t is the slab thickness in grid units. 56 tetrahedra per fundamental cell.
TetMesh slab_tiling(const SlabSpec& spec);

// Counts the slab's tetrahedra by the multiset of internal height layers
// their vertices occupy (e.g. "0-0-0-40"). Throws std::invalid_argument if
// the mesh is not a slab tiling produced by slab_tiling, at any height.
struct SlabLayerReport {
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;
};
SlabLayerReport slab_layer_report(const TetMesh& mesh);

}  // namespace acutile
