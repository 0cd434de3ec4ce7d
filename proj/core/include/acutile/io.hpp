#pragma once

#include <iosfwd>
#include <string>

#include "acutile/mesh.hpp"

namespace acutile {

enum class MeshFormat {
  kJson,   // native, lossless: grid coordinates, lattice, periodicity
  kVtk,    // legacy ASCII unstructured grid, user coordinates, one cell copy
  kMedit,  // .mesh ASCII, user coordinates, one cell copy
};

// Native serialization. Deterministic: the same mesh always produces the same
// bytes, and write/read/write is byte-identical.
std::string mesh_to_json(const TetMesh& mesh);
TetMesh mesh_from_json(const std::string& text);

void write_mesh(const TetMesh& mesh, MeshFormat format, std::ostream& out);
void write_mesh_file(const TetMesh& mesh, MeshFormat format,
                     const std::string& path);

// Reads a mesh, sniffing the format from the content. Foreign formats carry
// plain coordinates only, so they come back as finite meshes with vertices
// snapped to the grid at the given scale; the native format restores the mesh
// exactly and ignores the scale argument.
TetMesh read_mesh(std::istream& in, double scale = kDefaultScale);
TetMesh read_mesh_file(const std::string& path, double scale = kDefaultScale);

}  // namespace acutile
