#include "acutile/io.hpp"

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "acutile/geom.hpp"

namespace acutile {

namespace {

const char* periodicity_name(Periodicity p) {
  switch (p) {
    case Periodicity::kNone:
      return "none";
    case Periodicity::kSlab:
      return "slab";
    case Periodicity::kFull:
      return "full";
  }
  throw std::logic_error("unknown periodicity");
}

Periodicity periodicity_from_name(const std::string& name) {
  if (name == "none") return Periodicity::kNone;
  if (name == "slab") return Periodicity::kSlab;
  if (name == "full") return Periodicity::kFull;
  throw std::invalid_argument("mesh_from_json: unknown periodicity \"" + name + "\"");
}

std::string shortest_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_vtk(const TetMesh& mesh, std::ostream& out) {
  std::map<VertexRef, std::size_t> index;
  std::vector<VertexRef> order;
  for (const TetRef& t : mesh.tets()) {
    for (const VertexRef& r : t.v) {
      if (index.emplace(r, order.size()).second) order.push_back(r);
    }
  }
  const double scale = mesh.points().scale();
  out << "# vtk DataFile Version 3.0\n";
  out << "tetrahedral mesh\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << order.size() << " double\n";
  for (const VertexRef& r : order) {
    const Point3 p = mesh.position(r);
    out << shortest_double(static_cast<double>(p.x) * scale) << ' '
        << shortest_double(static_cast<double>(p.y) * scale) << ' '
        << shortest_double(static_cast<double>(p.z) * scale) << '\n';
  }
  out << "CELLS " << mesh.size() << ' ' << 5 * mesh.size() << '\n';
  for (const TetRef& t : mesh.tets()) {
    out << 4;
    for (const VertexRef& r : t.v) out << ' ' << index.at(r);
    out << '\n';
  }
  out << "CELL_TYPES " << mesh.size() << '\n';
  for (std::size_t i = 0; i < mesh.size(); ++i) out << "10\n";
}

void write_medit(const TetMesh& mesh, std::ostream& out) {
  std::map<VertexRef, std::size_t> index;
  std::vector<VertexRef> order;
  for (const TetRef& t : mesh.tets()) {
    for (const VertexRef& r : t.v) {
      if (index.emplace(r, order.size()).second) order.push_back(r);
    }
  }
  const double scale = mesh.points().scale();
  out << "MeshVersionFormatted 2\n";
  out << "Dimension 3\n";
  out << "Vertices\n" << order.size() << '\n';
  for (const VertexRef& r : order) {
    const Point3 p = mesh.position(r);
    out << shortest_double(static_cast<double>(p.x) * scale) << ' '
        << shortest_double(static_cast<double>(p.y) * scale) << ' '
        << shortest_double(static_cast<double>(p.z) * scale) << " 0\n";
  }
  out << "Tetrahedra\n" << mesh.size() << '\n';
  for (const TetRef& t : mesh.tets()) {
    for (const VertexRef& r : t.v) out << index.at(r) + 1 << ' ';
    out << "0\n";
  }
  out << "End\n";
}

TetMesh finite_mesh(const std::vector<std::array<double, 3>>& coords,
                    const std::vector<std::array<std::size_t, 4>>& cells,
                    double scale) {
  std::vector<Point3> points;
  points.reserve(coords.size());
  for (const auto& c : coords) points.push_back(snap_point(c, scale));
  PeriodicPointSet pps(Periodicity::kNone, Lattice{}, points, scale);
  std::vector<TetRef> tets;
  tets.reserve(cells.size());
  for (const auto& cell : cells) {
    TetRef t;
    for (std::size_t i = 0; i < 4; ++i) {
      if (cell[i] >= coords.size()) {
        throw std::invalid_argument("mesh import: vertex index out of range");
      }
      t.v[i].v = static_cast<std::int32_t>(cell[i]);
    }
    tets.push_back(t);
  }
  return TetMesh(std::move(pps), std::move(tets));
}

TetMesh read_vtk(const std::string& text, double scale) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# vtk", 0) != 0) {
    throw std::invalid_argument("vtk import: missing header");
  }
  std::getline(in, line);  // title, ignored
  std::string token;
  if (!(in >> token) || token != "ASCII") {
    throw std::invalid_argument("vtk import: only ASCII files are supported");
  }
  if (!(in >> token) || token != "DATASET" || !(in >> token) ||
      token != "UNSTRUCTURED_GRID") {
    throw std::invalid_argument("vtk import: expected an unstructured grid");
  }
  std::vector<std::array<double, 3>> coords;
  std::vector<std::array<std::size_t, 4>> cells;
  while (in >> token) {
    if (token == "POINTS") {
      std::size_t n = 0;
      std::string type;
      if (!(in >> n >> type)) throw std::invalid_argument("vtk import: bad POINTS");
      coords.resize(n);
      for (auto& c : coords) {
        if (!(in >> c[0] >> c[1] >> c[2])) {
          throw std::invalid_argument("vtk import: truncated POINTS");
        }
      }
    } else if (token == "CELLS") {
      std::size_t n = 0;
      std::size_t total = 0;
      if (!(in >> n >> total)) throw std::invalid_argument("vtk import: bad CELLS");
      cells.resize(n);
      for (auto& cell : cells) {
        std::size_t arity = 0;
        if (!(in >> arity) || arity != 4) {
          throw std::invalid_argument("vtk import: only tetrahedral cells are supported");
        }
        if (!(in >> cell[0] >> cell[1] >> cell[2] >> cell[3])) {
          throw std::invalid_argument("vtk import: truncated CELLS");
        }
      }
    } else if (token == "CELL_TYPES") {
      std::size_t n = 0;
      if (!(in >> n)) throw std::invalid_argument("vtk import: bad CELL_TYPES");
      for (std::size_t i = 0; i < n; ++i) {
        int type = 0;
        if (!(in >> type) || type != 10) {
          throw std::invalid_argument("vtk import: only tetrahedral cells are supported");
        }
      }
    } else {
      throw std::invalid_argument("vtk import: unsupported section \"" + token + "\"");
    }
  }
  return finite_mesh(coords, cells, scale);
}

TetMesh read_medit(const std::string& text, double scale) {
  std::istringstream in(text);
  std::string token;
  std::vector<std::array<double, 3>> coords;
  std::vector<std::array<std::size_t, 4>> cells;
  while (in >> token) {
    if (token == "MeshVersionFormatted" || token == "Dimension") {
      int value = 0;
      if (!(in >> value)) throw std::invalid_argument("medit import: bad " + token);
      if (token == "Dimension" && value != 3) {
        throw std::invalid_argument("medit import: only dimension 3 is supported");
      }
    } else if (token == "Vertices") {
      std::size_t n = 0;
      if (!(in >> n)) throw std::invalid_argument("medit import: bad Vertices");
      coords.resize(n);
      for (auto& c : coords) {
        int ref = 0;
        if (!(in >> c[0] >> c[1] >> c[2] >> ref)) {
          throw std::invalid_argument("medit import: truncated Vertices");
        }
      }
    } else if (token == "Tetrahedra") {
      std::size_t n = 0;
      if (!(in >> n)) throw std::invalid_argument("medit import: bad Tetrahedra");
      cells.resize(n);
      for (auto& cell : cells) {
        int ref = 0;
        if (!(in >> cell[0] >> cell[1] >> cell[2] >> cell[3] >> ref)) {
          throw std::invalid_argument("medit import: truncated Tetrahedra");
        }
        for (auto& v : cell) {
          if (v == 0) throw std::invalid_argument("medit import: indices are 1-based");
          v -= 1;
        }
      }
    } else if (token == "End") {
      break;
    } else {
      throw std::invalid_argument("medit import: unsupported section \"" + token + "\"");
    }
  }
  return finite_mesh(coords, cells, scale);
}

}  // namespace

std::string mesh_to_json(const TetMesh& mesh) {
  const PeriodicPointSet& pps = mesh.points();
  std::string out;
  out += "{\"format\":\"acutile-mesh-1\",\"periodicity\":\"";
  out += periodicity_name(pps.periodicity());
  out += "\",\"scale\":";
  out += shortest_double(pps.scale());
  out += ",\"basis\":[";
  for (std::size_t i = 0; i < 3; ++i) {
    const Point3& b = pps.lattice().basis[i];
    if (i > 0) out += ',';
    out += '[';
    out += std::to_string(b.x);
    out += ',';
    out += std::to_string(b.y);
    out += ',';
    out += std::to_string(b.z);
    out += ']';
  }
  out += "],\"points\":[";
  for (std::size_t i = 0; i < pps.size(); ++i) {
    const Point3& p = pps.points()[i];
    if (i > 0) out += ',';
    out += '[';
    out += std::to_string(p.x);
    out += ',';
    out += std::to_string(p.y);
    out += ',';
    out += std::to_string(p.z);
    out += ']';
  }
  out += "],\"tets\":[";
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const TetRef& t = mesh.tets()[i];
    if (i > 0) out += ',';
    out += '[';
    for (std::size_t c = 0; c < 4; ++c) {
      if (c > 0) out += ',';
      out += '[';
      out += std::to_string(t.v[c].v);
      for (const std::int32_t o : t.v[c].off) {
        out += ',';
        out += std::to_string(o);
      }
      out += ']';
    }
    out += ']';
  }
  out += "]}";
  return out;
}

TetMesh mesh_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("mesh_from_json: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "acutile-mesh-1") {
    throw std::invalid_argument("mesh_from_json: not an acutile-mesh-1 document");
  }
  const Periodicity periodicity =
      periodicity_from_name(j.at("periodicity").get<std::string>());
  const double scale = j.at("scale").get<double>();
  Lattice lattice;
  const auto& basis = j.at("basis");
  if (!basis.is_array() || basis.size() != 3) {
    throw std::invalid_argument("mesh_from_json: basis must have three rows");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& row = basis[i];
    if (!row.is_array() || row.size() != 3) {
      throw std::invalid_argument("mesh_from_json: basis rows must have three entries");
    }
    lattice.basis[i] = Point3{row[0].get<std::int64_t>(), row[1].get<std::int64_t>(),
                              row[2].get<std::int64_t>()};
  }
  std::vector<Point3> points;
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() != 3) {
      throw std::invalid_argument("mesh_from_json: points must have three entries");
    }
    points.push_back(Point3{p[0].get<std::int64_t>(), p[1].get<std::int64_t>(),
                            p[2].get<std::int64_t>()});
  }
  std::vector<TetRef> tets;
  for (const auto& t : j.at("tets")) {
    if (!t.is_array() || t.size() != 4) {
      throw std::invalid_argument("mesh_from_json: tets must have four vertices");
    }
    TetRef ref;
    for (std::size_t c = 0; c < 4; ++c) {
      const auto& v = t[c];
      if (!v.is_array() || v.size() != 4) {
        throw std::invalid_argument("mesh_from_json: vertex entries must be [v,o,o,o]");
      }
      ref.v[c].v = v[0].get<std::int32_t>();
      for (std::size_t o = 0; o < 3; ++o) {
        ref.v[c].off[o] = v[o + 1].get<std::int32_t>();
      }
    }
    tets.push_back(ref);
  }
  PeriodicPointSet pps(periodicity, lattice, std::move(points), scale);
  return TetMesh(std::move(pps), std::move(tets));
}

void write_mesh(const TetMesh& mesh, MeshFormat format, std::ostream& out) {
  switch (format) {
    case MeshFormat::kJson:
      out << mesh_to_json(mesh) << '\n';
      return;
    case MeshFormat::kVtk:
      write_vtk(mesh, out);
      return;
    case MeshFormat::kMedit:
      write_medit(mesh, out);
      return;
  }
  throw std::logic_error("unknown mesh format");
}

void write_mesh_file(const TetMesh& mesh, MeshFormat format,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open \"" + path + "\" for writing");
  write_mesh(mesh, format, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing \"" + path + "\"");
}

TetMesh read_mesh(std::istream& in, double scale) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) {
    throw std::invalid_argument("mesh import: empty input");
  }
  if (text[first] == '{') return mesh_from_json(text);
  if (text.compare(first, 5, "# vtk") == 0) return read_vtk(text.substr(first), scale);
  if (text.compare(first, 20, "MeshVersionFormatted") == 0) {
    return read_medit(text.substr(first), scale);
  }
  throw std::invalid_argument("mesh import: unrecognized format");
}

TetMesh read_mesh_file(const std::string& path, double scale) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open \"" + path + "\"");
  return read_mesh(in, scale);
}

}  // namespace acutile
