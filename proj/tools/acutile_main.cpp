#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "acutile/delaunay.hpp"
#include "acutile/io.hpp"
#include "acutile/mesh.hpp"
#include "acutile/shapes.hpp"
#include "acutile/slab.hpp"
#include "acutile/structures.hpp"
#include "acutile/tilings.hpp"
#include "acutile/validate.hpp"

namespace {

using namespace acutile;

double round_half_up(double value, int decimals) {
  const double factor = std::pow(10.0, decimals);
  return std::floor(value * factor + 0.5) / factor;
}

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, round_half_up(value, decimals));
  return buf;
}

TetMesh auto_periodic_delaunay(const PeriodicPointSet& pps) {
  for (int shells = 1;; ++shells) {
    try {
      return periodic_delaunay(pps, shells);
    } catch (const std::runtime_error&) {
      if (shells >= 4) throw;
    }
  }
}

const std::vector<std::string>& structure_names() {
  static const std::vector<std::string> names = {
      "z-triangle", "a15-square", "sigma",      "h",         "c15",
      "a15-bcc",    "z-icosahedral", "slab",    "five-point", "acute-pair"};
  return names;
}

TetMesh make_structure(const std::string& name, const std::array<int, 3>& periods,
                       double slab_height) {
  const auto tiled = [&periods](TetMesh mesh) {
    if (periods == std::array<int, 3>{1, 1, 1}) return mesh;
    return tile_mesh(mesh, periods);
  };
  const auto from_tiling = [&](const char* tiling_name) {
    return tiled(auto_periodic_delaunay(tcp_point_set(builtin_tiling(tiling_name))));
  };
  if (name == "z-triangle") return from_tiling("Z");
  if (name == "a15-square") return from_tiling("A15");
  if (name == "sigma") return from_tiling("sigma");
  if (name == "h") return from_tiling("H");
  if (name == "c15") return tiled(auto_periodic_delaunay(c15_point_set()));
  if (name == "a15-bcc") return tiled(auto_periodic_delaunay(a15_from_bcc()));
  if (name == "z-icosahedral") {
    return tiled(auto_periodic_delaunay(icosahedral_z_point_set()));
  }
  if (name == "slab") {
    SlabSpec spec;
    spec.height = slab_height;
    spec.nx = periods[0];
    spec.ny = periods[1];
    if (periods[2] != 1) {
      throw std::invalid_argument("the slab is not periodic in z; the third period must be 1");
    }
    return slab_tiling(spec);
  }
  if (name == "five-point" || name == "acute-pair") {
    TetMesh mesh = delaunay(five_point_configuration(), kFivePointScale);
    if (periods != std::array<int, 3>{1, 1, 1}) {
      throw std::invalid_argument("finite structures take no periods");
    }
    if (name == "five-point") return mesh;
    return flip_3to2(mesh, VertexRef{0, {0, 0, 0}}, VertexRef{4, {0, 0, 0}});
  }
  std::string known;
  for (const auto& n : structure_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown structure \"" + name + "\" (known: " + known + ")");
}

int run_generate(const std::string& structure, const std::array<int, 3>& periods,
                 double slab_height, const std::string& format_name,
                 const std::string& out_path) {
  MeshFormat format = MeshFormat::kJson;
  if (format_name == "json") {
    format = MeshFormat::kJson;
  } else if (format_name == "vtk") {
    format = MeshFormat::kVtk;
  } else if (format_name == "medit") {
    format = MeshFormat::kMedit;
  } else {
    throw std::invalid_argument("unknown format \"" + format_name + "\"");
  }
  const TetMesh mesh = make_structure(structure, periods, slab_height);
  write_mesh_file(mesh, format, out_path);
  std::cout << structure << ": " << mesh.size() << " tetrahedra, "
            << mesh.points().size() << " points -> " << out_path << "\n";
  return 0;
}

int run_validate(const std::string& path, const std::string& checks_arg,
                 double scale) {
  const TetMesh mesh = read_mesh_file(path, scale);
  std::vector<std::string> checks;
  std::stringstream ss(checks_arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) checks.push_back(item);
  }
  if (checks.empty()) throw std::invalid_argument("no checks requested");
  bool all_passed = true;
  for (const std::string& name : checks) {
    CheckResult result;
    if (name == "acute") {
      result = check_acute_all(mesh);
    } else if (name == "tiling") {
      result = check_tiling(mesh);
    } else if (name == "tcp") {
      result = tcp_check(mesh);
    } else if (name == "delaunay") {
      result = delaunay_empty_sphere_check(mesh);
    } else {
      throw std::invalid_argument("unknown check \"" + name +
                                  "\" (known: acute, tiling, tcp, delaunay)");
    }
    std::cout << (result.passed ? "PASS" : "FAIL") << ' ' << name << ": "
              << result.detail << "\n";
    all_passed = all_passed && result.passed;
  }
  return all_passed ? 0 : 1;
}

std::string quality_json(const QualityReport& q) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "{\"tets\":%zu,\"radius_edge_min\":%.6f,\"radius_edge_max\":%.6f,"
                "\"min_dihedral_min\":%.6f,\"min_dihedral_max\":%.6f,"
                "\"max_dihedral_min\":%.6f,\"max_dihedral_max\":%.6f}",
                q.count, q.radius_edge_min, q.radius_edge_max, q.min_dihedral_min,
                q.min_dihedral_max, q.max_dihedral_min, q.max_dihedral_max);
  return buf;
}

void print_quality_text(const QualityReport& q, std::ostream& out) {
  out << "tetrahedra:        " << q.count << "\n";
  out << "radius/edge:       " << fixed(q.radius_edge_min, 3) << " .. "
      << fixed(q.radius_edge_max, 3) << "\n";
  out << "smallest dihedral: " << fixed(q.min_dihedral_min, 2) << " .. "
      << fixed(q.min_dihedral_max, 2) << " deg\n";
  out << "largest dihedral:  " << fixed(q.max_dihedral_min, 2) << " .. "
      << fixed(q.max_dihedral_max, 2) << " deg\n";
}

int run_quality(const std::string& path, bool as_json, double scale) {
  const TetMesh mesh = read_mesh_file(path, scale);
  const QualityReport q = quality_report(mesh);
  if (as_json) {
    std::cout << quality_json(q) << "\n";
  } else {
    print_quality_text(q, std::cout);
  }
  return 0;
}

struct TableRow {
  std::string name;
  std::function<QualityReport()> build;
  std::array<double, 6> reference;
};

std::vector<TableRow> reference_table() {
  const auto mesh_row = [](const char* structure) {
    const std::string name = structure;
    return [name]() {
      return quality_report(make_structure(name, {1, 1, 1}, 14.2));
    };
  };
  const auto shape_row = [](std::vector<std::string> shapes) {
    return [shapes]() {
      std::vector<Tetrahedron> tets;
      for (const auto& s : shapes) tets.push_back(reference_tetrahedron(s));
      return quality_report(tets);
    };
  };
  return {
      {"tcp-z-triangle", mesh_row("z-triangle"), {0.651, 0.737, 53.13, 67.37, 73.89, 77.07}},
      {"tcp-a15-square", mesh_row("a15-square"), {0.645, 0.707, 53.13, 67.79, 73.39, 78.46}},
      {"tcp-sigma", mesh_row("sigma"), {0.645, 0.737, 53.13, 67.79, 73.39, 78.46}},
      {"tcp-c15", mesh_row("c15"), {0.612, 0.711, 60.0, 70.52, 70.52, 74.20}},
      {"tcp-z-icosahedral", mesh_row("z-icosahedral"), {0.629, 1.000, 41.81, 69.09, 71.99, 83.62}},
      {"slab", mesh_row("slab"), {0.636, 0.938, 46.83, 67.88, 74.39, 87.70}},
      {"sommerville-i", shape_row({"Sommerville I"}), {1.118, 1.118, 45.0, 45.0, 90.0, 90.0}},
      {"sommerville-ii", shape_row({"Sommerville II"}), {0.645, 0.645, 60.0, 60.0, 90.0, 90.0}},
      {"sommerville-iii", shape_row({"Sommerville III"}), {0.866, 0.866, 45.0, 45.0, 120.0, 120.0}},
      {"sommerville-iv", shape_row({"Sommerville IV"}), {1.581, 1.581, 30.0, 30.0, 131.81, 131.81}},
      {"cube-5", shape_row({"cube5-center", "cube5-corner"}), {0.612, 0.866, 54.73, 70.53, 70.53, 90.0}},
      {"cube-6", shape_row({"cube6"}), {0.866, 0.866, 45.0, 45.0, 90.0, 90.0}},
      {"regular", shape_row({"regular"}), {0.612, 0.612, 70.53, 70.53, 70.53, 70.53}},
      {"cube-corner", shape_row({"cube-corner"}), {0.866, 0.866, 54.73, 54.73, 90.0, 90.0}},
  };
}

const std::array<const char*, 6> kColumnNames = {
    "radius_edge_min",  "radius_edge_max",  "min_dihedral_min",
    "min_dihedral_max", "max_dihedral_min", "max_dihedral_max"};

std::array<double, 6> quality_values(const QualityReport& q) {
  return {q.radius_edge_min,  q.radius_edge_max,  q.min_dihedral_min,
          q.min_dihedral_max, q.max_dihedral_min, q.max_dihedral_max};
}

int run_table1(bool as_json) {
  bool all_ok = true;
  std::ostringstream out;
  std::ostringstream json;
  json << "{\"rows\":[";
  if (!as_json) {
    out << "row                 tets   r/e min  r/e max  min dih lo  min dih hi  max dih lo  max dih hi\n";
  }
  bool first_row = true;
  for (const TableRow& row : reference_table()) {
    const QualityReport q = row.build();
    const std::array<double, 6> computed = quality_values(q);
    std::vector<std::string> failures;
    for (std::size_t c = 0; c < 6; ++c) {
      const double tolerance = c < 2 ? 0.002 : 0.02;
      if (std::abs(computed[c] - row.reference[c]) > tolerance) {
        failures.push_back(kColumnNames[c]);
      }
    }
    all_ok = all_ok && failures.empty();

    if (as_json) {
      if (!first_row) json << ',';
      json << "{\"name\":\"" << row.name << "\",\"tets\":" << q.count
           << ",\"computed\":[";
      for (std::size_t c = 0; c < 6; ++c) {
        if (c > 0) json << ',';
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", computed[c]);
        json << buf;
      }
      json << "],\"reference\":[";
      for (std::size_t c = 0; c < 6; ++c) {
        if (c > 0) json << ',';
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", row.reference[c]);
        json << buf;
      }
      json << "],\"failures\":[";
      for (std::size_t f = 0; f < failures.size(); ++f) {
        if (f > 0) json << ',';
        json << '"' << failures[f] << '"';
      }
      json << "]}";
    } else {
      char line[256];
      std::snprintf(line, sizeof line, "%-19s %5zu  %7s  %7s  %10s  %10s  %10s  %10s",
                    row.name.c_str(), q.count, fixed(computed[0], 3).c_str(),
                    fixed(computed[1], 3).c_str(), fixed(computed[2], 2).c_str(),
                    fixed(computed[3], 2).c_str(), fixed(computed[4], 2).c_str(),
                    fixed(computed[5], 2).c_str());
      out << line;
      if (!failures.empty()) {
        out << "  DEVIATES(";
        for (std::size_t f = 0; f < failures.size(); ++f) {
          if (f > 0) out << ',';
          out << failures[f];
        }
        out << ")";
      }
      out << "\n";
    }
    first_row = false;
  }
  if (as_json) {
    json << "],\"passed\":" << (all_ok ? "true" : "false") << "}";
    std::cout << json.str() << "\n";
  } else {
    out << (all_ok ? "all rows within tolerance\n"
                   : "some cells deviate from the reference values\n");
    std::cout << out.str();
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acute tetrahedral tilings: construction, validation, quality"};
  app.require_subcommand(1);

  std::string structure;
  std::array<int, 3> periods = {1, 1, 1};
  double slab_height = 14.2;
  std::string format_name = "json";
  std::string out_path;
  CLI::App* generate = app.add_subcommand("generate", "build a structure and write it");
  generate->add_option("--structure", structure, "structure name")->required();
  generate->add_option("--periods", periods, "cell repetitions along the lattice")
      ->delimiter(',');
  generate->add_option("--slab-height", slab_height, "slab thickness in user units");
  generate->add_option("--format", format_name, "json, vtk, or medit");
  generate->add_option("--out", out_path, "output path")->required();

  std::string mesh_path;
  std::string checks = "acute,tiling";
  double scale = kDefaultScale;
  CLI::App* validate = app.add_subcommand("validate", "run checks on a mesh file");
  validate->add_option("path", mesh_path, "mesh file")->required();
  validate->add_option("--checks", checks, "comma list: acute, tiling, tcp, delaunay");
  validate->add_option("--scale", scale, "grid scale for foreign formats");

  std::string quality_path;
  bool quality_json_flag = false;
  double quality_scale = kDefaultScale;
  CLI::App* quality = app.add_subcommand("quality", "shape statistics of a mesh file");
  quality->add_option("path", quality_path, "mesh file")->required();
  quality->add_flag("--json", quality_json_flag, "machine readable output");
  quality->add_option("--scale", quality_scale, "grid scale for foreign formats");

  bool table_json_flag = false;
  CLI::App* table = app.add_subcommand("table1", "all built-in constructions against their reference quality values");
  table->add_flag("--json", table_json_flag, "machine readable output");

  int rc = 0;
  generate->callback([&] {
    rc = run_generate(structure, periods, slab_height, format_name, out_path);
  });
  validate->callback([&] { rc = run_validate(mesh_path, checks, scale); });
  quality->callback([&] { rc = run_quality(quality_path, quality_json_flag, quality_scale); });
  table->callback([&] { rc = run_table1(table_json_flag); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
