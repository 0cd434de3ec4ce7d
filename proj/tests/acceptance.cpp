// Exercises the binary acceptance gates end to end and prints one line per
// criterion. Exit status is the number of failed criteria.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "acutile/delaunay.hpp"
#include "acutile/geom.hpp"
#include "acutile/io.hpp"
#include "acutile/shapes.hpp"
#include "acutile/validate.hpp"
#include "test_support.hpp"

using namespace acutile;
using acutile::testing::build_structure;
using acutile::testing::seeded_rng;

namespace {

struct Criterion {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool condition, const std::string& on_failure) {
    if (!condition) {
      ok = false;
      notes.push_back(on_failure);
    }
  }
  void note(const std::string& text) { notes.push_back(text); }
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

std::string format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

const std::array<const char*, 9> kStructureNames = {
    "z-triangle", "a15-square", "sigma",      "h",         "a15-bcc",
    "c15",        "z-icosahedral", "slab",    "five-point"};

const std::array<const char*, 6> kTcpNames = {"z-triangle", "a15-square", "sigma",
                                              "h",          "c15", "z-icosahedral"};

const std::array<const char*, 7> kFullyPeriodicNames = {
    "z-triangle", "a15-square", "sigma", "h", "a15-bcc", "c15", "z-icosahedral"};

struct TableRow {
  std::string name;
  std::vector<std::string> shapes;  // empty: quality of the mesh by this name
  std::array<double, 6> reference;
};

const std::array<const char*, 6> kColumnNames = {
    "radius_edge_min",  "radius_edge_max",  "min_dihedral_min",
    "min_dihedral_max", "max_dihedral_min", "max_dihedral_max"};

std::vector<TableRow> reference_table() {
  return {
      {"tcp-z-triangle", {}, {0.651, 0.737, 53.13, 67.37, 73.89, 77.07}},
      {"tcp-a15-square", {}, {0.645, 0.707, 53.13, 67.79, 73.39, 78.46}},
      {"tcp-sigma", {}, {0.645, 0.737, 53.13, 67.79, 73.39, 78.46}},
      {"tcp-c15", {}, {0.612, 0.711, 60.0, 70.52, 70.52, 74.20}},
      {"tcp-z-icosahedral", {}, {0.629, 1.000, 41.81, 69.09, 71.99, 83.62}},
      {"slab", {}, {0.636, 0.938, 46.83, 67.88, 74.39, 87.70}},
      {"sommerville-i", {"Sommerville I"}, {1.118, 1.118, 45.0, 45.0, 90.0, 90.0}},
      {"sommerville-ii", {"Sommerville II"}, {0.645, 0.645, 60.0, 60.0, 90.0, 90.0}},
      {"sommerville-iii", {"Sommerville III"}, {0.866, 0.866, 45.0, 45.0, 120.0, 120.0}},
      {"sommerville-iv", {"Sommerville IV"}, {1.581, 1.581, 30.0, 30.0, 131.81, 131.81}},
      {"cube-5", {"cube5-center", "cube5-corner"}, {0.612, 0.866, 54.73, 70.53, 70.53, 90.0}},
      {"cube-6", {"cube6"}, {0.866, 0.866, 45.0, 45.0, 90.0, 90.0}},
      {"regular", {"regular"}, {0.612, 0.612, 70.53, 70.53, 70.53, 70.53}},
      {"cube-corner", {"cube-corner"}, {0.866, 0.866, 54.73, 54.73, 90.0, 90.0}},
  };
}

std::string mesh_name_of_row(const std::string& row_name) {
  if (row_name.rfind("tcp-", 0) == 0) return row_name.substr(4);
  return row_name;
}

std::array<double, 6> quality_values(const QualityReport& q) {
  return {q.radius_edge_min,  q.radius_edge_max,  q.min_dihedral_min,
          q.min_dihedral_max, q.max_dihedral_min, q.max_dihedral_max};
}

Point3 random_point(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> d(lo, hi);
  return {d(rng), d(rng), d(rng)};
}

Tetrahedron random_tetrahedron(std::mt19937_64& rng, std::int64_t range) {
  for (;;) {
    std::array<Point3, 4> v;
    for (Point3& p : v) p = random_point(rng, -range, range);
    try {
      return Tetrahedron(v);
    } catch (const std::invalid_argument&) {
    }
  }
}

int local_edge_index(int i, int j) {
  static constexpr int kIndex[4][4] = {
      {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return kIndex[i][j];
}

std::vector<std::array<std::int32_t, 4>> sorted_cells(const TetMesh& mesh) {
  std::vector<std::array<std::int32_t, 4>> out;
  for (const TetRef& t : mesh.tets()) {
    std::array<std::int32_t, 4> cell{};
    for (std::size_t v = 0; v < 4; ++v) cell[v] = t.v[v].v;
    std::sort(cell.begin(), cell.end());
    out.push_back(cell);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();

  std::map<std::string, TetMesh> meshes;
  for (const char* name : kStructureNames) meshes.emplace(name, build_structure(name));

  std::array<Criterion, 8> criteria;

  // 1. every construction and reference shape matches its published quality
  //    row: ratios within 0.002, angles within 0.02 degrees, under a minute.
  {
    Criterion& c = criteria[0];
    int cells = 0, cells_ok = 0;
    for (const TableRow& row : reference_table()) {
      QualityReport q;
      if (row.shapes.empty()) {
        q = quality_report(meshes.at(mesh_name_of_row(row.name)));
      } else {
        std::vector<Tetrahedron> tets;
        for (const std::string& s : row.shapes) tets.push_back(reference_tetrahedron(s));
        q = quality_report(tets);
      }
      const std::array<double, 6> computed = quality_values(q);
      for (std::size_t col = 0; col < 6; ++col) {
        const double tolerance = col < 2 ? 0.002 : 0.02;
        ++cells;
        if (std::abs(computed[col] - row.reference[col]) <= tolerance) {
          ++cells_ok;
        } else {
          c.require(false, row.name + " " + kColumnNames[col] +
                               format(" computed %.4f vs reference %.4f (tolerance %.3f)",
                                      computed[col], row.reference[col], tolerance));
        }
      }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.note(std::to_string(cells_ok) + "/" + std::to_string(cells) +
           " table cells within tolerance" + format(" in %.1f s", elapsed));
    c.require(elapsed < 60.0, "table regeneration exceeded 60 s");
  }

  // 2. headline bound for the triangle-row structure: certified acute by
  //    exact signs, with every dihedral numerically below 77.08 degrees.
  {
    Criterion& c = criteria[1];
    const TetMesh& z = meshes.at("z-triangle");
    const CheckResult acute = check_acute_all(z);
    c.require(acute.passed, "sign-level acuteness failed: " + acute.detail);
    const QualityReport q = quality_report(z);
    c.require(q.max_dihedral_max < 77.08,
              format("largest dihedral %.4f deg is not below 77.08", q.max_dihedral_max));
    c.note(format("largest dihedral %.4f deg < 77.08", q.max_dihedral_max));
  }

  // 3. each periodic construction is simultaneously a face-to-face tiling and
  //    fully acute; the slab's one-sided facets lie only in its two bounding
  //    planes.
  {
    Criterion& c = criteria[2];
    for (const char* name : kTcpNames) {
      const TetMesh& m = meshes.at(name);
      const CheckResult tiling = check_tiling(m);
      const CheckResult acute = check_acute_all(m);
      c.require(tiling.passed, std::string(name) + " tiling: " + tiling.detail);
      c.require(acute.passed, std::string(name) + " acuteness: " + acute.detail);
    }
    const TetMesh& slab = meshes.at("slab");
    const CheckResult tiling = check_tiling(slab);
    const CheckResult acute = check_acute_all(slab);
    c.require(tiling.passed, std::string("slab tiling: ") + tiling.detail);
    c.require(acute.passed, std::string("slab acuteness: ") + acute.detail);

    std::int64_t top = 0;
    for (const Point3& p : slab.points().points()) top = std::max(top, p.z);
    std::map<FacetKey, int> facet_count;
    for (const TetRef& t : slab.tets()) {
      for (int f = 0; f < 4; ++f) {
        std::array<VertexRef, 3> tri;
        int k = 0;
        for (int v = 0; v < 4; ++v) {
          if (v != f) tri[static_cast<std::size_t>(k++)] = t.v[static_cast<std::size_t>(v)];
        }
        ++facet_count[facet_key(tri[0], tri[1], tri[2])];
      }
    }
    int one_sided = 0, off_plane = 0;
    for (const auto& [key, count] : facet_count) {
      if (count != 1) continue;
      ++one_sided;
      for (const VertexRef& vr : key.v) {
        const std::int64_t z = slab.points().points()[static_cast<std::size_t>(vr.v)].z;
        if (z != 0 && z != top) ++off_plane;
      }
    }
    c.require(one_sided > 0 && off_plane == 0,
              std::to_string(one_sided) + " one-sided slab facet orbits, " +
                  std::to_string(off_plane) + " corners off the bounding planes");
    if (c.ok) {
      c.note("6 periodic structures tile acutely; slab one-sided facets all in "
             "z=0 or z=top (" + std::to_string(one_sided) + " orbits)");
    }
  }

  // 4. the five-point configuration: its Delaunay triangulation is the known
  //    three-cell fan around the long diagonal with 120-degree dihedrals, the
  //    fan is not fully acute, and the inverse bistellar flip returns the
  //    acute two-cell complex that fails the empty-ball certificate.
  {
    Criterion& c = criteria[3];
    const TetMesh& fan = meshes.at("five-point");
    const std::vector<std::array<std::int32_t, 4>> expected_fan = {
        {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4}};
    c.require(sorted_cells(fan) == expected_fan, "fan cells differ from the expected three");
    c.require(delaunay_empty_sphere_check(fan).passed,
              "fan does not certify the empty-ball property");
    for (std::size_t i = 0; i < fan.size(); ++i) {
      int a = -1, e = -1;
      for (int v = 0; v < 4; ++v) {
        if (fan.tets()[i].v[static_cast<std::size_t>(v)].v == 0) a = v;
        if (fan.tets()[i].v[static_cast<std::size_t>(v)].v == 4) e = v;
      }
      c.require(a >= 0 && e >= 0, "fan cell misses the common diagonal");
      const double deg =
          dihedral_angles(fan.tetrahedron(i))
              .angles[static_cast<std::size_t>(local_edge_index(a, e))]
              .degrees;
      c.require(std::abs(deg - 120.0) <= 0.02,
                format("dihedral along the diagonal is %.4f deg, not 120.00", deg));
    }

    const TetMesh pair =
        flip_3to2(fan, VertexRef{0, {0, 0, 0}}, VertexRef{4, {0, 0, 0}});
    const std::vector<std::array<std::int32_t, 4>> expected_pair = {{0, 1, 2, 3},
                                                                     {1, 2, 3, 4}};
    c.require(sorted_cells(pair) == expected_pair, "flip does not return the expected pair");
    c.require(check_acute_all(pair).passed, "flipped pair is not fully acute");
    c.require(!delaunay_empty_sphere_check(pair).passed,
              "flipped pair unexpectedly certifies the empty-ball property");
    if (c.ok) {
      c.note("three-cell fan with 120.00 deg diagonal dihedrals; flip returns the "
             "acute pair, which fails the empty-ball certificate");
    }
  }

  // 5. square-triangle combinatorics: the structural test passes on all six
  //    lifted structures and the mean edge valences land in the known range.
  {
    Criterion& c = criteria[4];
    double lo = 10.0, hi = 0.0;
    for (const char* name : kTcpNames) {
      const TetMesh& m = meshes.at(name);
      const CheckResult tcp = tcp_check(m);
      c.require(tcp.passed, std::string(name) + ": " + tcp.detail);
      const double avg = valence_report(m).average;
      lo = std::min(lo, avg);
      hi = std::max(hi, avg);
      c.require(avg >= 5.1 && avg <= 5.1112,
                std::string(name) + format(" average valence %.6f outside [5.1, 5.1112]", avg));
    }
    const double a15 = valence_report(meshes.at("a15-square")).average;
    const double c15 = valence_report(meshes.at("c15")).average;
    c.require(std::abs(a15 - 5.1111) <= 1e-4,
              format("a15-square average valence %.6f vs 5.1111", a15));
    c.require(std::abs(c15 - 5.1000) <= 1e-4,
              format("c15 average valence %.6f vs 5.1000", c15));
    if (c.ok) c.note(format("average valences span [%.6f, %.6f]", lo, hi));
  }

  // 6. around-an-edge identity: mean dihedral times mean valence is a full
  //    turn on every fully periodic construction, and the ideal mean valence
  //    constant matches 5.1043.
  {
    Criterion& c = criteria[5];
    for (const char* name : kFullyPeriodicNames) {
      const double product = valence_angle_identity(meshes.at(name)).product;
      c.require(std::abs(product - 360.0) <= 1e-6,
                std::string(name) + format(" valence-angle product %.8f vs 360", product));
    }
    const double ideal = ideal_average_valence();
    c.require(std::abs(ideal - 5.1043) <= 1e-4,
              format("ideal average valence %.6f vs 5.1043", ideal));
    if (c.ok) c.note(format("product 360 on 7 structures; ideal valence %.5f", ideal));
  }

  // 7. randomized and structural property sweeps: the three acuteness
  //    criteria agree on 100000 random cells, every Delaunay output certifies
  //    the empty-ball property, every tiling covers its cell exactly, and
  //    rebuilding each structure reproduces it bit for bit.
  {
    Criterion& c = criteria[6];
    auto rng = seeded_rng(11);
    int disagreements = 0;
    for (int iter = 0; iter < 100000; ++iter) {
      const std::int64_t range = iter % 10 == 0 ? 9 : (std::int64_t{1} << 20);
      const Tetrahedron t = random_tetrahedron(rng, range);
      const bool by_sign = is_acute(t);
      bool by_angle = true;
      for (const DihedralAngle& a : dihedral_angles(t).angles) {
        by_angle = by_angle && a.degrees < 90.0;
      }
      bool by_projection = true;
      for (const Projection p : vertex_projection_test(t)) {
        by_projection = by_projection && p == Projection::kInside;
      }
      if (by_sign != by_angle || by_sign != by_projection) ++disagreements;
    }
    c.require(disagreements == 0,
              std::to_string(disagreements) + " acuteness criterion disagreements");

    for (const auto& [name, mesh] : meshes) {
      const CheckResult empty = delaunay_empty_sphere_check(mesh);
      c.require(empty.passed, name + " empty-ball: " + empty.detail);
      const CheckResult tiling = check_tiling(mesh);
      c.require(tiling.passed, name + " cover: " + tiling.detail);
    }
    for (const auto& [name, mesh] : meshes) {
      c.require(mesh_to_json(build_structure(name)) == mesh_to_json(mesh),
                name + " rebuild is not bit-identical");
    }
    if (c.ok) {
      c.note("0 disagreements in 100000 cells; 9 structures certified empty-ball, "
             "covering, and reproducible");
    }
  }

  // 8. the native format round-trips every generated mesh losslessly.
  {
    Criterion& c = criteria[7];
    int round_tripped = 0;
    const auto lossless = [&](const std::string& name, const TetMesh& m) {
      const std::string once = mesh_to_json(m);
      const std::string twice = mesh_to_json(mesh_from_json(once));
      c.require(once == twice, name + " round-trip altered the mesh");
      ++round_tripped;
    };
    for (const auto& [name, mesh] : meshes) lossless(name, mesh);
    lossless("acute-pair", flip_3to2(meshes.at("five-point"), VertexRef{0, {0, 0, 0}},
                                     VertexRef{4, {0, 0, 0}}));
    if (c.ok) c.note(std::to_string(round_tripped) + " meshes round-trip losslessly");
  }

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    if (!c.ok) ++failed;
    std::printf("criterion %zu %s: %s\n", i + 1, c.ok ? "PASS" : "FAIL",
                join(c.notes).c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
              criteria.size());
  return failed;
}
