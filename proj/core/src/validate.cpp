#include "acutile/validate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>

namespace acutile {

namespace {

std::string format_degrees(double value) {
  std::ostringstream out;
  out.precision(4);
  out << std::fixed << value;
  return out.str();
}

BigInt cell_volume_times_one(const PeriodicPointSet& pps) {
  const auto& b = pps.lattice().basis;
  if (pps.periodicity() == Periodicity::kFull) {
    BigInt v = det3x3(b[0], b[1], b[2]);
    if (v < 0) v = -v;
    return v;
  }
  // Slab: planar cell area times thickness; the thickness is carried in the
  // third lattice row by convention.
  BigInt area = BigInt(b[0].x) * b[1].y - BigInt(b[0].y) * b[1].x;
  if (area < 0) area = -area;
  return area * b[2].z;
}

}  // namespace

CheckResult check_tiling(const TetMesh& mesh) {
  const PeriodicPointSet& pps = mesh.points();
  const auto& tets = mesh.tets();

  BigInt total_volume = 0;
  for (std::size_t i = 0; i < tets.size(); ++i) {
    const std::array<Point3, 4> p = {
        mesh.position(tets[i].v[0]), mesh.position(tets[i].v[1]),
        mesh.position(tets[i].v[2]), mesh.position(tets[i].v[3])};
    const BigInt det = det3x3(p[1] - p[0], p[2] - p[0], p[3] - p[0]);
    if (det <= 0) {
      return {false, "tetrahedron " + std::to_string(i) +
                         " is not positively oriented"};
    }
    total_volume += det;
  }

  std::map<FacetKey, int> shared;
  for (const TetRef& t : tets) {
    for (int f = 0; f < 4; ++f) {
      std::array<VertexRef, 3> tri;
      int k = 0;
      for (int v = 0; v < 4; ++v) {
        if (v != f) tri[static_cast<std::size_t>(k++)] = t.v[static_cast<std::size_t>(v)];
      }
      ++shared[facet_key(tri[0], tri[1], tri[2])];
    }
  }
  std::size_t one_sided = 0;
  for (const auto& [key, count] : shared) {
    if (count == 2) continue;
    if (count > 2) {
      return {false, "a facet orbit is shared by " + std::to_string(count) +
                         " tetrahedra"};
    }
    if (pps.periodicity() == Periodicity::kFull) {
      return {false, "a facet orbit is one-sided in a fully periodic mesh"};
    }
    if (pps.periodicity() == Periodicity::kSlab) {
      const std::int64_t thickness = pps.lattice().basis[2].z;
      bool bottom = true;
      bool top = true;
      for (const VertexRef& r : key.v) {
        const std::int64_t z = mesh.position(r).z;
        bottom = bottom && z == 0;
        top = top && z == thickness;
      }
      if (!bottom && !top) {
        return {false, "a one-sided facet lies off the slab boundary planes"};
      }
    }
    ++one_sided;
  }

  if (pps.periodicity() == Periodicity::kNone) {
    return {true, "facets consistent; volume identity not applicable to a "
                  "finite mesh"};
  }
  if (pps.periodicity() == Periodicity::kSlab && pps.lattice().basis[2].z <= 0) {
    return {false, "slab thickness missing from the lattice"};
  }
  const BigInt expected = 6 * cell_volume_times_one(pps);
  if (total_volume != expected) {
    std::ostringstream out;
    out << "volumes cover " << total_volume << " of " << expected
        << " (six times the cell volume)";
    return {false, out.str()};
  }
  std::string detail = "facets consistent; exact volume cover";
  if (one_sided > 0) {
    detail += "; " + std::to_string(one_sided) + " boundary facet orbits";
  }
  return {true, detail};
}

CheckResult check_acute_all(const TetMesh& mesh) {
  bool all_acute = true;
  double worst = -1.0;
  std::size_t worst_tet = 0;
  int worst_edge_i = 0;
  int worst_edge_j = 0;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const Tetrahedron t = mesh.tetrahedron(i);
    if (!is_acute(t)) all_acute = false;
    const DihedralSet d = dihedral_angles(t);
    for (const DihedralAngle& a : d.angles) {
      if (a.degrees > worst) {
        worst = a.degrees;
        worst_tet = i;
        worst_edge_i = a.i;
        worst_edge_j = a.j;
      }
    }
  }
  if (mesh.size() == 0) return {false, "mesh has no tetrahedra"};
  std::string detail = "largest dihedral " + format_degrees(worst) +
                       " deg on edge (" + std::to_string(worst_edge_i) + "," +
                       std::to_string(worst_edge_j) + ") of tetrahedron " +
                       std::to_string(worst_tet);
  return {all_acute, detail};
}

ValenceReport valence_report(const TetMesh& mesh) {
  if (mesh.points().periodicity() != Periodicity::kFull) {
    throw std::invalid_argument(
        "valence_report: requires a fully periodic mesh");
  }
  std::map<EdgeKey, std::size_t> valence;
  for (const TetRef& t : mesh.tets()) {
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = a + 1; b < 4; ++b) {
        ++valence[edge_key(t.v[a], t.v[b])];
      }
    }
  }
  ValenceReport report;
  report.edge_orbits = valence.size();
  for (const auto& [key, count] : valence) {
    ++report.histogram[static_cast<int>(count)];
  }
  report.average = report.edge_orbits == 0
                       ? 0.0
                       : 6.0 * static_cast<double>(mesh.size()) /
                             static_cast<double>(report.edge_orbits);
  return report;
}

CheckResult tcp_check(const TetMesh& mesh) {
  if (mesh.points().periodicity() != Periodicity::kFull) {
    throw std::invalid_argument("tcp_check: requires a fully periodic mesh");
  }
  std::map<EdgeKey, int> valence;
  for (const TetRef& t : mesh.tets()) {
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = a + 1; b < 4; ++b) {
        ++valence[edge_key(t.v[a], t.v[b])];
      }
    }
  }
  for (const auto& [key, count] : valence) {
    if (count != 5 && count != 6) {
      return {false, "an edge orbit has valence " + std::to_string(count)};
    }
  }
  for (const TetRef& t : mesh.tets()) {
    for (int f = 0; f < 4; ++f) {
      std::array<VertexRef, 3> tri;
      int k = 0;
      for (int v = 0; v < 4; ++v) {
        if (v != f) tri[static_cast<std::size_t>(k++)] = t.v[static_cast<std::size_t>(v)];
      }
      int sixes = 0;
      for (std::size_t a = 0; a < 3; ++a) {
        if (valence.at(edge_key(tri[a], tri[(a + 1) % 3])) == 6) ++sixes;
      }
      if (sixes >= 2) {
        return {false, "a facet carries " + std::to_string(sixes) +
                           " valence-6 edges"};
      }
    }
  }
  std::size_t fives = 0;
  std::size_t sixes = 0;
  for (const auto& [key, count] : valence) {
    (count == 5 ? fives : sixes) += 1;
  }
  return {true, "edge valences {5: " + std::to_string(fives) +
                    ", 6: " + std::to_string(sixes) + "}"};
}

ValenceAngleIdentity valence_angle_identity(const TetMesh& mesh) {
  if (mesh.points().periodicity() != Periodicity::kFull) {
    throw std::invalid_argument(
        "valence_angle_identity: requires a fully periodic mesh");
  }
  std::map<EdgeKey, std::size_t> edges;
  double degree_sum = 0.0;
  for (const TetRef& t : mesh.tets()) {
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = a + 1; b < 4; ++b) {
        ++edges[edge_key(t.v[a], t.v[b])];
      }
    }
  }
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const DihedralSet d = dihedral_angles(mesh.tetrahedron(i));
    for (const DihedralAngle& a : d.angles) degree_sum += a.degrees;
  }
  ValenceAngleIdentity identity;
  const double incidences = 6.0 * static_cast<double>(mesh.size());
  identity.average_dihedral_degrees = degree_sum / incidences;
  identity.average_valence = incidences / static_cast<double>(edges.size());
  identity.product = degree_sum / static_cast<double>(edges.size());
  return identity;
}

double ideal_average_valence() {
  const double regular_dihedral = std::acos(1.0 / 3.0) * 180.0 / 3.141592653589793238462643383279502884;
  return 360.0 / regular_dihedral;
}

namespace {

void accumulate_quality(const Tetrahedron& t, QualityReport& report) {
  const double ratio = radius_edge_ratio(t);
  const DihedralSet d = dihedral_angles(t);
  const double lo = d.min_degrees();
  const double hi = d.max_degrees();
  if (report.count == 0) {
    report.radius_edge_min = report.radius_edge_max = ratio;
    report.min_dihedral_min = report.min_dihedral_max = lo;
    report.max_dihedral_min = report.max_dihedral_max = hi;
  } else {
    report.radius_edge_min = std::min(report.radius_edge_min, ratio);
    report.radius_edge_max = std::max(report.radius_edge_max, ratio);
    report.min_dihedral_min = std::min(report.min_dihedral_min, lo);
    report.min_dihedral_max = std::max(report.min_dihedral_max, lo);
    report.max_dihedral_min = std::min(report.max_dihedral_min, hi);
    report.max_dihedral_max = std::max(report.max_dihedral_max, hi);
  }
  ++report.count;
}

}  // namespace

QualityReport quality_report(const TetMesh& mesh) {
  QualityReport report;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    accumulate_quality(mesh.tetrahedron(i), report);
  }
  return report;
}

QualityReport quality_report(const std::vector<Tetrahedron>& tets) {
  QualityReport report;
  for (const Tetrahedron& t : tets) accumulate_quality(t, report);
  return report;
}

CheckResult delaunay_empty_sphere_check(const TetMesh& mesh) {
  const PeriodicPointSet& pps = mesh.points();
  const int dims = periodic_dim_count(pps.periodicity());
  const auto& basis = pps.lattice().basis;

  std::array<double, 3> widths = {0.0, 0.0, 0.0};
  if (dims == 3) {
    const auto dbl = [](const Point3& p) {
      return std::array<double, 3>{static_cast<double>(p.x),
                                   static_cast<double>(p.y),
                                   static_cast<double>(p.z)};
    };
    const auto cross = [](const std::array<double, 3>& u,
                          const std::array<double, 3>& v) {
      return std::array<double, 3>{u[1] * v[2] - u[2] * v[1],
                                   u[2] * v[0] - u[0] * v[2],
                                   u[0] * v[1] - u[1] * v[0]};
    };
    const auto norm = [](const std::array<double, 3>& u) {
      return std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    };
    const std::array<std::array<double, 3>, 3> b = {dbl(basis[0]), dbl(basis[1]),
                                                    dbl(basis[2])};
    const std::array<double, 3> c12 = cross(b[1], b[2]);
    const double volume = std::abs(b[0][0] * c12[0] + b[0][1] * c12[1] + b[0][2] * c12[2]);
    widths[0] = volume / norm(c12);
    widths[1] = volume / norm(cross(b[2], b[0]));
    widths[2] = volume / norm(cross(b[0], b[1]));
  } else if (dims == 2) {
    const double area = std::abs(static_cast<double>(basis[0].x) * static_cast<double>(basis[1].y) -
                                 static_cast<double>(basis[0].y) * static_cast<double>(basis[1].x));
    widths[0] = area / std::hypot(static_cast<double>(basis[1].x),
                                  static_cast<double>(basis[1].y));
    widths[1] = area / std::hypot(static_cast<double>(basis[0].x),
                                  static_cast<double>(basis[0].y));
  }

  const auto& tets = mesh.tets();
  for (std::size_t i = 0; i < tets.size(); ++i) {
    const ExactCircumcenter ec = exact_circumcenter(
        mesh.position(tets[i].v[0]), mesh.position(tets[i].v[1]),
        mesh.position(tets[i].v[2]), mesh.position(tets[i].v[3]));
    const double radius = std::sqrt(ec.r2_num.convert_to<double>()) /
                          ec.den.convert_to<double>();
    std::array<int, 3> range = {0, 0, 0};
    for (int d = 0; d < dims; ++d) {
      const double steps = radius / widths[static_cast<std::size_t>(d)];
      if (!(steps < 64.0)) {
        return {false, "tetrahedron " + std::to_string(i) +
                           " has a circumball too large to certify"};
      }
      range[static_cast<std::size_t>(d)] = static_cast<int>(steps) + 2;
    }

    for (int o0 = -range[0]; o0 <= range[0]; ++o0) {
      for (int o1 = -range[1]; o1 <= range[1]; ++o1) {
        for (int o2 = -range[2]; o2 <= range[2]; ++o2) {
          const Point3 shift = o0 * basis[0] + o1 * basis[1] + o2 * basis[2];
          for (std::size_t m = 0; m < pps.size(); ++m) {
            const Point3 q = pps.points()[m] + shift;
            const BigInt dx = BigInt(q.x) * ec.den - ec.nx;
            const BigInt dy = BigInt(q.y) * ec.den - ec.ny;
            const BigInt dz = BigInt(q.z) * ec.den - ec.nz;
            if (dx * dx + dy * dy + dz * dz < ec.r2_num) {
              std::ostringstream out;
              out << "point " << m << " at offset (" << o0 << "," << o1 << ","
                  << o2 << ") lies inside the circumball of tetrahedron " << i;
              return {false, out.str()};
            }
          }
        }
      }
    }
  }
  return {true, std::to_string(tets.size()) + " circumballs certified empty"};
}

}  // namespace acutile
