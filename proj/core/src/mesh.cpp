#include "acutile/mesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace acutile {
namespace {

BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt q = n / d;  // truncates toward zero; d > 0
  if (n % d != 0 && n < 0) --q;
  return q;
}

BigInt cross_z(const Point3& a, const Point3& b) {
  return BigInt(a.x) * b.y - BigInt(a.y) * b.x;
}

void check_coordinate_range(const Point3& p) {
  for (const std::int64_t c : {p.x, p.y, p.z}) {
    if (c < -kMaxGridCoord || c > kMaxGridCoord) {
      throw std::invalid_argument("point coordinate exceeds grid range");
    }
  }
}

std::int64_t floor_div_int(std::int64_t n, std::int64_t d) {
  std::int64_t q = n / d;
  if (n % d != 0 && ((n < 0) != (d < 0))) --q;
  return q;
}

}  // namespace

int periodic_dim_count(Periodicity p) {
  switch (p) {
    case Periodicity::kNone: return 0;
    case Periodicity::kSlab: return 2;
    case Periodicity::kFull: return 3;
  }
  return 0;
}

CellCoords cell_coordinates(const Point3& p, const Lattice& lattice, int dims) {
  CellCoords out;
  out.num = {BigInt(0), BigInt(0), BigInt(0)};
  out.den = 1;
  if (dims == 0) return out;

  const Point3& b0 = lattice.basis[0];
  const Point3& b1 = lattice.basis[1];
  if (dims == 2) {
    BigInt den = cross_z(b0, b1);
    if (den == 0) throw std::invalid_argument("cell_coordinates: degenerate lattice");
    BigInt n0 = cross_z(p, b1);
    BigInt n1 = cross_z(b0, p);
    if (den < 0) {
      den = -den;
      n0 = -n0;
      n1 = -n1;
    }
    out.num[0] = n0;
    out.num[1] = n1;
    out.den = den;
    return out;
  }

  const Point3& b2 = lattice.basis[2];
  BigInt den = det3x3(b0, b1, b2);
  if (den == 0) throw std::invalid_argument("cell_coordinates: degenerate lattice");
  BigInt n0 = det3x3(p, b1, b2);
  BigInt n1 = det3x3(b0, p, b2);
  BigInt n2 = det3x3(b0, b1, p);
  if (den < 0) {
    den = -den;
    n0 = -n0;
    n1 = -n1;
    n2 = -n2;
  }
  out.num = {n0, n1, n2};
  out.den = den;
  return out;
}

Point3 reduce_into_cell(const Point3& p, const Lattice& lattice, int dims,
                        std::array<std::int64_t, 3>* shifts) {
  const CellCoords cc = cell_coordinates(p, lattice, dims);
  Point3 out = p;
  std::array<std::int64_t, 3> k = {0, 0, 0};
  for (int i = 0; i < dims; ++i) {
    k[static_cast<std::size_t>(i)] =
        floor_div(cc.num[static_cast<std::size_t>(i)], cc.den).convert_to<std::int64_t>();
    out = out - k[static_cast<std::size_t>(i)] * lattice.basis[static_cast<std::size_t>(i)];
  }
  if (shifts) *shifts = k;
  return out;
}

PeriodicPointSet::PeriodicPointSet(Periodicity periodicity, const Lattice& lattice,
                                   std::vector<Point3> points, double scale)
    : periodicity_(periodicity), lattice_(lattice), points_(std::move(points)), scale_(scale) {
  if (!(scale_ > 0.0)) throw std::invalid_argument("PeriodicPointSet: scale must be positive");
  if (points_.empty()) throw std::invalid_argument("PeriodicPointSet: no points");

  const int dims = periodic_dim_count(periodicity_);
  for (int i = 0; i < dims; ++i) check_coordinate_range(lattice_.basis[static_cast<std::size_t>(i)]);
  if (periodicity_ == Periodicity::kSlab &&
      (lattice_.basis[0].z != 0 || lattice_.basis[1].z != 0)) {
    throw std::invalid_argument("PeriodicPointSet: slab generators must be horizontal");
  }
  if (dims == 2 && cross_z(lattice_.basis[0], lattice_.basis[1]) == 0) {
    throw std::invalid_argument("PeriodicPointSet: degenerate lattice cell");
  }
  if (dims == 3 && det3x3(lattice_.basis[0], lattice_.basis[1], lattice_.basis[2]) == 0) {
    throw std::invalid_argument("PeriodicPointSet: degenerate lattice cell");
  }

  for (const Point3& p : points_) {
    check_coordinate_range(p);
    if (dims > 0) {
      const CellCoords cc = cell_coordinates(p, lattice_, dims);
      for (int i = 0; i < dims; ++i) {
        const BigInt& n = cc.num[static_cast<std::size_t>(i)];
        if (n < 0 || n >= cc.den) {
          throw std::invalid_argument(
              "PeriodicPointSet: point outside the half-open fundamental cell");
        }
      }
    }
  }

  std::vector<Point3> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("PeriodicPointSet: duplicate points");
  }
}

Point3 PeriodicPointSet::position(const VertexRef& r) const {
  Point3 p = points_[static_cast<std::size_t>(r.v)];
  const int dims = periodic_dim_count(periodicity_);
  for (int i = 0; i < dims; ++i) {
    p = p + std::int64_t{r.off[static_cast<std::size_t>(i)]} * lattice_.basis[static_cast<std::size_t>(i)];
  }
  return p;
}

TetRef canonical_tet(const PeriodicPointSet& points, TetRef t) {
  std::array<std::int32_t, 3> base = t.v[0].off;
  for (int i = 1; i < 4; ++i) base = std::min(base, t.v[static_cast<std::size_t>(i)].off);
  for (VertexRef& r : t.v) {
    for (int i = 0; i < 3; ++i) {
      r.off[static_cast<std::size_t>(i)] -= base[static_cast<std::size_t>(i)];
    }
  }
  std::sort(t.v.begin(), t.v.end());
  const int o = orient3d(points.position(t.v[0]), points.position(t.v[1]),
                         points.position(t.v[2]), points.position(t.v[3]));
  if (o == 0) throw std::invalid_argument("canonical_tet: degenerate tetrahedron");
  if (o < 0) std::swap(t.v[2], t.v[3]);
  return t;
}

TetMesh::TetMesh(PeriodicPointSet points, std::vector<TetRef> tets)
    : points_(std::move(points)), tets_(std::move(tets)) {
  const int dims = periodic_dim_count(points_.periodicity());
  const auto npoints = static_cast<std::int32_t>(points_.size());
  for (TetRef& t : tets_) {
    for (const VertexRef& r : t.v) {
      if (r.v < 0 || r.v >= npoints) {
        throw std::invalid_argument("TetMesh: vertex index out of range");
      }
      for (int i = dims; i < 3; ++i) {
        if (r.off[static_cast<std::size_t>(i)] != 0) {
          throw std::invalid_argument("TetMesh: offset along a non-periodic direction");
        }
      }
    }
    t = canonical_tet(points_, t);
  }
  std::sort(tets_.begin(), tets_.end());
  if (std::adjacent_find(tets_.begin(), tets_.end()) != tets_.end()) {
    throw std::invalid_argument("TetMesh: duplicate tetrahedron");
  }
}

Tetrahedron TetMesh::tetrahedron(std::size_t i) const {
  const TetRef& t = tets_[i];
  return Tetrahedron({position(t.v[0]), position(t.v[1]), position(t.v[2]), position(t.v[3])},
                     points_.scale());
}

EdgeKey edge_key(const VertexRef& a, const VertexRef& b) {
  EdgeKey fwd{a.v, b.v,
              {b.off[0] - a.off[0], b.off[1] - a.off[1], b.off[2] - a.off[2]}};
  EdgeKey rev{b.v, a.v,
              {a.off[0] - b.off[0], a.off[1] - b.off[1], a.off[2] - b.off[2]}};
  return std::min(fwd, rev);
}

FacetKey facet_key(const VertexRef& a, const VertexRef& b, const VertexRef& c) {
  FacetKey key{{a, b, c}};
  std::sort(key.v.begin(), key.v.end());
  std::array<std::int32_t, 3> base = std::min(std::min(key.v[0].off, key.v[1].off), key.v[2].off);
  for (VertexRef& r : key.v) {
    for (int i = 0; i < 3; ++i) {
      r.off[static_cast<std::size_t>(i)] -= base[static_cast<std::size_t>(i)];
    }
  }
  return key;
}

TetMesh tile_mesh(const TetMesh& mesh, const std::array<int, 3>& periods) {
  const PeriodicPointSet& pps = mesh.points();
  const int dims = periodic_dim_count(pps.periodicity());
  for (int i = 0; i < 3; ++i) {
    if (periods[static_cast<std::size_t>(i)] < 1) {
      throw std::invalid_argument("tile_mesh: periods must be positive");
    }
    if (i >= dims && periods[static_cast<std::size_t>(i)] != 1) {
      throw std::invalid_argument("tile_mesh: cannot tile a non-periodic direction");
    }
  }
  if (periods == std::array<int, 3>{1, 1, 1}) return mesh;

  Lattice big = pps.lattice();
  for (int i = 0; i < dims; ++i) {
    big.basis[static_cast<std::size_t>(i)] =
        std::int64_t{periods[static_cast<std::size_t>(i)]} * big.basis[static_cast<std::size_t>(i)];
  }

  const auto m = static_cast<std::int32_t>(pps.size());
  const auto cell_index = [&](std::int64_t c0, std::int64_t c1, std::int64_t c2) {
    return static_cast<std::int32_t>((c0 * periods[1] + c1) * periods[2] + c2);
  };

  std::vector<Point3> big_points;
  big_points.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(periods[0]) *
                     static_cast<std::size_t>(periods[1]) * static_cast<std::size_t>(periods[2]));
  for (std::int64_t c0 = 0; c0 < periods[0]; ++c0) {
    for (std::int64_t c1 = 0; c1 < periods[1]; ++c1) {
      for (std::int64_t c2 = 0; c2 < periods[2]; ++c2) {
        const std::array<std::int64_t, 3> cell = {c0, c1, c2};
        for (std::int32_t i = 0; i < m; ++i) {
          Point3 p = pps.points()[static_cast<std::size_t>(i)];
          for (int k = 0; k < dims; ++k) {
            p = p + cell[static_cast<std::size_t>(k)] * pps.lattice().basis[static_cast<std::size_t>(k)];
          }
          big_points.push_back(p);
        }
      }
    }
  }
  PeriodicPointSet big_set(pps.periodicity(), big, std::move(big_points), pps.scale());

  std::vector<TetRef> big_tets;
  big_tets.reserve(mesh.size() * static_cast<std::size_t>(periods[0]) *
                   static_cast<std::size_t>(periods[1]) * static_cast<std::size_t>(periods[2]));
  for (const TetRef& t : mesh.tets()) {
    for (std::int64_t c0 = 0; c0 < periods[0]; ++c0) {
      for (std::int64_t c1 = 0; c1 < periods[1]; ++c1) {
        for (std::int64_t c2 = 0; c2 < periods[2]; ++c2) {
          const std::array<std::int64_t, 3> cell = {c0, c1, c2};
          TetRef nt;
          for (int vi = 0; vi < 4; ++vi) {
            const VertexRef& r = t.v[static_cast<std::size_t>(vi)];
            std::array<std::int64_t, 3> local = {0, 0, 0};
            std::array<std::int32_t, 3> off = {0, 0, 0};
            for (int k = 0; k < 3; ++k) {
              const std::int64_t total = cell[static_cast<std::size_t>(k)] + r.off[static_cast<std::size_t>(k)];
              const std::int64_t q = floor_div_int(total, periods[static_cast<std::size_t>(k)]);
              local[static_cast<std::size_t>(k)] = total - q * periods[static_cast<std::size_t>(k)];
              off[static_cast<std::size_t>(k)] = static_cast<std::int32_t>(q);
            }
            nt.v[static_cast<std::size_t>(vi)] = {
                cell_index(local[0], local[1], local[2]) * m + r.v, off};
          }
          big_tets.push_back(nt);
        }
      }
    }
  }
  return TetMesh(std::move(big_set), std::move(big_tets));
}

}  // namespace acutile
