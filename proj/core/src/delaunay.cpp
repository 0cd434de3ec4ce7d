#include "acutile/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iostream>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace acutile {
namespace {

constexpr std::int32_t kGhost = -1;

// Face f of a tetrahedron is opposite vertex f; for a positively oriented
// tetrahedron each face is seen positively from its opposite vertex.
constexpr int kFaceOrder[4][3] = {{1, 3, 2}, {0, 2, 3}, {0, 3, 1}, {0, 1, 2}};

struct BWTet {
  std::array<std::int32_t, 4> v;    // ghost vertex, if any, is last
  std::array<std::int32_t, 4> nbr;  // neighbor opposite vertex i
  bool alive = true;
};

using FaceTriple = std::array<std::int32_t, 3>;

FaceTriple sorted_face(const BWTet& t, int f) {
  FaceTriple a = {t.v[static_cast<std::size_t>(kFaceOrder[f][0])],
                  t.v[static_cast<std::size_t>(kFaceOrder[f][1])],
                  t.v[static_cast<std::size_t>(kFaceOrder[f][2])]};
  std::sort(a.begin(), a.end());
  return a;
}

// Incremental construction over real points plus one ghost vertex closing the
// hull. Predicate ties are resolved by rank-aware symbolic perturbation.
class BowyerWatson {
 public:
  BowyerWatson(std::vector<Point3> points, std::vector<std::int64_t> ranks)
      : pts_(std::move(points)), ranks_(std::move(ranks)) {
    if (pts_.size() < 4) {
      throw std::invalid_argument("delaunay: need at least four distinct points");
    }
    init_first_cell();
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(pts_.size()); ++i) {
      if (i == base_[0] || i == base_[1] || i == base_[2] || i == base_[3]) continue;
      insert(i);
    }
  }

  std::vector<std::array<std::int32_t, 4>> real_tets() const {
    std::vector<std::array<std::int32_t, 4>> out;
    for (const BWTet& t : tets_) {
      if (t.alive && t.v[3] != kGhost) out.push_back(t.v);
    }
    return out;
  }

 private:
  const Point3& pos(std::int32_t v) const { return pts_[static_cast<std::size_t>(v)]; }

  void init_first_cell() {
    const auto n = static_cast<std::int32_t>(pts_.size());
    std::int32_t i0 = 0;
    std::int32_t i1 = 1;
    std::int32_t i2 = -1;
    for (std::int32_t i = 2; i < n && i2 < 0; ++i) {
      const Point3 u = pos(i1) - pos(i0);
      const Point3 w = pos(i) - pos(i0);
      const bool collinear = static_cast<__int128>(u.y) * w.z == static_cast<__int128>(u.z) * w.y &&
                             static_cast<__int128>(u.z) * w.x == static_cast<__int128>(u.x) * w.z &&
                             static_cast<__int128>(u.x) * w.y == static_cast<__int128>(u.y) * w.x;
      if (!collinear) i2 = i;
    }
    std::int32_t i3 = -1;
    for (std::int32_t i = (i2 < 0 ? n : i2 + 1); i < n && i3 < 0; ++i) {
      if (i == i2) continue;
      if (orient3d(pos(i0), pos(i1), pos(i2), pos(i)) != 0) i3 = i;
    }
    if (i2 < 0 || i3 < 0) {
      throw std::invalid_argument("delaunay: points are affinely degenerate");
    }
    if (orient3d(pos(i0), pos(i1), pos(i2), pos(i3)) < 0) std::swap(i2, i3);
    base_ = {i0, i1, i2, i3};

    BWTet first;
    first.v = base_;
    first.nbr = {-1, -1, -1, -1};
    tets_.push_back(first);
    for (int f = 0; f < 4; ++f) {
      BWTet g;
      g.v = {first.v[static_cast<std::size_t>(kFaceOrder[f][0])],
             first.v[static_cast<std::size_t>(kFaceOrder[f][1])],
             first.v[static_cast<std::size_t>(kFaceOrder[f][2])], kGhost};
      g.nbr = {-1, -1, -1, -1};
      tets_.push_back(g);
    }
    wire_group({0, 1, 2, 3, 4});
    last_real_ = 0;
    conflict_stamp_.assign(tets_.size(), 0);
    conflict_value_.assign(tets_.size(), false);
  }

  // Pairs up equal face triples within the group and links the neighbors.
  // Faces already wired to tetrahedra outside the group are left alone.
  void wire_group(const std::vector<std::int32_t>& group) {
    std::map<FaceTriple, std::vector<std::pair<std::int32_t, int>>> faces;
    for (const std::int32_t id : group) {
      for (int f = 0; f < 4; ++f) {
        if (tets_[static_cast<std::size_t>(id)].nbr[static_cast<std::size_t>(f)] >= 0) continue;
        faces[sorted_face(tets_[static_cast<std::size_t>(id)], f)].push_back({id, f});
      }
    }
    for (const auto& [triple, where] : faces) {
      if (where.size() != 2) {
        throw std::logic_error("delaunay: unmatched face while wiring");
      }
      tets_[static_cast<std::size_t>(where[0].first)].nbr[static_cast<std::size_t>(where[0].second)] = where[1].first;
      tets_[static_cast<std::size_t>(where[1].first)].nbr[static_cast<std::size_t>(where[1].second)] = where[0].first;
    }
  }

  bool conflicts(std::int32_t id, std::int32_t p) {
    if (conflict_stamp_[static_cast<std::size_t>(id)] == stamp_) {
      return conflict_value_[static_cast<std::size_t>(id)];
    }
    const BWTet& t = tets_[static_cast<std::size_t>(id)];
    bool result;
    if (t.v[3] != kGhost) {
      result = insphere_perturbed(pos(t.v[0]), pos(t.v[1]), pos(t.v[2]), pos(t.v[3]),
                                  pos(p), ranks_of(t.v, p)) > 0;
    } else {
      // A ghost cell conflicts when p lies strictly beyond its hull face; on
      // the face plane the real neighbor's circumsphere decides, so both
      // sides of the face agree.
      const std::int32_t rid = t.nbr[3];
      const BWTet& r = tets_[static_cast<std::size_t>(rid)];
      std::int32_t w = -1;
      for (const std::int32_t rv : r.v) {
        if (rv != t.v[0] && rv != t.v[1] && rv != t.v[2]) w = rv;
      }
      const int s_in = orient3d(pos(t.v[0]), pos(t.v[1]), pos(t.v[2]), pos(w));
      const int s_p = orient3d(pos(t.v[0]), pos(t.v[1]), pos(t.v[2]), pos(p));
      if (s_p == 0) {
        result = insphere_perturbed(pos(r.v[0]), pos(r.v[1]), pos(r.v[2]), pos(r.v[3]),
                                    pos(p), ranks_of(r.v, p)) > 0;
      } else {
        result = s_p == -s_in;
      }
    }
    conflict_stamp_[static_cast<std::size_t>(id)] = stamp_;
    conflict_value_[static_cast<std::size_t>(id)] = result;
    return result;
  }

  std::array<std::int64_t, 5> ranks_of(const std::array<std::int32_t, 4>& v,
                                       std::int32_t p) const {
    return {ranks_[static_cast<std::size_t>(v[0])], ranks_[static_cast<std::size_t>(v[1])],
            ranks_[static_cast<std::size_t>(v[2])], ranks_[static_cast<std::size_t>(v[3])],
            ranks_[static_cast<std::size_t>(p)]};
  }

  std::int32_t locate_seed(std::int32_t p) {
    std::int32_t cur = last_real_;
    const std::size_t cap = 4 * tets_.size() + 16;
    for (std::size_t step = 0; step < cap; ++step) {
      const BWTet& t = tets_[static_cast<std::size_t>(cur)];
      std::int32_t next = -1;
      for (int f = 0; f < 4 && next < 0; ++f) {
        const std::array<std::int32_t, 3> fv = {
            t.v[static_cast<std::size_t>(kFaceOrder[f][0])],
            t.v[static_cast<std::size_t>(kFaceOrder[f][1])],
            t.v[static_cast<std::size_t>(kFaceOrder[f][2])]};
        if (orient3d(pos(fv[0]), pos(fv[1]), pos(fv[2]), pos(p)) < 0) {
          next = t.nbr[static_cast<std::size_t>(f)];
        }
      }
      if (next < 0) return cur;  // contained in the closed cell, so in conflict
      if (tets_[static_cast<std::size_t>(next)].v[3] == kGhost) return next;
      cur = next;
    }
    // Degenerate walks can cycle; fall back to a deterministic scan.
    for (std::int32_t id = 0; id < static_cast<std::int32_t>(tets_.size()); ++id) {
      if (tets_[static_cast<std::size_t>(id)].alive && conflicts(id, p)) return id;
    }
    throw std::logic_error("delaunay: no conflicting cell found");
  }

  void insert(std::int32_t p) {
    ++stamp_;
    const std::int32_t seed = locate_seed(p);
    if (!conflicts(seed, p)) {
      throw std::logic_error("delaunay: located cell does not conflict");
    }

    std::vector<std::int32_t> cavity = {seed};
    std::vector<char> in_cavity(tets_.size(), 0);
    in_cavity[static_cast<std::size_t>(seed)] = 1;
    for (std::size_t head = 0; head < cavity.size(); ++head) {
      const std::int32_t id = cavity[head];
      for (int f = 0; f < 4; ++f) {
        const std::int32_t n = tets_[static_cast<std::size_t>(id)].nbr[static_cast<std::size_t>(f)];
        if (in_cavity[static_cast<std::size_t>(n)]) continue;
        if (conflicts(n, p)) {
          in_cavity[static_cast<std::size_t>(n)] = 1;
          cavity.push_back(n);
        }
      }
    }

    struct Boundary {
      std::int32_t tet;
      int face;
    };
    std::vector<Boundary> boundary;
    for (const std::int32_t id : cavity) {
      for (int f = 0; f < 4; ++f) {
        const std::int32_t n = tets_[static_cast<std::size_t>(id)].nbr[static_cast<std::size_t>(f)];
        if (!in_cavity[static_cast<std::size_t>(n)]) boundary.push_back({id, f});
      }
    }
    for (const std::int32_t id : cavity) tets_[static_cast<std::size_t>(id)].alive = false;

    std::vector<std::int32_t> fresh;
    fresh.reserve(boundary.size());
    for (const Boundary& b : boundary) {
      const BWTet& old = tets_[static_cast<std::size_t>(b.tet)];
      const std::array<std::int32_t, 3> fv = {
          old.v[static_cast<std::size_t>(kFaceOrder[b.face][0])],
          old.v[static_cast<std::size_t>(kFaceOrder[b.face][1])],
          old.v[static_cast<std::size_t>(kFaceOrder[b.face][2])]};
      const std::int32_t outside = old.nbr[static_cast<std::size_t>(b.face)];

      BWTet nt;
      nt.nbr = {-1, -1, -1, -1};
      if (fv[0] != kGhost && fv[1] != kGhost && fv[2] != kGhost) {
        nt.v = {fv[0], fv[1], fv[2], p};
        const int o = orient3d(pos(nt.v[0]), pos(nt.v[1]), pos(nt.v[2]), pos(p));
        if (o == 0) throw std::logic_error("delaunay: flat cell in cavity fill");
        if (o < 0) std::swap(nt.v[1], nt.v[2]);
      } else {
        int k = 0;
        std::array<std::int32_t, 4> verts;
        for (const std::int32_t fvv : fv) {
          if (fvv != kGhost) verts[static_cast<std::size_t>(k++)] = fvv;
        }
        verts[2] = p;
        verts[3] = kGhost;
        nt.v = verts;
      }
      const auto id = static_cast<std::int32_t>(tets_.size());
      tets_.push_back(nt);
      conflict_stamp_.push_back(0);
      conflict_value_.push_back(false);
      fresh.push_back(id);

      // Reconnect to the surviving neighbor across the old boundary face.
      FaceTriple btriple = fv;
      std::sort(btriple.begin(), btriple.end());
      int nf = -1;
      for (int f = 0; f < 4; ++f) {
        if (sorted_face(tets_[static_cast<std::size_t>(id)], f) == btriple) nf = f;
      }
      int of = -1;
      for (int f = 0; f < 4; ++f) {
        if (sorted_face(tets_[static_cast<std::size_t>(outside)], f) == btriple) of = f;
      }
      if (nf < 0 || of < 0) throw std::logic_error("delaunay: lost boundary face");
      tets_[static_cast<std::size_t>(id)].nbr[static_cast<std::size_t>(nf)] = outside;
      tets_[static_cast<std::size_t>(outside)].nbr[static_cast<std::size_t>(of)] = id;
      if (nt.v[3] != kGhost) last_real_ = id;
    }
    wire_group(fresh);
  }

  std::vector<Point3> pts_;
  std::vector<std::int64_t> ranks_;
  std::vector<BWTet> tets_;
  std::array<std::int32_t, 4> base_ = {0, 0, 0, 0};
  std::int32_t last_real_ = 0;
  std::uint64_t stamp_ = 0;
  std::vector<std::uint64_t> conflict_stamp_;
  std::vector<char> conflict_value_;
};

BigInt det3_bigrow(const std::array<BigInt, 3>& r0, const Point3& r1, const Point3& r2) {
  return r0[0] * (BigInt(r1.y) * r2.z - BigInt(r1.z) * r2.y) -
         r0[1] * (BigInt(r1.x) * r2.z - BigInt(r1.z) * r2.x) +
         r0[2] * (BigInt(r1.x) * r2.y - BigInt(r1.y) * r2.x);
}

// True when the circumcenter lies in the half-open fundamental cell along
// every periodic direction.
bool center_in_cell(const ExactCircumcenter& ec, const Lattice& lat, int dims) {
  const std::array<BigInt, 3> c = {ec.nx, ec.ny, ec.nz};
  if (dims == 2) {
    BigInt d = BigInt(lat.basis[0].x) * lat.basis[1].y - BigInt(lat.basis[0].y) * lat.basis[1].x;
    std::array<BigInt, 2> num = {
        ec.nx * lat.basis[1].y - ec.ny * lat.basis[1].x,
        BigInt(lat.basis[0].x) * ec.ny - BigInt(lat.basis[0].y) * ec.nx};
    if (d < 0) {
      d = -d;
      num[0] = -num[0];
      num[1] = -num[1];
    }
    const BigInt full = d * ec.den;
    return num[0] >= 0 && num[0] < full && num[1] >= 0 && num[1] < full;
  }
  BigInt d = det3x3(lat.basis[0], lat.basis[1], lat.basis[2]);
  std::array<BigInt, 3> num = {det3_bigrow(c, lat.basis[1], lat.basis[2]),
                               -det3_bigrow(c, lat.basis[0], lat.basis[2]),
                               det3_bigrow(c, lat.basis[0], lat.basis[1])};
  if (d < 0) {
    d = -d;
    for (BigInt& n : num) n = -n;
  }
  const BigInt full = d * ec.den;
  for (const BigInt& n : num) {
    if (n < 0 || n >= full) return false;
  }
  return true;
}

double norm_xy(const Point3& p) {
  return std::hypot(static_cast<double>(p.x), static_cast<double>(p.y));
}

double norm_cross(const Point3& a, const Point3& b) {
  const double cx = static_cast<double>(a.y) * static_cast<double>(b.z) -
                    static_cast<double>(a.z) * static_cast<double>(b.y);
  const double cy = static_cast<double>(a.z) * static_cast<double>(b.x) -
                    static_cast<double>(a.x) * static_cast<double>(b.z);
  const double cz = static_cast<double>(a.x) * static_cast<double>(b.y) -
                    static_cast<double>(a.y) * static_cast<double>(b.x);
  return std::sqrt(cx * cx + cy * cy + cz * cz);
}

// Minimum distance between opposite faces of the fundamental cell, slightly
// shrunk so rounding can only make the shielding test stricter.
double min_cell_width(const Lattice& lat, int dims) {
  double w = 0.0;
  if (dims == 2) {
    const double area = std::abs(
        static_cast<double>(lat.basis[0].x) * static_cast<double>(lat.basis[1].y) -
        static_cast<double>(lat.basis[0].y) * static_cast<double>(lat.basis[1].x));
    w = std::min(area / norm_xy(lat.basis[1]), area / norm_xy(lat.basis[0]));
  } else {
    const double vol = std::abs(
        det3x3(lat.basis[0], lat.basis[1], lat.basis[2]).convert_to<double>());
    w = vol / norm_cross(lat.basis[1], lat.basis[2]);
    w = std::min(w, vol / norm_cross(lat.basis[0], lat.basis[2]));
    w = std::min(w, vol / norm_cross(lat.basis[0], lat.basis[1]));
  }
  return w * (1.0 - 1e-9);
}

}  // namespace

TetMesh delaunay(const std::vector<Point3>& points, double scale) {
  std::vector<Point3> unique;
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, std::int32_t> seen;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point3& p = points[i];
    const auto key = std::make_tuple(p.x, p.y, p.z);
    if (seen.contains(key)) {
      std::cerr << "delaunay: ignoring duplicate point at input index " << i << "\n";
      continue;
    }
    seen.emplace(key, static_cast<std::int32_t>(unique.size()));
    unique.push_back(p);
  }

  std::vector<std::int64_t> ranks(unique.size());
  for (std::size_t i = 0; i < ranks.size(); ++i) ranks[i] = static_cast<std::int64_t>(i);
  BowyerWatson bw(unique, ranks);

  std::vector<TetRef> tets;
  for (const std::array<std::int32_t, 4>& t : bw.real_tets()) {
    tets.push_back({{VertexRef{t[0], {0, 0, 0}}, VertexRef{t[1], {0, 0, 0}},
                     VertexRef{t[2], {0, 0, 0}}, VertexRef{t[3], {0, 0, 0}}}});
  }
  return TetMesh(PeriodicPointSet(Periodicity::kNone, Lattice{}, std::move(unique), scale),
                 std::move(tets));
}

TetMesh periodic_delaunay(const PeriodicPointSet& points, int shells) {
  const int dims = periodic_dim_count(points.periodicity());
  if (dims == 0) {
    throw std::invalid_argument("periodic_delaunay: point set is not periodic");
  }
  if (shells < 1) throw std::invalid_argument("periodic_delaunay: shells must be positive");

  std::vector<std::array<std::int32_t, 3>> offsets;
  const int s0 = shells;
  const int s1 = shells;
  const int s2 = dims == 3 ? shells : 0;
  for (std::int32_t o0 = -s0; o0 <= s0; ++o0) {
    for (std::int32_t o1 = -s1; o1 <= s1; ++o1) {
      for (std::int32_t o2 = -s2; o2 <= s2; ++o2) {
        offsets.push_back({o0, o1, o2});
      }
    }
  }

  const auto m = static_cast<std::int64_t>(points.size());
  const auto noff = static_cast<std::int64_t>(offsets.size());
  std::vector<Point3> patch;
  std::vector<std::int64_t> ranks;
  patch.reserve(static_cast<std::size_t>(m * noff));
  ranks.reserve(static_cast<std::size_t>(m * noff));
  for (std::int64_t oi = 0; oi < noff; ++oi) {
    for (std::int64_t mi = 0; mi < m; ++mi) {
      const VertexRef ref{static_cast<std::int32_t>(mi), offsets[static_cast<std::size_t>(oi)]};
      patch.push_back(points.position(ref));
      ranks.push_back(mi * noff + oi);
    }
  }

  BowyerWatson bw(patch, ranks);

  const double wmin = min_cell_width(points.lattice(), dims);
  std::vector<TetRef> kept;
  for (const std::array<std::int32_t, 4>& t : bw.real_tets()) {
    TetRef ref;
    std::array<Point3, 4> pos;
    for (int i = 0; i < 4; ++i) {
      const std::int64_t oi = t[static_cast<std::size_t>(i)] / m;
      const std::int64_t mi = t[static_cast<std::size_t>(i)] % m;
      ref.v[static_cast<std::size_t>(i)] =
          VertexRef{static_cast<std::int32_t>(mi), offsets[static_cast<std::size_t>(oi)]};
      pos[static_cast<std::size_t>(i)] = patch[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
    }
    const ExactCircumcenter ec = exact_circumcenter(pos[0], pos[1], pos[2], pos[3]);
    if (!center_in_cell(ec, points.lattice(), dims)) continue;
    const double radius = std::sqrt(ec.r2_num.convert_to<double>()) / ec.den.convert_to<double>();
    if (!(radius < static_cast<double>(shells) * wmin)) {
      throw std::runtime_error(
          "periodic_delaunay: circumball reaches beyond the replicated patch; "
          "increase shells");
    }
    kept.push_back(ref);
  }
  return TetMesh(PeriodicPointSet(points), std::move(kept));
}

TetMesh flip_3to2(const TetMesh& mesh, const VertexRef& a, const VertexRef& b) {
  const EdgeKey key = edge_key(a, b);

  struct Instance {
    std::size_t index;
    std::array<VertexRef, 2> apex;
  };
  std::vector<Instance> found;
  std::vector<char> used(mesh.size(), 0);
  for (std::size_t ti = 0; ti < mesh.size(); ++ti) {
    const TetRef& t = mesh.tets()[ti];
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const VertexRef& p = t.v[static_cast<std::size_t>(i)];
        const VertexRef& q = t.v[static_cast<std::size_t>(j)];
        if (edge_key(p, q) != key) continue;
        // Shift this tetrahedron so its edge instance coincides with (a, b).
        std::array<std::int32_t, 3> shift;
        const VertexRef& anchor = (p.v == a.v && q.v == b.v &&
                                   p.off[0] - a.off[0] == q.off[0] - b.off[0] &&
                                   p.off[1] - a.off[1] == q.off[1] - b.off[1] &&
                                   p.off[2] - a.off[2] == q.off[2] - b.off[2])
                                      ? p
                                      : q;
        for (int k = 0; k < 3; ++k) {
          shift[static_cast<std::size_t>(k)] = a.off[static_cast<std::size_t>(k)] - anchor.off[static_cast<std::size_t>(k)];
        }
        Instance inst;
        inst.index = ti;
        int n = 0;
        for (int k = 0; k < 4; ++k) {
          if (k == i || k == j) continue;
          VertexRef r = t.v[static_cast<std::size_t>(k)];
          for (int d = 0; d < 3; ++d) r.off[static_cast<std::size_t>(d)] += shift[static_cast<std::size_t>(d)];
          inst.apex[static_cast<std::size_t>(n++)] = r;
        }
        if (used[ti]) {
          throw std::invalid_argument("flip_3to2: edge meets one tetrahedron twice");
        }
        used[ti] = 1;
        found.push_back(inst);
      }
    }
  }
  if (found.size() != 3) {
    throw std::invalid_argument("flip_3to2: edge is not shared by exactly three tetrahedra");
  }

  // The three apex pairs must close into a ring of three vertices.
  std::vector<VertexRef> ring;
  for (const Instance& inst : found) {
    for (const VertexRef& r : inst.apex) {
      if (std::find(ring.begin(), ring.end(), r) == ring.end()) ring.push_back(r);
    }
  }
  if (ring.size() != 3) {
    throw std::invalid_argument("flip_3to2: tetrahedra around the edge do not close a ring");
  }

  const PeriodicPointSet& pps = mesh.points();
  const Point3 pa = pps.position(a);
  const Point3 pb = pps.position(b);
  const Point3 x = pps.position(ring[0]);
  const Point3 y = pps.position(ring[1]);
  const Point3 z = pps.position(ring[2]);
  const int sa = orient3d(x, y, z, pa);
  const int sb = orient3d(x, y, z, pb);
  const int c0 = orient3d(pa, x, y, pb);
  const int c1 = orient3d(pa, y, z, pb);
  const int c2 = orient3d(pa, z, x, pb);
  const bool crosses = sa * sb < 0 && c0 != 0 && c0 == c1 && c1 == c2;
  if (!crosses) {
    throw std::invalid_argument("flip_3to2: union is not a convex bipyramid");
  }

  std::vector<TetRef> tets;
  tets.reserve(mesh.size() - 1);
  for (std::size_t ti = 0; ti < mesh.size(); ++ti) {
    if (!used[ti]) tets.push_back(mesh.tets()[ti]);
  }
  tets.push_back({{ring[0], ring[1], ring[2], a}});
  tets.push_back({{ring[0], ring[1], ring[2], b}});
  return TetMesh(PeriodicPointSet(pps), std::move(tets));
}

}  // namespace acutile
