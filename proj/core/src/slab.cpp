#include "acutile/slab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "acutile/geom.hpp"

namespace acutile {

namespace {

constexpr std::int64_t kGrid = std::int64_t{1} << 32;

// Internal height layers, in 1/142 of the slab thickness. The structure is
// mirror-symmetric about layer 71 except for the layer-46-to-96 band, which
// is self-conjugate.
constexpr int kBase = 0;
constexpr int kApex = 40;
constexpr int kCap = 46;
constexpr int kMid = 71;
constexpr int kCapMirror = 96;
constexpr int kTop = 142;

// A point of the construction before grid materialization: x in edge-60
// integer units, y as a multiple of 5*sqrt(3), z as a layer number.
struct Pt {
  std::int64_t x = 0;
  std::int64_t ym = 0;
  int z = 0;
};

using ProtoTet = std::array<Pt, 4>;

Pt mirrored(Pt p) {
  p.z = kTop - p.z;
  return p;
}

std::array<Pt, 6> ring_sorted(const Pt& center, std::array<Pt, 6> ring) {
  const double root75 = std::sqrt(75.0);  // 5 * sqrt(3)
  std::sort(ring.begin(), ring.end(), [&](const Pt& a, const Pt& b) {
    const double aa = std::atan2(static_cast<double>(a.ym - center.ym) * root75,
                                 static_cast<double>(a.x - center.x));
    const double bb = std::atan2(static_cast<double>(b.ym - center.ym) * root75,
                                 static_cast<double>(b.x - center.x));
    return aa < bb;
  });
  return ring;
}

}  // namespace

TetMesh slab_tiling(const SlabSpec& spec) {
  if (!(spec.height > 0) || !std::isfinite(spec.height)) {
    throw std::invalid_argument("slab_tiling: height must be positive");
  }
  if (spec.nx < 1 || spec.ny < 1) {
    throw std::invalid_argument("slab_tiling: periods must be at least 1");
  }

  const auto P = [](std::int64_t i, std::int64_t j, int z) {
    return Pt{60 * i + 30 * j, 6 * j, z};
  };
  const auto UP = [](std::int64_t i, std::int64_t j, int z) {
    return Pt{60 * i + 30 * j + 30, 6 * j + 2, z};
  };
  const auto DN = [](std::int64_t i, std::int64_t j, int z) {
    return Pt{60 * i + 30 * j + 60, 6 * j + 4, z};
  };
  const auto MH = [](std::int64_t i, std::int64_t j, int z) {
    return Pt{60 * i + 30 * j + 30, 6 * j, z};
  };
  const auto MS = [](std::int64_t i, std::int64_t j, int z) {
    return Pt{60 * i + 30 * j + 15, 6 * j + 3, z};
  };
  const auto MD = [](std::int64_t i, std::int64_t j, int z) {
    return Pt{60 * i + 30 * j + 45, 6 * j + 3, z};
  };

  std::vector<ProtoTet> halved;  // emitted for the bottom half, then mirrored
  std::vector<ProtoTet> central;  // the self-conjugate band, emitted once

  for (std::int64_t i = 0; i < spec.nx; ++i) {
    for (std::int64_t j = 0; j < spec.ny; ++j) {
      // Triangle fans: floor triangle plus its rising apex.
      halved.push_back({P(i, j, kBase), P(i + 1, j, kBase), P(i, j + 1, kBase),
                        UP(i, j, kApex)});
      halved.push_back({P(i + 1, j, kBase), P(i, j + 1, kBase),
                        P(i + 1, j + 1, kBase), DN(i, j, kApex)});

      // Floor edge plus the two apexes flanking it.
      halved.push_back({P(i, j, kBase), P(i + 1, j, kBase), UP(i, j, kApex),
                        DN(i, j - 1, kApex)});
      halved.push_back({P(i, j, kBase), P(i, j + 1, kBase), UP(i, j, kApex),
                        DN(i - 1, j, kApex)});
      halved.push_back({P(i + 1, j, kBase), P(i, j + 1, kBase), UP(i, j, kApex),
                        DN(i, j, kApex)});

      // Fan around a floor vertex: its six surrounding apexes, its cap point.
      const std::array<Pt, 6> apex_ring = ring_sorted(
          P(i, j, kApex),
          {UP(i, j, kApex), UP(i - 1, j, kApex), UP(i, j - 1, kApex),
           DN(i - 1, j, kApex), DN(i, j - 1, kApex), DN(i - 1, j - 1, kApex)});
      for (std::size_t k = 0; k < 6; ++k) {
        halved.push_back({P(i, j, kBase), apex_ring[k], apex_ring[(k + 1) % 6],
                          P(i, j, kCap)});
      }

      // Two flanking apexes, the edge midpoint raised to the middle layer,
      // and one endpoint cap; per edge and endpoint.
      const std::array<std::array<Pt, 4>, 3> edge_sites = {{
          {UP(i, j, kApex), DN(i, j - 1, kApex), MH(i, j, kMid), P(i, j, kCap)},
          {UP(i, j, kApex), DN(i - 1, j, kApex), MS(i, j, kMid), P(i, j, kCap)},
          {UP(i, j, kApex), DN(i, j, kApex), MD(i, j, kMid), P(i + 1, j, kCap)},
      }};
      const std::array<Pt, 3> other_end = {P(i + 1, j, kCap), P(i, j + 1, kCap),
                                           P(i, j + 1, kCap)};
      for (std::size_t e = 0; e < 3; ++e) {
        halved.push_back(edge_sites[e]);
        ProtoTet t = edge_sites[e];
        t[3] = other_end[e];
        halved.push_back(t);
      }

      // Per triangle corner: the two adjacent raised midpoints, the corner
      // cap, the apex.
      halved.push_back({MH(i, j, kMid), MS(i, j, kMid), P(i, j, kCap), UP(i, j, kApex)});
      halved.push_back({MH(i, j, kMid), MD(i, j, kMid), P(i + 1, j, kCap), UP(i, j, kApex)});
      halved.push_back({MS(i, j, kMid), MD(i, j, kMid), P(i, j + 1, kCap), UP(i, j, kApex)});
      halved.push_back({MD(i, j, kMid), MS(i + 1, j, kMid), P(i + 1, j, kCap), DN(i, j, kApex)});
      halved.push_back({MD(i, j, kMid), MH(i, j + 1, kMid), P(i, j + 1, kCap), DN(i, j, kApex)});
      halved.push_back({MS(i + 1, j, kMid), MH(i, j + 1, kMid), P(i + 1, j + 1, kCap), DN(i, j, kApex)});

      // Per triangle: its three raised midpoints and the apex.
      halved.push_back({MH(i, j, kMid), MS(i, j, kMid), MD(i, j, kMid), UP(i, j, kApex)});
      halved.push_back({MD(i, j, kMid), MS(i + 1, j, kMid), MH(i, j + 1, kMid), DN(i, j, kApex)});

      // Self-conjugate band around the middle layer: the ring of raised
      // midpoints around a vertex, its cap, and the cap's mirror image.
      const std::array<Pt, 6> mid_ring = ring_sorted(
          P(i, j, kMid),
          {MH(i, j, kMid), MH(i - 1, j, kMid), MS(i, j, kMid), MS(i, j - 1, kMid),
           MD(i - 1, j, kMid), MD(i, j - 1, kMid)});
      for (std::size_t k = 0; k < 6; ++k) {
        central.push_back({mid_ring[k], mid_ring[(k + 1) % 6], P(i, j, kCap),
                           P(i, j, kCapMirror)});
      }
    }
  }

  std::vector<ProtoTet> protos;
  protos.reserve(2 * halved.size() + central.size());
  for (const ProtoTet& t : halved) protos.push_back(t);
  for (const ProtoTet& t : halved) {
    protos.push_back({mirrored(t[0]), mirrored(t[1]), mirrored(t[2]), mirrored(t[3])});
  }
  for (const ProtoTet& t : central) protos.push_back(t);

  const std::int64_t k5 = std::llround(std::sqrt(75.0) * static_cast<double>(kGrid));
  const auto materialize = [&](const Pt& p) {
    return Point3{p.x * kGrid, p.ym * k5, std::int64_t{p.z} * kGrid};
  };

  Lattice lattice;
  lattice.basis = {Point3{60 * spec.nx * kGrid, 0, 0},
                   Point3{30 * spec.ny * kGrid, 6 * spec.ny * k5, 0},
                   Point3{0, 0, std::int64_t{kTop} * kGrid}};

  std::map<Point3, std::int32_t> index_of;
  std::vector<Point3> motif;
  const auto to_ref = [&](const Point3& p, bool registering) {
    std::array<std::int64_t, 3> shifts = {0, 0, 0};
    const Point3 reduced = reduce_into_cell(p, lattice, 2, &shifts);
    if (registering && index_of.find(reduced) == index_of.end()) {
      index_of.emplace(reduced, static_cast<std::int32_t>(motif.size()));
      motif.push_back(reduced);
    }
    VertexRef r;
    r.v = index_of.at(reduced);
    r.off = {static_cast<std::int32_t>(shifts[0]),
             static_cast<std::int32_t>(shifts[1]), 0};
    return r;
  };

  for (const ProtoTet& t : protos) {
    for (const Pt& p : t) to_ref(materialize(p), true);
  }

  const double scale = spec.height / (static_cast<double>(kTop) * static_cast<double>(kGrid));
  PeriodicPointSet points(Periodicity::kSlab, lattice, motif, scale);

  std::set<TetRef> unique;
  for (const ProtoTet& t : protos) {
    TetRef ref;
    for (std::size_t c = 0; c < 4; ++c) ref.v[c] = to_ref(materialize(t[c]), false);
    unique.insert(canonical_tet(points, ref));
  }
  const std::size_t expected =
      56 * static_cast<std::size_t>(spec.nx) * static_cast<std::size_t>(spec.ny);
  if (unique.size() != expected) {
    throw std::logic_error("slab_tiling: unexpected tetrahedron orbit count");
  }
  return TetMesh(std::move(points), {unique.begin(), unique.end()});
}

SlabLayerReport slab_layer_report(const TetMesh& mesh) {
  if (mesh.points().periodicity() != Periodicity::kSlab) {
    throw std::invalid_argument("slab_layer_report: mesh is not a slab tiling");
  }
  static const std::set<std::array<int, 4>> known = [] {
    std::set<std::array<int, 4>> s;
    const auto add = [&s](std::array<int, 4> layers, bool with_mirror) {
      std::sort(layers.begin(), layers.end());
      s.insert(layers);
      if (with_mirror) {
        for (int& z : layers) z = kTop - z;
        std::sort(layers.begin(), layers.end());
        s.insert(layers);
      }
    };
    add({kBase, kBase, kBase, kApex}, true);
    add({kBase, kBase, kApex, kApex}, true);
    add({kBase, kApex, kApex, kCap}, true);
    add({kApex, kApex, kMid, kCap}, true);
    add({kApex, kCap, kMid, kMid}, true);
    add({kApex, kMid, kMid, kMid}, true);
    add({kCap, kMid, kMid, kCapMirror}, false);
    return s;
  }();

  SlabLayerReport report;
  for (const TetRef& t : mesh.tets()) {
    std::array<int, 4> layers;
    for (std::size_t c = 0; c < 4; ++c) {
      const std::int64_t z = mesh.position(t.v[c]).z;
      if (z % kGrid != 0) {
        throw std::invalid_argument("slab_layer_report: unrecognized layer height");
      }
      layers[c] = static_cast<int>(z / kGrid);
    }
    std::sort(layers.begin(), layers.end());
    if (known.find(layers) == known.end()) {
      throw std::invalid_argument("slab_layer_report: unrecognized layer pattern");
    }
    std::string key = std::to_string(layers[0]);
    for (std::size_t c = 1; c < 4; ++c) key += "-" + std::to_string(layers[c]);
    ++report.counts[key];
    ++report.total;
  }
  return report;
}

}  // namespace acutile
