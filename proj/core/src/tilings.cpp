#include "acutile/tilings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>

#include "acutile/delaunay.hpp"
#include "acutile/geom.hpp"
#include "acutile/validate.hpp"

namespace acutile {

namespace {

// Grid units per user unit; all four tilings use edge length 4 user units.
constexpr std::int64_t kUnit = std::int64_t{1} << 32;

// Snaps an irrational constant (in user units) to the grid, rounded to a
// multiple of 24 so that midpoints, triangle centers, and square dots stay on
// integer coordinates.
std::int64_t snap24(double value) {
  return 24 * std::llround(value * static_cast<double>(kUnit) / 24.0);
}

std::int64_t exact_div(std::int64_t value, std::int64_t divisor) {
  if (value % divisor != 0) {
    throw std::logic_error("tiling: coordinate not divisible as required");
  }
  return value / divisor;
}

Point3 div_point(const Point3& p, std::int64_t divisor) {
  return Point3{exact_div(p.x, divisor), exact_div(p.y, divisor),
                exact_div(p.z, divisor)};
}

Point3 reduce_planar(const Point3& p, const Lattice& lattice) {
  return reduce_into_cell(p, lattice, 2);
}

// Translates a set of points so that its lexicographically least member lies
// in the fundamental cell; used as an orbit key for edges and triangles.
template <std::size_t N>
std::array<Point3, N> orbit_key(std::array<Point3, N> pts, const Lattice& lattice) {
  std::sort(pts.begin(), pts.end());
  const Point3 anchor = pts.front();
  const Point3 reduced = reduce_planar(anchor, lattice);
  const Point3 shift = reduced - anchor;
  for (auto& p : pts) p = p + shift;
  return pts;
}

BigInt min_image_sqdist(const Point3& a, const Point3& b,
                        const std::array<Point3, 2>& period, bool skip_zero) {
  BigInt best = -1;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      if (skip_zero && i == 0 && j == 0) continue;
      const Point3 image = b + i * period[0] + j * period[1];
      BigInt d = squared_distance(a, image);
      if (best < 0 || d < best) best = std::move(d);
    }
  }
  return best;
}

// Finds every equilateral triangle of edge length 4 (within 0.1% tolerance)
// spanned by vertex images near the cell, one per translation orbit.
std::vector<std::array<Point3, 3>> detect_triangles(
    const std::vector<Point3>& vertices, const Lattice& lattice) {
  std::vector<Point3> images;
  for (const Point3& v : vertices) {
    for (int i = -1; i <= 1; ++i) {
      for (int j = -1; j <= 1; ++j) {
        images.push_back(v + i * lattice.basis[0] + j * lattice.basis[1]);
      }
    }
  }
  const BigInt unit2 = BigInt(kUnit) * kUnit;
  const BigInt lo = 15968016 * unit2;  // (0.999 * 4)^2 * 10^6
  const BigInt hi = 16032016 * unit2;  // (1.001 * 4)^2 * 10^6
  const auto edge_like = [&](const Point3& a, const Point3& b) {
    const BigInt d = 1000000 * squared_distance(a, b);
    return lo <= d && d <= hi;
  };
  std::set<std::array<Point3, 3>> found;
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      if (!edge_like(images[i], images[j])) continue;
      for (std::size_t k = j + 1; k < images.size(); ++k) {
        if (!edge_like(images[i], images[k])) continue;
        if (!edge_like(images[j], images[k])) continue;
        found.insert(orbit_key<3>({images[i], images[j], images[k]}, lattice));
      }
    }
  }
  return {found.begin(), found.end()};
}

void derive_vertices_and_dots(SquareTriangleTiling& t) {
  const Lattice lattice = t.planar_lattice();

  std::set<Point3> vertex_set;
  for (const auto& face : t.faces) {
    if (face.size() != 3 && face.size() != 4) {
      throw std::logic_error("tiling: face must have 3 or 4 corners");
    }
    for (const Point3& c : face) vertex_set.insert(reduce_planar(c, lattice));
  }
  t.vertices.assign(vertex_set.begin(), vertex_set.end());

  std::vector<Dot> dots;
  std::set<std::array<Point3, 2>> edges;
  for (const auto& face : t.faces) {
    const std::size_t n = face.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto key = orbit_key<2>({face[i], face[(i + 1) % n]}, lattice);
      if (!edges.insert(key).second) continue;
      const Point3 mid = div_point(key[0] + key[1], 2);
      dots.push_back({reduce_planar(mid, lattice), DotKind::kEdgeMidpoint});
    }
    if (n == 3) {
      const Point3 center = div_point(face[0] + face[1] + face[2], 3);
      dots.push_back({reduce_planar(center, lattice), DotKind::kTriangleCenter});
    } else {
      for (std::size_t i = 0; i < 4; ++i) {
        const Point3 p = div_point(3 * (face[i] + face[(i + 1) % 4]) +
                                       face[(i + 2) % 4] + face[(i + 3) % 4],
                                   8);
        dots.push_back({reduce_planar(p, lattice), DotKind::kSquareSide});
      }
    }
  }

  std::sort(dots.begin(), dots.end(), [](const Dot& a, const Dot& b) {
    return a.position < b.position;
  });
  for (std::size_t i = 0; i + 1 < dots.size(); ++i) {
    if (dots[i].position == dots[i + 1].position) {
      throw std::logic_error("tiling: coincident dots");
    }
  }
  t.dots = std::move(dots);
}

bool lifted_structure_valid(const SquareTriangleTiling& t,
                            const std::vector<bool>& dark) {
  try {
    const PeriodicPointSet pps = tcp_point_set(t, dark);
    const TetMesh mesh = periodic_delaunay(pps, 1);
    return tcp_check(mesh).passed && check_acute_all(mesh).passed;
  } catch (const std::runtime_error&) {
    return false;
  }
}

}  // namespace

Lattice SquareTriangleTiling::planar_lattice() const {
  Lattice lattice;
  lattice.basis = {period[0], period[1], Point3{0, 0, 0}};
  return lattice;
}

SquareTriangleTiling builtin_tiling(const std::string& name) {
  const std::int64_t u = kUnit;
  SquareTriangleTiling t;
  t.name = name;
  if (name == "Z") {
    const std::int64_t s3 = snap24(std::sqrt(3.0));
    t.period = {Point3{4 * u, 0, 0}, Point3{2 * u, 2 * s3, 0}};
    t.faces = {
        {Point3{0, 0, 0}, Point3{4 * u, 0, 0}, Point3{2 * u, 2 * s3, 0}},
        {Point3{4 * u, 0, 0}, Point3{6 * u, 2 * s3, 0}, Point3{2 * u, 2 * s3, 0}},
    };
  } else if (name == "A15") {
    t.period = {Point3{4 * u, 0, 0}, Point3{0, 4 * u, 0}};
    t.faces = {
        {Point3{0, 0, 0}, Point3{4 * u, 0, 0}, Point3{4 * u, 4 * u, 0},
         Point3{0, 4 * u, 0}},
    };
  } else if (name == "H") {
    const std::int64_t s3 = snap24(std::sqrt(3.0));
    t.period = {Point3{4 * u, 0, 0}, Point3{2 * u, 4 * u + 2 * s3, 0}};
    t.faces = {
        {Point3{0, 0, 0}, Point3{4 * u, 0, 0}, Point3{4 * u, 4 * u, 0},
         Point3{0, 4 * u, 0}},
        {Point3{0, 4 * u, 0}, Point3{4 * u, 4 * u, 0},
         Point3{2 * u, 4 * u + 2 * s3, 0}},
        {Point3{4 * u, 4 * u, 0}, Point3{6 * u, 4 * u + 2 * s3, 0},
         Point3{2 * u, 4 * u + 2 * s3, 0}},
    };
  } else if (name == "sigma") {
    const std::int64_t s2 = snap24(std::sqrt(2.0));
    const std::int64_t s6 = snap24(std::sqrt(6.0));
    const std::int64_t h = s2 + s6;  // half the period
    t.period = {Point3{2 * h, 0, 0}, Point3{0, 2 * h, 0}};
    t.faces = {
        {Point3{s2, s6, 0}, Point3{-s6, s2, 0}, Point3{-s2, -s6, 0},
         Point3{s6, -s2, 0}},
        {Point3{h + s6, h + s2, 0}, Point3{h - s2, h + s6, 0},
         Point3{h - s6, h - s2, 0}, Point3{h + s2, h - s6, 0}},
    };
    std::set<Point3> corner_orbits;
    for (const auto& face : t.faces) {
      for (const Point3& c : face) {
        corner_orbits.insert(reduce_planar(c, t.planar_lattice()));
      }
    }
    const std::vector<Point3> corners(corner_orbits.begin(), corner_orbits.end());
    for (const auto& tri : detect_triangles(corners, t.planar_lattice())) {
      t.faces.push_back({tri[0], tri[1], tri[2]});
    }
    if (t.faces.size() != 6) {
      throw std::logic_error("tiling: sigma triangle detection failed");
    }
  } else {
    throw std::invalid_argument("builtin_tiling: unknown tiling \"" + name + "\"");
  }
  derive_vertices_and_dots(t);
  return t;
}

std::vector<std::vector<bool>> enumerate_dot_colorings(
    const SquareTriangleTiling& t, std::size_t limit) {
  const std::size_t n = t.dots.size();
  const BigInt threshold = 81 * BigInt(kUnit) * kUnit;  // (1.8 units)^2, times 25
  for (std::size_t i = 0; i < n; ++i) {
    if (25 * min_image_sqdist(t.dots[i].position, t.dots[i].position, t.period,
                              true) < threshold) {
      return {};  // a dot conflicts with its own translate
    }
  }
  std::vector<std::vector<std::size_t>> conflicts(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (25 * min_image_sqdist(t.dots[i].position, t.dots[j].position, t.period,
                                false) < threshold) {
        conflicts[j].push_back(i);
      }
    }
  }

  std::vector<std::vector<bool>> out;
  std::vector<char> color(n, 0);
  const auto search = [&](const auto& self, std::size_t k) -> bool {
    if (out.size() >= limit) return false;
    if (k == n) {
      std::vector<bool> candidate(n);
      for (std::size_t i = 0; i < n; ++i) candidate[i] = color[i] != 0;
      if (lifted_structure_valid(t, candidate)) out.push_back(std::move(candidate));
      return out.size() < limit;
    }
    for (const char c : {char{1}, char{0}}) {
      color[k] = c;
      bool consistent = true;
      for (const std::size_t j : conflicts[k]) {
        if (color[j] == c) {
          consistent = false;
          break;
        }
      }
      if (consistent && !self(self, k + 1)) return false;
    }
    return true;
  };
  search(search, 0);
  return out;
}

std::vector<bool> find_dot_coloring(const SquareTriangleTiling& t) {
  auto found = enumerate_dot_colorings(t, 1);
  if (found.empty()) {
    throw std::runtime_error("find_dot_coloring: no valid height assignment for \"" +
                             t.name + "\"");
  }
  return std::move(found.front());
}

PeriodicPointSet tcp_point_set(const SquareTriangleTiling& t,
                               const std::vector<bool>& dark) {
  if (dark.size() != t.dots.size()) {
    throw std::invalid_argument("tcp_point_set: coloring size mismatch");
  }
  Lattice lattice;
  lattice.basis = {t.period[0], t.period[1], Point3{0, 0, 4 * kUnit}};
  std::vector<Point3> points;
  points.reserve(2 * t.vertices.size() + t.dots.size());
  for (const Point3& v : t.vertices) {
    points.push_back(Point3{v.x, v.y, 0});
    points.push_back(Point3{v.x, v.y, 2 * kUnit});
  }
  for (std::size_t i = 0; i < t.dots.size(); ++i) {
    const Point3& p = t.dots[i].position;
    points.push_back(Point3{p.x, p.y, dark[i] ? 3 * kUnit : kUnit});
  }
  return PeriodicPointSet(Periodicity::kFull, lattice, points);
}

PeriodicPointSet tcp_point_set(const SquareTriangleTiling& t) {
  return tcp_point_set(t, find_dot_coloring(t));
}

}  // namespace acutile
