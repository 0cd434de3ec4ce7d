#pragma once

#include <array>
#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace acutile {

using BigInt = boost::multiprecision::cpp_int;

// Coordinates live on a signed integer grid; a point's position in user space
// is grid value times the mesh scale. The default grid step is 2^-32.
inline constexpr double kDefaultScale = 1.0 / 4294967296.0;

// Grid coordinates are capped so that coordinate differences stay exactly
// representable in double, which the floating-point predicate filters rely on.
inline constexpr std::int64_t kMaxGridCoord = std::int64_t{1} << 52;

struct Point3 {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  friend constexpr auto operator<=>(const Point3&, const Point3&) = default;
};

constexpr Point3 operator+(const Point3& a, const Point3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

constexpr Point3 operator-(const Point3& a, const Point3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

constexpr Point3 operator*(std::int64_t k, const Point3& p) {
  return {k * p.x, k * p.y, k * p.z};
}

// Rounds one user-space coordinate onto the grid. Throws std::invalid_argument
// for non-finite input and std::out_of_range when the result would exceed the
// grid bound.
std::int64_t snap_coordinate(double value, double scale);

Point3 snap_point(const std::array<double, 3>& p, double scale);

BigInt squared_distance(const Point3& a, const Point3& b);

// Exact det [[r0], [r1], [r2]] of three coordinate rows.
BigInt det3x3(const Point3& r0, const Point3& r1, const Point3& r2);

// Sign of det [b-a; c-a; d-a]: +1 when d lies on the positive side of the
// oriented plane through a, b, c. Exact; a floating-point filter handles the
// easy cases.
int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d);

// Sphere membership for e against the circumsphere of a positively oriented
// tetrahedron (a, b, c, d): +1 strictly inside, 0 on the sphere, -1 strictly
// outside. Throws std::invalid_argument unless orient3d(a, b, c, d) > 0.
int insphere(const Point3& a, const Point3& b, const Point3& c, const Point3& d,
             const Point3& e);

// Tie-free variant of insphere: exact zeros are resolved by a symbolic
// perturbation of the lifting map, so the result is always +1 or -1. The
// perturbation has two stages. First the lift gains tiny multiples of the
// quadratic monomials x^2, y^2, z^2, xy, xz, yz, which resolves every
// configuration that is not affinely degenerate in a coordinate plane. Any
// remainder falls through to independent per-point lift offsets whose
// strength decreases with the point's rank, so ranks must identify points
// globally: equal coordinates passed under different ranks will behave as
// different points.
int insphere_perturbed(const Point3& a, const Point3& b, const Point3& c,
                       const Point3& d, const Point3& e,
                       const std::array<std::int64_t, 5>& ranks);

// Sign of (90 degrees - dihedral angle) along edge (a, b) in the tetrahedron
// (a, b, c, d): +1 acute, 0 right, -1 obtuse. Exact.
int dihedral_acute_sign(const Point3& a, const Point3& b, const Point3& c,
                        const Point3& d);

// Dihedral angle in degrees along edge (a, b), between the facets (a, b, c)
// and (a, b, d).
double dihedral_angle_degrees(const Point3& a, const Point3& b, const Point3& c,
                              const Point3& d);

class Tetrahedron {
 public:
  // Normalizes to positive orientation (swapping the last two vertices when
  // needed) and throws std::invalid_argument when the four points are
  // coplanar.
  explicit Tetrahedron(const std::array<Point3, 4>& vertices,
                       double scale = kDefaultScale);

  // Snaps user-space corners onto the grid first.
  static Tetrahedron from_user(const std::array<std::array<double, 3>, 4>& corners,
                               double scale = kDefaultScale);

  const Point3& vertex(int i) const { return v_[static_cast<std::size_t>(i)]; }
  const std::array<Point3, 4>& vertices() const { return v_; }
  double scale() const { return scale_; }

 private:
  std::array<Point3, 4> v_;
  double scale_;
};

struct DihedralAngle {
  int i = 0;  // edge endpoints as vertex indices, i < j
  int j = 0;
  double degrees = 0.0;
};

struct DihedralSet {
  // Fixed edge order: (0,1), (0,2), (0,3), (1,2), (1,3), (2,3).
  std::array<DihedralAngle, 6> angles;

  double min_degrees() const;
  double max_degrees() const;
};

DihedralSet dihedral_angles(const Tetrahedron& t);

// True when all six dihedral angles are strictly acute. Decided by exact sign
// tests, never by comparing a floating-point angle against 90.
bool is_acute(const Tetrahedron& t);

enum class Projection {
  kInside,
  kOnBoundary,
  kOutside,
};

// For each vertex, classifies the orthogonal projection of that vertex onto
// the plane of the opposite facet against the facet triangle. Exact.
std::array<Projection, 4> vertex_projection_test(const Tetrahedron& t);

struct FaceAngles {
  // by_facet[f] holds the angles of the facet opposite vertex f, at that
  // facet's vertices in increasing vertex-index order.
  std::array<std::array<double, 3>, 4> by_facet;
};

FaceAngles face_angles(const Tetrahedron& t);

// True when all twelve face angles are strictly acute (exact sign tests).
bool all_face_angles_acute(const Tetrahedron& t);

struct ExactCircumcenter {
  // Center = (nx, ny, nz) / den in grid coordinates, with den > 0, and
  // squared circumradius = r2_num / den^2 in squared grid units.
  BigInt nx, ny, nz, den;
  BigInt r2_num;

  // (nx, ny, nz, den) divided by their common factor; equal keys identify
  // equal centers.
  std::array<BigInt, 4> reduced_key() const;
};

ExactCircumcenter exact_circumcenter(const Point3& a, const Point3& b,
                                     const Point3& c, const Point3& d);

struct Circumsphere {
  std::array<double, 3> center;  // user space
  double radius;                 // user space
};

Circumsphere circumsphere(const Tetrahedron& t);

// Circumradius divided by shortest edge length; dimensionless.
double radius_edge_ratio(const Tetrahedron& t);

}  // namespace acutile
