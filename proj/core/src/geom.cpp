#include "acutile/geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace acutile {
namespace {

// Relative error bounds for the floating-point filters, several orders of
// magnitude above the worst-case rounding of the expressions below; a filter
// miss only means falling through to the exact path.
constexpr double kOrientFilterEps = 1e-14;
constexpr double kInsphereFilterEps = 1e-12;

int sign_of(const BigInt& v) {
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

BigInt from_i128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u =
      neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt out = static_cast<std::uint64_t>(u >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(u);
  return neg ? BigInt(-out) : out;
}

__int128 dot_i128(const Point3& u, const Point3& v) {
  return static_cast<__int128>(u.x) * v.x + static_cast<__int128>(u.y) * v.y +
         static_cast<__int128>(u.z) * v.z;
}

BigInt dot_big(const Point3& u, const Point3& v) { return from_i128(dot_i128(u, v)); }

// det of the 4x4 matrix whose row i is (rows[i], lift[i]), expanded along the
// lift column.
BigInt lifted_det4_exact(const std::array<Point3, 4>& rows,
                         const std::array<BigInt, 4>& lift) {
  return -lift[0] * det3x3(rows[1], rows[2], rows[3]) +
         lift[1] * det3x3(rows[0], rows[2], rows[3]) -
         lift[2] * det3x3(rows[0], rows[1], rows[3]) +
         lift[3] * det3x3(rows[0], rows[1], rows[2]);
}

struct Row3d {
  double x, y, z;
};

double det3_double(const Row3d& r0, const Row3d& r1, const Row3d& r2) {
  return r0.x * (r1.y * r2.z - r1.z * r2.y) - r0.y * (r1.x * r2.z - r1.z * r2.x) +
         r0.z * (r1.x * r2.y - r1.y * r2.x);
}

double det3_perm(const Row3d& r0, const Row3d& r1, const Row3d& r2) {
  return std::abs(r0.x) * (std::abs(r1.y * r2.z) + std::abs(r1.z * r2.y)) +
         std::abs(r0.y) * (std::abs(r1.x * r2.z) + std::abs(r1.z * r2.x)) +
         std::abs(r0.z) * (std::abs(r1.x * r2.y) + std::abs(r1.y * r2.x));
}

Row3d diff_rows(const Point3& p, const Point3& q) {
  return {static_cast<double>(p.x - q.x), static_cast<double>(p.y - q.y),
          static_cast<double>(p.z - q.z)};
}

// Sign of the lifted 4x4 determinant for (a, b, c, d) against apex e, where
// each row carries the squared distance to e as its lift. Negative means e is
// strictly inside the circumsphere of a positively oriented (a, b, c, d).
int insphere_det_sign(const Point3& a, const Point3& b, const Point3& c,
                      const Point3& d, const Point3& e) {
  const Row3d ra = diff_rows(a, e);
  const Row3d rb = diff_rows(b, e);
  const Row3d rc = diff_rows(c, e);
  const Row3d rd = diff_rows(d, e);
  const double la = ra.x * ra.x + ra.y * ra.y + ra.z * ra.z;
  const double lb = rb.x * rb.x + rb.y * rb.y + rb.z * rb.z;
  const double lc = rc.x * rc.x + rc.y * rc.y + rc.z * rc.z;
  const double ld = rd.x * rd.x + rd.y * rd.y + rd.z * rd.z;

  const double det = -la * det3_double(rb, rc, rd) + lb * det3_double(ra, rc, rd) -
                     lc * det3_double(ra, rb, rd) + ld * det3_double(ra, rb, rc);
  const double perm = la * det3_perm(rb, rc, rd) + lb * det3_perm(ra, rc, rd) +
                      lc * det3_perm(ra, rb, rd) + ld * det3_perm(ra, rb, rc);
  if (std::abs(det) > kInsphereFilterEps * perm) return det > 0 ? 1 : -1;

  const std::array<Point3, 4> rows = {a - e, b - e, c - e, d - e};
  std::array<BigInt, 4> lift;
  for (int i = 0; i < 4; ++i) lift[static_cast<std::size_t>(i)] = dot_big(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(i)]);
  return sign_of(lifted_det4_exact(rows, lift));
}

void require_positive_base(const Point3& a, const Point3& b, const Point3& c,
                           const Point3& d) {
  if (orient3d(a, b, c, d) <= 0) {
    throw std::invalid_argument(
        "insphere: base tetrahedron must be positively oriented");
  }
}

BigInt quad_monomial(int k, const Point3& p) {
  const BigInt x = p.x;
  const BigInt y = p.y;
  const BigInt z = p.z;
  switch (k) {
    case 0: return x * x;
    case 1: return y * y;
    case 2: return z * z;
    case 3: return x * y;
    case 4: return x * z;
    default: return y * z;
  }
}

// Interior angle at vertex a of triangle (a, b, c), plus the exact sign of its
// cosine.
double corner_angle_degrees(const Point3& a, const Point3& b, const Point3& c) {
  const Point3 u = b - a;
  const Point3 v = c - a;
  const double n = dot_big(u, v).convert_to<double>();
  const double uu = dot_big(u, u).convert_to<double>();
  const double vv = dot_big(v, v).convert_to<double>();
  const double cosv = std::clamp(n / std::sqrt(uu * vv), -1.0, 1.0);
  return std::acos(cosv) * 180.0 / std::numbers::pi;
}

int corner_cos_sign(const Point3& a, const Point3& b, const Point3& c) {
  return sign_of(dot_big(b - a, c - a));
}

constexpr int kEdgePairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
constexpr int kEdgeOpposite[6][2] = {{2, 3}, {1, 3}, {1, 2}, {0, 3}, {0, 2}, {0, 1}};

}  // namespace

std::int64_t snap_coordinate(double value, double scale) {
  if (!std::isfinite(value) || !(scale > 0.0)) {
    throw std::invalid_argument("snap_coordinate: non-finite coordinate or bad scale");
  }
  const double grid = value / scale;
  if (!(std::abs(grid) <= static_cast<double>(kMaxGridCoord))) {
    throw std::out_of_range("snap_coordinate: coordinate exceeds grid range");
  }
  return std::llround(grid);
}

Point3 snap_point(const std::array<double, 3>& p, double scale) {
  return {snap_coordinate(p[0], scale), snap_coordinate(p[1], scale),
          snap_coordinate(p[2], scale)};
}

BigInt squared_distance(const Point3& a, const Point3& b) {
  const Point3 d = a - b;
  return dot_big(d, d);
}

// The 2x2 minors fit in 128 bits because each entry is below 2^53.
BigInt det3x3(const Point3& r0, const Point3& r1, const Point3& r2) {
  const __int128 m0 = static_cast<__int128>(r1.y) * r2.z - static_cast<__int128>(r1.z) * r2.y;
  const __int128 m1 = static_cast<__int128>(r1.x) * r2.z - static_cast<__int128>(r1.z) * r2.x;
  const __int128 m2 = static_cast<__int128>(r1.x) * r2.y - static_cast<__int128>(r1.y) * r2.x;
  return from_i128(m0) * r0.x - from_i128(m1) * r0.y + from_i128(m2) * r0.z;
}

int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  const Row3d r0 = diff_rows(b, a);
  const Row3d r1 = diff_rows(c, a);
  const Row3d r2 = diff_rows(d, a);
  const double det = det3_double(r0, r1, r2);
  const double perm = det3_perm(r0, r1, r2);
  if (std::abs(det) > kOrientFilterEps * perm) return det > 0 ? 1 : -1;
  return sign_of(det3x3(b - a, c - a, d - a));
}

int insphere(const Point3& a, const Point3& b, const Point3& c, const Point3& d,
             const Point3& e) {
  require_positive_base(a, b, c, d);
  return -insphere_det_sign(a, b, c, d, e);
}

int insphere_perturbed(const Point3& a, const Point3& b, const Point3& c,
                       const Point3& d, const Point3& e,
                       const std::array<std::int64_t, 5>& ranks) {
  require_positive_base(a, b, c, d);
  if (const int s = insphere_det_sign(a, b, c, d, e)) return -s;

  const std::array<Point3, 4> rows = {a - e, b - e, c - e, d - e};
  const std::array<Point3, 5> pts = {a, b, c, d, e};

  // Stage one: perturb the lift by the quadratic monomials, strongest first.
  for (int k = 0; k < 6; ++k) {
    std::array<BigInt, 4> lift;
    const BigInt ge = quad_monomial(k, e);
    for (int i = 0; i < 4; ++i) {
      lift[static_cast<std::size_t>(i)] = quad_monomial(k, pts[static_cast<std::size_t>(i)]) - ge;
    }
    if (const int s = sign_of(lifted_det4_exact(rows, lift))) return -s;
  }

  // Stage two: independent per-point lift offsets, dominant for the smallest
  // rank. The coefficient of point p's offset is its lift-column cofactor,
  // which reduces to a plain orientation determinant of the other four points.
  std::array<int, 5> order = {0, 1, 2, 3, 4};
  std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    return ranks[static_cast<std::size_t>(lhs)] < ranks[static_cast<std::size_t>(rhs)];
  });
  for (const int idx : order) {
    std::array<Point3, 4> q;
    int n = 0;
    for (int i = 0; i < 5; ++i) {
      if (i != idx) q[static_cast<std::size_t>(n++)] = pts[static_cast<std::size_t>(i)];
    }
    const BigInt d3 = det3x3(q[1] - q[0], q[2] - q[0], q[3] - q[0]);
    if (const int s = sign_of(d3)) return (idx % 2 == 0) ? -s : s;
  }
  throw std::logic_error("insphere_perturbed: degenerate base tetrahedron");
}

int dihedral_acute_sign(const Point3& a, const Point3& b, const Point3& c,
                        const Point3& d) {
  const Point3 e = b - a;
  const Point3 u = c - a;
  const Point3 v = d - a;
  // cos of the dihedral has the sign of (u.v)(e.e) - (u.e)(v.e).
  return sign_of(dot_big(u, v) * dot_big(e, e) - dot_big(u, e) * dot_big(v, e));
}

double dihedral_angle_degrees(const Point3& a, const Point3& b, const Point3& c,
                              const Point3& d) {
  const Point3 e = b - a;
  const Point3 u = c - a;
  const Point3 v = d - a;
  const BigInt ee = dot_big(e, e);
  const BigInt ue = dot_big(u, e);
  const BigInt ve = dot_big(v, e);
  const BigInt num = dot_big(u, v) * ee - ue * ve;
  const BigInt den1 = dot_big(u, u) * ee - ue * ue;
  const BigInt den2 = dot_big(v, v) * ee - ve * ve;
  if (den1 <= 0 || den2 <= 0) {
    throw std::invalid_argument("dihedral_angle_degrees: degenerate edge frame");
  }
  const double cosv = std::clamp(
      num.convert_to<double>() /
          std::sqrt(den1.convert_to<double>() * den2.convert_to<double>()),
      -1.0, 1.0);
  return std::acos(cosv) * 180.0 / std::numbers::pi;
}

Tetrahedron::Tetrahedron(const std::array<Point3, 4>& vertices, double scale)
    : v_(vertices), scale_(scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("Tetrahedron: scale must be positive");
  for (const Point3& p : v_) {
    for (const std::int64_t c : {p.x, p.y, p.z}) {
      if (c < -kMaxGridCoord || c > kMaxGridCoord) {
        throw std::out_of_range("Tetrahedron: grid coordinate out of range");
      }
    }
  }
  const int o = orient3d(v_[0], v_[1], v_[2], v_[3]);
  if (o == 0) throw std::invalid_argument("Tetrahedron: vertices are coplanar");
  if (o < 0) std::swap(v_[2], v_[3]);
}

Tetrahedron Tetrahedron::from_user(const std::array<std::array<double, 3>, 4>& corners,
                                   double scale) {
  std::array<Point3, 4> v;
  for (std::size_t i = 0; i < 4; ++i) v[i] = snap_point(corners[i], scale);
  return Tetrahedron(v, scale);
}

double DihedralSet::min_degrees() const {
  double m = angles[0].degrees;
  for (const DihedralAngle& a : angles) m = std::min(m, a.degrees);
  return m;
}

double DihedralSet::max_degrees() const {
  double m = angles[0].degrees;
  for (const DihedralAngle& a : angles) m = std::max(m, a.degrees);
  return m;
}

DihedralSet dihedral_angles(const Tetrahedron& t) {
  DihedralSet out;
  for (int k = 0; k < 6; ++k) {
    const int i = kEdgePairs[k][0];
    const int j = kEdgePairs[k][1];
    const int p = kEdgeOpposite[k][0];
    const int q = kEdgeOpposite[k][1];
    out.angles[static_cast<std::size_t>(k)] = {
        i, j, dihedral_angle_degrees(t.vertex(i), t.vertex(j), t.vertex(p), t.vertex(q))};
  }
  return out;
}

bool is_acute(const Tetrahedron& t) {
  for (int k = 0; k < 6; ++k) {
    if (dihedral_acute_sign(t.vertex(kEdgePairs[k][0]), t.vertex(kEdgePairs[k][1]),
                            t.vertex(kEdgeOpposite[k][0]),
                            t.vertex(kEdgeOpposite[k][1])) <= 0) {
      return false;
    }
  }
  return true;
}

std::array<Projection, 4> vertex_projection_test(const Tetrahedron& t) {
  std::array<Projection, 4> out;
  for (int f = 0; f < 4; ++f) {
    int facet[3];
    int n = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != f) facet[n++] = i;
    }
    // The projection of vertex f lies on the r side of facet edge (p, q)
    // exactly when the dihedral along (p, q) between facets (p, q, r) and
    // (p, q, f) is acute.
    bool outside = false;
    bool boundary = false;
    for (int k = 0; k < 3; ++k) {
      const int p = facet[k];
      const int q = facet[(k + 1) % 3];
      const int r = facet[(k + 2) % 3];
      const int s = dihedral_acute_sign(t.vertex(p), t.vertex(q), t.vertex(r), t.vertex(f));
      if (s < 0) outside = true;
      if (s == 0) boundary = true;
    }
    out[static_cast<std::size_t>(f)] = outside   ? Projection::kOutside
                                       : boundary ? Projection::kOnBoundary
                                                  : Projection::kInside;
  }
  return out;
}

FaceAngles face_angles(const Tetrahedron& t) {
  FaceAngles out;
  for (int f = 0; f < 4; ++f) {
    int facet[3];
    int n = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != f) facet[n++] = i;
    }
    for (int k = 0; k < 3; ++k) {
      out.by_facet[static_cast<std::size_t>(f)][static_cast<std::size_t>(k)] =
          corner_angle_degrees(t.vertex(facet[k]), t.vertex(facet[(k + 1) % 3]),
                               t.vertex(facet[(k + 2) % 3]));
    }
  }
  return out;
}

bool all_face_angles_acute(const Tetrahedron& t) {
  for (int f = 0; f < 4; ++f) {
    int facet[3];
    int n = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != f) facet[n++] = i;
    }
    for (int k = 0; k < 3; ++k) {
      if (corner_cos_sign(t.vertex(facet[k]), t.vertex(facet[(k + 1) % 3]),
                          t.vertex(facet[(k + 2) % 3])) <= 0) {
        return false;
      }
    }
  }
  return true;
}

std::array<BigInt, 4> ExactCircumcenter::reduced_key() const {
  using boost::multiprecision::gcd;
  BigInt g = gcd(gcd(abs(nx), abs(ny)), gcd(abs(nz), den));
  if (g == 0) g = 1;
  return {nx / g, ny / g, nz / g, den / g};
}

ExactCircumcenter exact_circumcenter(const Point3& a, const Point3& b,
                                     const Point3& c, const Point3& d) {
  const Point3 r1 = b - a;
  const Point3 r2 = c - a;
  const Point3 r3 = d - a;
  const BigInt det = det3x3(r1, r2, r3);
  if (det == 0) throw std::invalid_argument("exact_circumcenter: coplanar points");

  const BigInt l1 = dot_big(r1, r1);
  const BigInt l2 = dot_big(r2, r2);
  const BigInt l3 = dot_big(r3, r3);
  const auto minor = [](std::int64_t p1, std::int64_t q1, std::int64_t p2,
                        std::int64_t q2) {
    return from_i128(static_cast<__int128>(p1) * q2 - static_cast<__int128>(q1) * p2);
  };
  // Cramer solve of 2 * r_i . x = l_i for x = center - a; each numerator is
  // the row determinant with the matching coordinate column replaced by l.
  BigInt dx = l1 * minor(r2.y, r2.z, r3.y, r3.z) - l2 * minor(r1.y, r1.z, r3.y, r3.z) +
              l3 * minor(r1.y, r1.z, r2.y, r2.z);
  BigInt dy = -l1 * minor(r2.x, r2.z, r3.x, r3.z) + l2 * minor(r1.x, r1.z, r3.x, r3.z) -
              l3 * minor(r1.x, r1.z, r2.x, r2.z);
  BigInt dz = l1 * minor(r2.x, r2.y, r3.x, r3.y) - l2 * minor(r1.x, r1.y, r3.x, r3.y) +
              l3 * minor(r1.x, r1.y, r2.x, r2.y);
  BigInt den = 2 * det;
  if (den < 0) {
    den = -den;
    dx = -dx;
    dy = -dy;
    dz = -dz;
  }
  ExactCircumcenter out;
  out.r2_num = dx * dx + dy * dy + dz * dz;
  out.nx = BigInt(a.x) * den + dx;
  out.ny = BigInt(a.y) * den + dy;
  out.nz = BigInt(a.z) * den + dz;
  out.den = den;
  return out;
}

Circumsphere circumsphere(const Tetrahedron& t) {
  const ExactCircumcenter ec =
      exact_circumcenter(t.vertex(0), t.vertex(1), t.vertex(2), t.vertex(3));
  const double den = ec.den.convert_to<double>();
  const double s = t.scale();
  return {{ec.nx.convert_to<double>() / den * s, ec.ny.convert_to<double>() / den * s,
           ec.nz.convert_to<double>() / den * s},
          std::sqrt(ec.r2_num.convert_to<double>()) / den * s};
}

double radius_edge_ratio(const Tetrahedron& t) {
  const ExactCircumcenter ec =
      exact_circumcenter(t.vertex(0), t.vertex(1), t.vertex(2), t.vertex(3));
  BigInt min_e2 = squared_distance(t.vertex(0), t.vertex(1));
  for (int k = 1; k < 6; ++k) {
    min_e2 = std::min(min_e2, squared_distance(t.vertex(kEdgePairs[k][0]),
                                               t.vertex(kEdgePairs[k][1])));
  }
  return std::sqrt(ec.r2_num.convert_to<double>()) /
         (ec.den.convert_to<double>() * std::sqrt(min_e2.convert_to<double>()));
}

}  // namespace acutile
