#include "acutile/shapes.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace acutile {
namespace {

constexpr std::int64_t kStep = std::int64_t{1} << 32;

Tetrahedron from_integers(const std::array<std::array<std::int64_t, 3>, 4>& c) {
  std::array<Point3, 4> v;
  for (std::size_t i = 0; i < 4; ++i) {
    v[i] = {c[i][0] * kStep, c[i][1] * kStep, c[i][2] * kStep};
  }
  return Tetrahedron(v, kDefaultScale);
}

bool parse_goldberg(const std::string& name, double* a, double* e) {
  const std::string prefix = "Goldberg(";
  if (!name.starts_with(prefix) || !name.ends_with(")")) return false;
  const std::string args = name.substr(prefix.size(), name.size() - prefix.size() - 1);
  const std::size_t comma = args.find(',');
  if (comma == std::string::npos) return false;
  char* end = nullptr;
  const std::string first = args.substr(0, comma);
  const std::string second = args.substr(comma + 1);
  *a = std::strtod(first.c_str(), &end);
  if (end != first.c_str() + first.size()) return false;
  *e = std::strtod(second.c_str(), &end);
  if (end != second.c_str() + second.size()) return false;
  return true;
}

}  // namespace

Tetrahedron reference_tetrahedron(const std::string& name) {
  if (name == "Sommerville I") {
    return from_integers({{{0, 0, 0}, {2, 0, 0}, {1, 1, 1}, {1, 1, 0}}});
  }
  if (name == "Sommerville II") {
    return from_integers({{{0, 0, 0}, {2, 0, 0}, {1, 1, 1}, {1, 1, -1}}});
  }
  if (name == "Sommerville III") {
    return from_integers({{{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {1, 1, 1}}});
  }
  if (name == "Sommerville IV") {
    return from_integers({{{0, 0, 0}, {4, 0, 0}, {2, 2, 2}, {2, 1, 0}}});
  }
  if (name == "cube5-center" || name == "regular") {
    return from_integers({{{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}}});
  }
  if (name == "cube5-corner" || name == "cube-corner") {
    return from_integers({{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}}});
  }
  if (name == "cube6") {
    return from_integers({{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}}});
  }
  double a = 0.0;
  double e = 0.0;
  if (parse_goldberg(name, &a, &e)) return goldberg_tetrahedron(a, e);
  throw std::invalid_argument("reference_tetrahedron: unknown name '" + name + "'");
}

Tetrahedron goldberg_tetrahedron(double a, double e) {
  if (!(a > 0.0) || !(e > 0.0)) {
    throw std::invalid_argument("goldberg_tetrahedron: parameters must be positive");
  }
  const double shortest = std::min(3.0 * a, std::sqrt(a * a + e * e));
  const double scale = shortest / 4294967296.0;
  const std::array<std::array<double, 3>, 4> corners = {{
      {0.0, 0.0, 0.0},
      {0.0, 0.0, 3.0 * a},
      {e, 0.0, a},
      {e / 2.0, e * std::sqrt(3.0) / 2.0, 2.0 * a},
  }};
  return Tetrahedron::from_user(corners, scale);
}

std::vector<Point3> five_point_configuration() {
  // Grid unit 1/300: the slack 1/100 becomes 3, the unit edge 300, 2/3 + 1/100
  // becomes 203.
  return {Point3{-3, -3, -3}, Point3{300, 0, 0}, Point3{0, 300, 0},
          Point3{0, 0, 300}, Point3{203, 203, 203}};
}

std::vector<std::string> reference_tetrahedron_names() {
  return {"Sommerville I", "Sommerville II", "Sommerville III", "Sommerville IV",
          "cube5-center",  "cube5-corner",   "cube6",           "regular",
          "cube-corner"};
}

}  // namespace acutile
