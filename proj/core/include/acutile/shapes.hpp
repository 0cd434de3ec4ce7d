#pragma once

#include <string>
#include <vector>

#include "acutile/geom.hpp"

namespace acutile {

// Fixed catalogue of reference tetrahedra: "Sommerville I" through
// "Sommerville IV", "cube5-center", "cube5-corner", "cube6", "regular",
// "cube-corner", plus the parameterized "Goldberg(a,e)" family. Throws
// std::invalid_argument for unknown names.
Tetrahedron reference_tetrahedron(const std::string& name);

// Member of the Goldberg family with apex edge 3a and base width e; requires
// a > 0 and e > 0. Its squared edge lengths obey b^2 = a^2 + e^2 and
// c^2 = 4a^2 + e^2 for the two slanted edge classes.
Tetrahedron goldberg_tetrahedron(double a, double e);

// The fixed catalogue names, without the parameterized family.
std::vector<std::string> reference_tetrahedron_names();

// Five points (indices 0..4 are a..e) whose tetrahedra abcd and bcde are both
// acute and share the face bcd, yet fail the empty-ball criterion; the
// empty-ball decomposition of the five points is instead three tetrahedra
// around edge ae with exact 120-degree dihedrals there. Exact at scale 1/300.
std::vector<Point3> five_point_configuration();
inline constexpr double kFivePointScale = 1.0 / 300.0;

}  // namespace acutile
