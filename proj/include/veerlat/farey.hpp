#pragma once

#include <cstdint>

#include "veerlat/slope.hpp"

namespace veerlat {

// Exact graph distance between two reduced slopes in the graph whose vertices
// are slopes and whose edges are the determinant-+-1 pairs.  Exactness comes
// from restricting the search to the ladder of triangles crossed by the
// geodesic between the two vertices, which carries some geodesic of the graph.
std::int64_t fareyDistance(const Slope& a, const Slope& b);

} // namespace veerlat
