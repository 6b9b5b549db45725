#pragma once

#include <cstdint>
#include <vector>

#include "veerlat/quadratic.hpp"
#include "veerlat/slope.hpp"

namespace veerlat {

// A vertex of the annular graph about a core slope, represented by the
// canonical straight lift of either a rational slope class or an exact
// eigen-slope value.  Distances between distinct classes follow the fixed
// canonical-lift convention d = 1 + |n*|; the diameter-of-union semantics at
// call sites treats equal classes as a single vertex (contributing 0).  The
// +-1 slack this convention can introduce is annotated on every report that
// consumes these values.
struct AnnularClass {
  bool isEigen = false;
  Slope slope;   // valid when !isEigen
  QuadVal value; // valid when isEigen

  static AnnularClass ofSlope(Slope s) {
    AnnularClass c;
    c.isEigen = false;
    c.slope = std::move(s);
    return c;
  }
  static AnnularClass ofEigen(QuadVal v) {
    AnnularClass c;
    c.isEigen = true;
    c.value = std::move(v);
    return c;
  }

  bool operator==(const AnnularClass& o) const {
    if (isEigen != o.isEigen) return false;
    return isEigen ? (value == o.value) : (slope == o.slope);
  }

  std::string str() const { return isEigen ? veerlat::str(value) : slope.str(); }
};

// Signed intersection pairing of the direction vectors underlying two
// classes, as an exact quadratic value.
QuadVal pairingDet(const AnnularClass& a, const AnnularClass& b);

// True iff the class crosses the core (nonzero pairing); eigen classes always
// cross every rational core.
bool crossesCore(const Slope& core, const AnnularClass& a);

// Exact distance between the canonical lifts about the core: 1 + |n*| where
// n* minimizes |det(a,b) + n * det(a,core) * det(core,b)| over the integers
// (ties resolved toward the candidate of smaller absolute value).  Equal
// classes return 1 by the fixed single-lift convention.  Requires both
// classes to cross the core.
std::int64_t annularDistance(const Slope& core, const AnnularClass& a, const AnnularClass& b);

// Diameter of a set of annular classes under the union convention: maximum of
// annularDistance over pairs of distinct classes, 0 for empty or singleton
// class sets.  Classes not crossing the core are rejected by the pairwise
// calls.
std::int64_t annularDiameter(const Slope& core, const std::vector<AnnularClass>& classes);

} // namespace veerlat
