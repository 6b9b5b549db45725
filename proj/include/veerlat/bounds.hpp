#pragma once

#include <cstdint>
#include <string>

namespace veerlat {

// A distance statement produced by one of the bound calculators.  The rule
// string names the branch that fired so that reports can show which
// hypothesis carried the estimate.
struct DistanceBound {
  enum class Kind { Exact, Upper, Lower };
  Kind kind = Kind::Upper;
  std::int64_t value = 0;
  std::string rule;
};

inline const char* kind_name(DistanceBound::Kind k) {
  switch (k) {
    case DistanceBound::Kind::Exact: return "exact";
    case DistanceBound::Kind::Upper: return "upper";
    case DistanceBound::Kind::Lower: return "lower";
  }
  return "unknown";
}

// Upper bound 2(n+1) from the smallest n >= 0 with 2^n * i <= zeta^(n+1),
// where zeta >= 3 is the ambient complexity parameter.  Fails with
// NoBoundApplicable if no n <= 64 satisfies the inequality.
DistanceBound bowditchBound(std::int64_t i, std::int64_t zeta);

// Upper bound from the Euler-characteristic thresholds, first applicable
// rule: i <= 8|chi|+4 gives 15; i <= 32|chi|+8 gives 18; otherwise the
// generic logarithmic bound ceil(2*log2(i)) + 2, clamped to at least 18 so
// the chain stays monotone in i.  i = 0 means disjoint classes, bound 1.
// chi must be negative.
DistanceBound chiIntersectionBound(std::int64_t i, std::int64_t chi);

// Diameter bound for the set of essential classes carried by a graph that is
// properly embedded in a surface of Euler characteristic chi: with at most
// 2|chi|+1 vertices the carried classes pairwise meet few times and the
// diameter is at most 15; larger graphs fall back to chiIntersectionBound at
// the crossing estimate 4 * vertexCount.  An inessential graph (carrying no
// essential class) is rejected.
DistanceBound diamCarriedClasses(std::int64_t vertexCount, std::int64_t chi, bool essential);

// Exact ceil(log2(n)) for n >= 1.
int ceilLog2(std::int64_t n);

} // namespace veerlat
