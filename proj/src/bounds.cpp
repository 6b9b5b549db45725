#include "veerlat/bounds.hpp"

#include <algorithm>

#include "veerlat/errors.hpp"
#include "veerlat/slope.hpp"

namespace veerlat {

int ceilLog2(std::int64_t n) {
  if (n < 1) fail(ErrorCode::Internal, "ceilLog2 needs n >= 1");
  int k = 0;
  std::int64_t pow = 1;
  while (pow < n) {
    pow *= 2;
    ++k;
  }
  return k;
}

DistanceBound bowditchBound(std::int64_t i, std::int64_t zeta) {
  if (i < 0) fail(ErrorCode::Internal, "bowditchBound needs i >= 0");
  if (zeta < 3) fail(ErrorCode::Internal, "bowditchBound needs zeta >= 3");
  Int lhs = i;      // 2^n * i
  Int rhs = zeta;   // zeta^(n+1)
  for (int n = 0; n <= 64; ++n) {
    if (lhs <= rhs)
      return {DistanceBound::Kind::Upper, 2 * (static_cast<std::int64_t>(n) + 1),
              "2^n*i<=zeta^(n+1) at n=" + std::to_string(n)};
    lhs *= 2;
    rhs *= zeta;
  }
  fail(ErrorCode::NoBoundApplicable, "no n <= 64 satisfies 2^n*i <= zeta^(n+1)");
}

DistanceBound chiIntersectionBound(std::int64_t i, std::int64_t chi) {
  if (i < 0) fail(ErrorCode::Internal, "chiIntersectionBound needs i >= 0");
  if (chi >= 0) fail(ErrorCode::Internal, "chiIntersectionBound needs chi < 0");
  std::int64_t achi = -chi;
  if (i == 0) return {DistanceBound::Kind::Upper, 1, "disjoint"};
  if (i <= 8 * achi + 4) return {DistanceBound::Kind::Upper, 15, "i<=8|chi|+4"};
  if (i <= 32 * achi + 8) return {DistanceBound::Kind::Upper, 18, "i<=32|chi|+8"};
  // ceil(2*log2(i)) computed exactly as ceil(log2(i^2)); clamped to >= 18 so
  // the branch chain is monotone nondecreasing in i.
  Int sq = Int(i) * i;
  int bits = 0;
  Int pow = 1;
  while (pow < sq) {
    pow *= 2;
    ++bits;
  }
  std::int64_t raw = static_cast<std::int64_t>(bits) + 2;
  if (raw < 18) return {DistanceBound::Kind::Upper, 18, "log2-fallback(clamped)"};
  return {DistanceBound::Kind::Upper, raw, "2*log2(i)+2"};
}

DistanceBound diamCarriedClasses(std::int64_t vertexCount, std::int64_t chi, bool essential) {
  if (!essential) fail(ErrorCode::InessentialGraph, "graph carries no essential class");
  if (chi >= 0) fail(ErrorCode::Internal, "diamCarriedClasses needs chi < 0");
  if (vertexCount < 1) fail(ErrorCode::Internal, "diamCarriedClasses needs a nonempty graph");
  if (vertexCount <= 2 * (-chi) + 1)
    return {DistanceBound::Kind::Upper, 15, "vertices<=2|chi|+1"};
  DistanceBound inner = chiIntersectionBound(4 * vertexCount, chi);
  inner.rule = "crossing-estimate-4V: " + inner.rule;
  return inner;
}

} // namespace veerlat
