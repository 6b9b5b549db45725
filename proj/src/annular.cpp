#include "veerlat/annular.hpp"

#include <limits>

namespace veerlat {

namespace {

struct Vec2Q {
  QuadVal x, y;
};

Vec2Q classVec(const AnnularClass& a) {
  if (a.isEigen) return {a.value, QuadVal::integer(1)};
  return {QuadVal::integer(a.slope.p), QuadVal::integer(a.slope.q)};
}

QuadVal det2(const Vec2Q& u, const Vec2Q& v) { return u.x * v.y - u.y * v.x; }

std::int64_t toSmall(const Int& n) {
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
    fail(ErrorCode::Internal, "annular distance out of integer range");
  return static_cast<std::int64_t>(n);
}

} // namespace

QuadVal pairingDet(const AnnularClass& a, const AnnularClass& b) {
  return det2(classVec(a), classVec(b));
}

bool crossesCore(const Slope& core, const AnnularClass& a) {
  return pairingDet(AnnularClass::ofSlope(core), a).sign() != 0;
}

std::int64_t annularDistance(const Slope& core, const AnnularClass& a, const AnnularClass& b) {
  Vec2Q g = classVec(AnnularClass::ofSlope(core));
  Vec2Q va = classVec(a), vb = classVec(b);
  QuadVal ag = det2(va, g), gb = det2(g, vb);
  if (ag.sign() == 0)
    fail(ErrorCode::EmptyProjection, "class " + a.str() + " does not cross annulus core " + core.str());
  if (gb.sign() == 0)
    fail(ErrorCode::EmptyProjection, "class " + b.str() + " does not cross annulus core " + core.str());
  // Twisting: the lifts of b differ by full twists about the core,
  // T^n(b) = b + n*det(g,b)*g, so det(a, T^n(b)) = A + n*B with A = det(a,b)
  // and B = det(a,g)*det(g,b).  The lift distance is 1 + |n*| at the
  // integer n* minimizing |A + n*B|, i.e. the nearest integer to -A/B.
  QuadVal A = det2(va, vb);
  QuadVal B = ag * gb;
  Int nstar = round_nearest(-(A / B));
  return 1 + toSmall(abs(nstar));
}

std::int64_t annularDiameter(const Slope& core, const std::vector<AnnularClass>& classes) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      if (pairingDet(classes[i], classes[j]).sign() == 0) continue; // same class: contributes 0
      best = std::max(best, annularDistance(core, classes[i], classes[j]));
    }
  return best;
}

} // namespace veerlat
