#include "doctest.h"

#include <random>

#include "veerlat/annular.hpp"

using namespace veerlat;

namespace {

// Full twist about the core: a + k * det(core, a) * core stays primitive
// because it is the image of a under a homeomorphism power.
Slope twistAbout(const Slope& core, const Slope& a, long k) {
  Int m = Int(k) * det(core, a);
  return Slope(a.p + m * core.p, a.q + m * core.q);
}

Slope randomSlope(std::mt19937_64& rng, long H) {
  std::uniform_int_distribution<long> c(-H, H);
  for (;;) {
    long p = c(rng), q = c(rng);
    if (p != 0 || q != 0) return Slope(p, q);
  }
}

} // namespace

TEST_SUITE("annular") {

TEST_CASE("pinned values about the vertical core") {
  Slope core(1, 0);
  auto d = [&](const Slope& a, const Slope& b) {
    return annularDistance(core, AnnularClass::ofSlope(a), AnnularClass::ofSlope(b));
  };
  // Equal classes use the single-lift convention: distance 1.
  CHECK(d(Slope(0, 1), Slope(0, 1)) == 1);
  CHECK(d(Slope(0, 1), Slope(1, 1)) == 2);
  for (long k = 2; k <= 6; ++k) CHECK(d(Slope(0, 1), Slope(k, 1)) == k + 1);
}

TEST_CASE("classes missing the core are rejected") {
  Slope core(1, 0);
  CHECK_THROWS_AS(annularDistance(core, AnnularClass::ofSlope(Slope(1, 0)),
                                  AnnularClass::ofSlope(Slope(0, 1))),
                  Error);
  try {
    annularDistance(core, AnnularClass::ofSlope(Slope(0, 1)), AnnularClass::ofSlope(Slope(1, 0)));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyProjection);
  }
  CHECK(!crossesCore(core, AnnularClass::ofSlope(Slope(1, 0))));
  CHECK(crossesCore(core, AnnularClass::ofSlope(Slope(7, 2))));
}

TEST_CASE("twist coherence") {
  std::mt19937_64 rng(60111);
  for (int iter = 0; iter < 150; ++iter) {
    Slope core = randomSlope(rng, 10);
    Slope a = randomSlope(rng, 10);
    if (det(core, a) == 0) continue;
    for (long k = 1; k <= 8; ++k) {
      Slope b = twistAbout(core, a, k);
      std::int64_t dist =
          annularDistance(core, AnnularClass::ofSlope(a), AnnularClass::ofSlope(b));
      // The lift convention realizes k full twists at exactly distance k+1.
      CHECK(dist == k + 1);
    }
  }
}

TEST_CASE("symmetry on random pairs") {
  std::mt19937_64 rng(8115);
  for (int iter = 0; iter < 200; ++iter) {
    Slope core = randomSlope(rng, 12);
    AnnularClass a = AnnularClass::ofSlope(randomSlope(rng, 12));
    AnnularClass b = AnnularClass::ofSlope(randomSlope(rng, 12));
    if (pairingDet(AnnularClass::ofSlope(core), a).sign() == 0) continue;
    if (pairingDet(AnnularClass::ofSlope(core), b).sign() == 0) continue;
    CHECK(annularDistance(core, a, b) == annularDistance(core, b, a));
  }
}

TEST_CASE("eigen classes of simple monodromies") {
  // Golden-ratio pair about the core of slope 0: distance 3.
  AnnularClass gp = AnnularClass::ofEigen(QuadVal(1, 1, 2, 5));
  AnnularClass gm = AnnularClass::ofEigen(QuadVal(1, -1, 2, 5));
  CHECK(annularDistance(Slope(0, 1), gp, gm) == 3);
  CHECK(annularDistance(Slope(0, 1), gm, gp) == 3);

  // Fixed slopes 3 +- sqrt15: distance 9 about the vertical core and 2 about
  // the core of slope 2 (both frozen from the exact twisting formula worked
  // by hand: n* = round(2*sqrt15) = 8, and round(2*sqrt15/14) = 1).
  AnnularClass lp = AnnularClass::ofEigen(QuadVal(3, 1, 1, 15));
  AnnularClass lm = AnnularClass::ofEigen(QuadVal(3, -1, 1, 15));
  CHECK(annularDistance(Slope(1, 0), lp, lm) == 9);
  CHECK(annularDistance(Slope(2, 1), lp, lm) == 2);

  // Mixing an eigen class with a rational class.
  CHECK(annularDistance(Slope(1, 0), AnnularClass::ofSlope(Slope(0, 1)), lp) ==
        1 + static_cast<std::int64_t>(round_nearest(QuadVal(3, 1, 1, 15))));
}

TEST_CASE("diameter of a class set") {
  Slope core(1, 0);
  std::vector<AnnularClass> classes = {AnnularClass::ofSlope(Slope(0, 1)),
                                       AnnularClass::ofSlope(Slope(1, 1)),
                                       AnnularClass::ofSlope(Slope(2, 1))};
  CHECK(annularDiameter(core, classes) == 3);
  // Duplicates contribute nothing; singletons and empties have diameter 0.
  classes.push_back(AnnularClass::ofSlope(Slope(0, 1)));
  CHECK(annularDiameter(core, classes) == 3);
  CHECK(annularDiameter(core, {AnnularClass::ofSlope(Slope(5, 1))}) == 0);
  CHECK(annularDiameter(core, {}) == 0);
  // Equal classes with different representations count as one vertex.
  CHECK(annularDiameter(core, {AnnularClass::ofSlope(Slope(3, 1)),
                               AnnularClass::ofSlope(Slope(-3, -1))}) == 0);
}

} // TEST_SUITE
