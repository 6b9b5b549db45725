#include "doctest.h"

#include "veerlat/bounds.hpp"
#include "veerlat/errors.hpp"

using namespace veerlat;

TEST_SUITE("bounds") {

TEST_CASE("scan bound examples") {
  CHECK(bowditchBound(0, 3).value == 2);
  CHECK(bowditchBound(0, 7).value == 2);
  CHECK(bowditchBound(4, 4).value == 2);
  // 2^3 * 32 = 256 = 4^4 lands exactly on the threshold at n = 3.
  CHECK(bowditchBound(32, 4).value == 8);
  CHECK(bowditchBound(32, 4).kind == DistanceBound::Kind::Upper);
  CHECK(bowditchBound(33, 4).value == 10);
}

TEST_CASE("scan bound rejects hopeless inputs and bad parameters") {
  CHECK_THROWS_AS(bowditchBound(2'000'000'000'000LL, 3), Error);
  try {
    bowditchBound(2'000'000'000'000LL, 3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoBoundApplicable);
  }
  CHECK_THROWS_AS(bowditchBound(5, 2), Error);
  CHECK_THROWS_AS(bowditchBound(-1, 3), Error);
}

TEST_CASE("threshold table") {
  struct Row {
    std::int64_t i, chi, expected;
  };
  // Hand-checked rows, including both threshold boundaries for several chi.
  const Row rows[] = {
      {0, -1, 1},           //
      {1, -1, 15},          //
      {12, -1, 15},         // boundary 8|chi|+4
      {13, -1, 18},         //
      {40, -1, 18},         // boundary 32|chi|+8
      {41, -1, 18},         // log fallback clamped up to 18
      {128, -1, 18},        // clamped: ceil(2 log2 128) + 2 = 16
      {256, -1, 18},        // exactly 2*8 + 2 = 18, unclamped
      {257, -1, 19},        //
      {1024, -1, 22},       // 2*10 + 2
      {20, -2, 15},         // boundary 8|chi|+4
      {21, -2, 18},         //
      {72, -2, 18},         // boundary 32|chi|+8
      {73, -2, 18},         // clamped
      {1048576, -2, 42},    // 2*20 + 2
      {44, -5, 15},         // boundary 8|chi|+4
      {45, -5, 18},         //
      {168, -5, 18},        // boundary 32|chi|+8
      {169, -5, 18},        // clamped
      {300000, -3, 39},     // ceil(log2 9e10) = 37
      {1LL << 31, -1, 64},  // 2*31 + 2
  };
  for (const Row& r : rows) {
    DistanceBound b = chiIntersectionBound(r.i, r.chi);
    CAPTURE(r.i);
    CAPTURE(r.chi);
    CHECK(b.value == r.expected);
    CHECK(b.kind == DistanceBound::Kind::Upper);
  }
  CHECK_THROWS_AS(chiIntersectionBound(5, 0), Error);
  CHECK_THROWS_AS(chiIntersectionBound(-2, -1), Error);
}

TEST_CASE("both calculators are monotone in the intersection number") {
  for (std::int64_t zeta : {3, 4, 5}) {
    std::int64_t prev = 0;
    for (std::int64_t i = 0; i <= 500; ++i) {
      std::int64_t v = bowditchBound(i, zeta).value;
      CHECK(v >= prev);
      prev = v;
    }
  }
  for (std::int64_t chi : {-1, -2, -5}) {
    std::int64_t prev = 0;
    for (std::int64_t i = 0; i <= 2000; ++i) {
      std::int64_t v = chiIntersectionBound(i, chi).value;
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("carried-class diameter") {
  CHECK(diamCarriedClasses(1, -1, true).value == 15);
  CHECK(diamCarriedClasses(3, -1, true).value == 15); // 2|chi|+1 = 3
  // Above the vertex cap: falls back to the crossing estimate 4V = 16 <= 40.
  CHECK(diamCarriedClasses(4, -1, true).value == 18);
  CHECK(diamCarriedClasses(30, -2, true).value == 18);
  CHECK(diamCarriedClasses(5, -2, true).value == 15);
  CHECK_THROWS_AS(diamCarriedClasses(3, -1, false), Error);
  try {
    diamCarriedClasses(3, -1, false);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InessentialGraph);
  }
}

TEST_CASE("exact ceiling log") {
  CHECK(ceilLog2(1) == 0);
  CHECK(ceilLog2(2) == 1);
  CHECK(ceilLog2(3) == 2);
  CHECK(ceilLog2(1024) == 10);
  CHECK(ceilLog2(1025) == 11);
  CHECK_THROWS_AS(ceilLog2(0), Error);
}

} // TEST_SUITE
