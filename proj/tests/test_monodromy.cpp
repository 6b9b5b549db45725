#include "doctest.h"

#include <random>
#include <string>

#include "veerlat/errors.hpp"
#include "veerlat/monodromy.hpp"

using namespace veerlat;

namespace {

bool cyclicEqual(const std::string& a, const std::string& b) {
  return a.size() == b.size() && (a + a).find(b) != std::string::npos;
}

FlipScript torusShearScript() {
  // The square torus (edge 0 horizontal, edge 1 vertical, edge 2 diagonal)
  // flipped twice, then pulled back by the induced linear map.
  FlipScript s;
  s.initial = {{0, 1, 2}, {2, 0, 1}};
  s.flips = {1, 0};
  s.relabel = {{2, 1}, {3, 0}, {4, 2}};
  return s;
}

} // namespace

TEST_SUITE("monodromy") {

TEST_CASE("shear words validate and multiply out") {
  CHECK_NOTHROW(validateWord("RL"));
  CHECK_NOTHROW(validateWord("RRRRRRL"));

  Mat2 rl = wordMatrix("RL");
  CHECK(rl.a == 2); CHECK(rl.b == 1); CHECK(rl.c == 1); CHECK(rl.d == 1);

  Mat2 r6l = wordMatrix("RRRRRRL");
  CHECK(r6l.a == 7); CHECK(r6l.b == 6); CHECK(r6l.c == 1); CHECK(r6l.d == 1);
  CHECK(r6l.det() == 1);

  CHECK_THROWS_AS(validateWord("LLL"), Error);
  try {
    validateWord("RRRR");
    FAIL("one-letter word accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPseudoAnosov);
    CHECK(std::string(e.what()).find("not pseudo-Anosov") != std::string::npos);
  }
  try {
    validateWord("");
    FAIL("empty word accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadScript);
  }
  try {
    validateWord("RXL");
    FAIL("bad letter accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadScript);
    CHECK(std::string(e.what()).find("only R and L") != std::string::npos);
  }
}

TEST_CASE("eigen slopes of the two reference monodromies") {
  EigenSlopes golden = eigenSlopes(wordMatrix("RL"));
  CHECK(golden.plus == QuadVal(1, 1, 2, 5));   // (1 + sqrt 5) / 2
  CHECK(golden.minus == QuadVal(1, -1, 2, 5)); // (1 - sqrt 5) / 2
  CHECK(golden.minus < golden.plus);

  EigenSlopes r6l = eigenSlopes(wordMatrix("RRRRRRL"));
  CHECK(r6l.plus == QuadVal(3, 1, 1, 15));  // 3 + sqrt 15
  CHECK(r6l.minus == QuadVal(3, -1, 1, 15));

  // The expanding slope is fixed: applying the matrix returns it.
  Mat2 m = wordMatrix("RRLRL");
  EigenSlopes es = eigenSlopes(m);
  CHECK(mobius(m, es.plus) == es.plus);
  CHECK(mobius(m, es.minus) == es.minus);
  // A nearby rational is pushed toward the expanding slope.
  auto absDiff = [](const QuadVal& x, const QuadVal& y) { return x < y ? y - x : x - y; };
  QuadVal probe = es.plus + QuadVal::rational(1, 100);
  QuadVal pushed = mobius(m, probe);
  CHECK(absDiff(pushed, es.plus) < absDiff(probe, es.plus));
}

TEST_CASE("eigen slopes reject non-Anosov input") {
  CHECK_THROWS_AS(eigenSlopes(Mat2{1, 1, 0, 1}), Error);      // parabolic shear
  CHECK_THROWS_AS(eigenSlopes(Mat2{0, -1, 1, 0}), Error);     // elliptic rotation
  CHECK_THROWS_AS(eigenSlopes(Mat2{2, 0, 0, 1}), Error);      // det 2
  CHECK_THROWS_AS(eigenSlopes(Mat2{1, 1, 1, 1}), Error);      // det 0
  // Negative trace below -2 is Anosov and accepted.
  CHECK_NOTHROW(eigenSlopes(Mat2{-2, -1, -1, -1}));
}

TEST_CASE("matrix to word recovers pinned words") {
  CHECK(matrixWord(Mat2{2, 1, 1, 1}) == "RL");
  CHECK(matrixWord(Mat2{7, 6, 1, 1}) == "RRRRRRL");
  // Negating the matrix does not change its action on slopes.
  CHECK(matrixWord(Mat2{-2, -1, -1, -1}) == "RL");
  CHECK(matrixWord(Mat2{-7, -6, -1, -1}) == "RRRRRRL");
  // L^3 R^2 starts the periodic expansion at an odd position.
  CHECK(cyclicEqual(matrixWord(Mat2{1, 2, 3, 7}), "LLLRR"));
  // A power of a primitive class comes back as the repeated word.
  CHECK(matrixWord(Mat2{5, 3, 3, 2}) == "RLRL");
}

TEST_CASE("matrix to word rejects non-Anosov matrices") {
  try {
    matrixWord(Mat2{1, 0, 0, 1});
    FAIL("identity accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPseudoAnosov);
  }
  try {
    matrixWord(Mat2{3, 1, 1, 1}); // det 2
    FAIL("det 2 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPseudoAnosov);
    CHECK(std::string(e.what()).find("determinant") != std::string::npos);
  }
}

TEST_CASE("word round-trips through its matrix up to rotation") {
  std::mt19937 rng(771239);
  std::uniform_int_distribution<int> len(2, 14), bit(0, 1);
  int done = 0;
  while (done < 60) {
    int n = len(rng);
    std::string w;
    for (int i = 0; i < n; ++i) w += bit(rng) ? 'R' : 'L';
    if (w.find('R') == std::string::npos || w.find('L') == std::string::npos) continue;
    ++done;
    CAPTURE(w);
    Mat2 m = wordMatrix(w);
    std::string back = matrixWord(m);
    CHECK(cyclicEqual(back, w));
    CHECK(wordMatrix(back).trace() == m.trace());
  }
}

TEST_CASE("flip scripts run and validate their relabeling") {
  ScriptRun run = runScript(torusShearScript());
  CHECK(run.created == std::vector<EdgeId>{3, 4});
  CHECK(run.quads.size() == 2);
  CHECK(run.quads[0].diagonal == 1);
  CHECK(run.quads[1].diagonal == 0);
  CHECK(run.final_.hasEdge(2));
  CHECK(run.final_.hasEdge(3));
  CHECK(run.final_.hasEdge(4));
  CHECK_FALSE(run.final_.hasEdge(0));
  CHECK(run.initial.hasEdge(0));
  CHECK(run.final_.chi() == run.initial.chi());
}

TEST_CASE("flip scripts reject malformed input") {
  FlipScript s = torusShearScript();

  SUBCASE("no flips") {
    s.flips.clear();
    s.relabel = {{0, 0}, {1, 1}, {2, 2}};
    try {
      runScript(s);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadScript);
      CHECK(std::string(e.what()).find("no flips") != std::string::npos);
    }
  }
  SUBCASE("flip of an absent edge") {
    s.flips = {1, 1}; // edge 1 was consumed by the first flip
    try {
      runScript(s);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadScript);
      CHECK(std::string(e.what()).find("not present") != std::string::npos);
    }
  }
  SUBCASE("flip across a self-glued edge") {
    FlipScript bad;
    bad.initial = {{0, 0, 1}, {1, 2, 2}};
    bad.flips = {0};
    bad.relabel = {};
    try {
      runScript(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadScript);
    }
  }
  SUBCASE("relabeling not injective") {
    s.relabel = {{2, 1}, {3, 1}, {4, 2}};
    try {
      runScript(s);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadScript);
      CHECK(std::string(e.what()).find("injective") != std::string::npos);
    }
  }
  SUBCASE("relabeling misses an edge") {
    s.relabel = {{2, 1}, {3, 0}};
    CHECK_THROWS_AS(runScript(s), Error);
  }
  SUBCASE("relabeling hits a stale id") {
    s.relabel = {{2, 1}, {3, 0}, {4, 7}};
    try {
      runScript(s);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadScript);
      CHECK(std::string(e.what()).find("outside the initial edge set") != std::string::npos);
    }
  }
  SUBCASE("relabeling is not simplicial") {
    // Swapping two targets keeps the bijection but breaks the triangle match.
    s.relabel = {{2, 0}, {3, 1}, {4, 2}};
    try {
      runScript(s);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadScript);
      CHECK(std::string(e.what()).find("onto the initial") != std::string::npos);
    }
  }
}

TEST_CASE("presentation wrapper resolves words") {
  CHECK(MonodromySpec::ofWord("RL").resolvedWord() == "RL");
  CHECK(MonodromySpec::ofMatrix(Mat2{7, 6, 1, 1}).resolvedWord() == "RRRRRRL");
  try {
    MonodromySpec::ofScript(torusShearScript()).resolvedWord();
    FAIL("script resolved to a word");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ModelUnsupported);
  }
}

} // TEST_SUITE
