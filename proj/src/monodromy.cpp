#include "veerlat/monodromy.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "veerlat/errors.hpp"

namespace veerlat {

void validateWord(const std::string& word) {
  if (word.empty()) fail(ErrorCode::BadScript, "empty shear word");
  bool hasR = false, hasL = false;
  for (char ch : word) {
    if (ch == 'R') hasR = true;
    else if (ch == 'L') hasL = true;
    else fail(ErrorCode::BadScript, std::string("shear word contains '") + ch + "' (only R and L are allowed)");
  }
  if (!hasR || !hasL)
    fail(ErrorCode::NotPseudoAnosov, "one-letter shear word is a power of a single shear, not pseudo-Anosov");
}

Mat2 wordMatrix(const std::string& word) {
  validateWord(word);
  Mat2 m = Mat2::identity();
  for (char ch : word) m = m * (ch == 'R' ? Mat2::letterR() : Mat2::letterL());
  return m;
}

namespace {

// n = mult^2 * result with result square-free (up to the trial bound, which
// desk-scale traces never exceed).
Int squareFreePart(Int n, Int& mult) {
  mult = 1;
  Int result = 1;
  for (Int p = 2; p * p <= n; ++p) {
    if (p > 3000000) break;
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) { n /= p; ++e; }
    for (int i = 0; i < e / 2; ++i) mult *= p;
    if (e % 2 == 1) result *= p;
  }
  return result * n;
}

void requireAnosov(const Mat2& m) {
  if (m.det() != 1)
    fail(ErrorCode::NotPseudoAnosov, "monodromy matrix must have determinant 1");
  Int t = abs(m.trace());
  if (t <= 2)
    fail(ErrorCode::NotPseudoAnosov, "monodromy matrix has |trace| <= 2, hence is not Anosov");
}

} // namespace

EigenSlopes eigenSlopes(const Mat2& m) {
  requireAnosov(m);
  if (m.c == 0) fail(ErrorCode::Internal, "Anosov matrix with zero lower-left entry");
  // Fixed slopes of x -> (a x + b) / (c x + d): c x^2 + (d - a) x - b = 0,
  // so x = ((a - d) +- sqrt(trace^2 - 4)) / (2 c).
  Int mult;
  Int disc = squareFreePart(m.trace() * m.trace() - 4, mult);
  QuadVal rootPlus(m.a - m.d, mult, 2 * m.c, disc);
  QuadVal rootMinus(m.a - m.d, -mult, 2 * m.c, disc);
  // The expanding fixed slope is the one where the derivative 1 / (c x + d)^2
  // of the Mobius action has modulus < 1, i.e. (c x + d)^2 > 1.
  auto expanding = [&](const QuadVal& x) {
    QuadVal t = QuadVal::integer(m.c) * x + QuadVal::integer(m.d);
    return t * t > QuadVal::integer(1);
  };
  bool plusExpands = expanding(rootPlus);
  if (plusExpands == expanding(rootMinus))
    fail(ErrorCode::Internal, "eigen slopes do not split into expanding and contracting");
  if (plusExpands) return {rootMinus, rootPlus};
  return {rootPlus, rootMinus};
}

std::string matrixWord(const Mat2& m) {
  QuadVal x = eigenSlopes(m).plus;

  // Continued-fraction expansion of the expanding slope.  A quadratic surd
  // has finitely many tail states, so the state sequence is eventually
  // periodic; the minimal period gives the primitive shear word.  Term k of
  // the expansion is an R-exponent when k is even and an L-exponent when k is
  // odd (inverting the tail swaps the two shears).
  std::vector<Int> terms;
  std::map<QuadVal, int> seen;
  int start = -1;
  for (int i = 0;; ++i) {
    if (i > 4096) fail(ErrorCode::Internal, "continued fraction failed to become periodic");
    auto it = seen.find(x);
    if (it != seen.end()) { start = it->second; break; }
    seen.emplace(x, i);
    Int f = floor(x);
    terms.push_back(f);
    x = QuadVal::integer(1) / (x - QuadVal::integer(f));
  }
  int period = static_cast<int>(terms.size()) - start;
  int blocks = period % 2 == 0 ? period : 2 * period;

  std::string word;
  for (int k = 0; k < blocks; ++k) {
    int pos = start + k;
    char letter = pos % 2 == 0 ? 'R' : 'L';
    Int count = terms[start + k % period];
    if (count <= 0) fail(ErrorCode::Internal, "nonpositive continued-fraction term in the periodic part");
    if (count > 100000) fail(ErrorCode::Internal, "shear word too long to materialize");
    for (long long i = 0, n = static_cast<long long>(count); i < n; ++i) word += letter;
  }

  // The continued fraction recovers the primitive conjugacy class; a
  // non-primitive input is a power of it, detected and recovered by matching
  // traces along trace(W^{k+1}) = trace(W) trace(W^k) - trace(W^{k-1}).
  Int target = abs(m.trace());
  Int t1 = wordMatrix(word).trace();
  Int prev = 2, cur = t1;
  int power = 1;
  while (cur < target) {
    if (power > 4096) fail(ErrorCode::Internal, "trace matching failed to terminate");
    Int next = t1 * cur - prev;
    prev = cur;
    cur = next;
    ++power;
  }
  if (cur != target)
    fail(ErrorCode::Internal, "derived shear word trace does not divide the input trace sequence");
  std::string repeated;
  for (int i = 0; i < power; ++i) repeated += word;
  return repeated;
}

ScriptRun runScript(const FlipScript& script) {
  if (script.flips.empty()) fail(ErrorCode::BadScript, "flip script has no flips");
  IdealTriangulation cur(script.initial);
  IdealTriangulation initial = cur;

  EdgeId maxId = 0;
  for (EdgeId e : cur.edgeIds()) maxId = std::max(maxId, e);

  ScriptRun run{std::move(initial), cur, {}, {}};
  for (std::size_t k = 0; k < script.flips.size(); ++k) {
    EdgeId f = script.flips[k];
    if (!cur.hasEdge(f))
      fail(ErrorCode::BadScript, "flip " + std::to_string(k) + " names edge " + std::to_string(f) +
                                     " which is not present at that step");
    EdgeId fresh = ++maxId;
    try {
      IdealTriangulation::Quad quad = cur.quadAround(f);
      FlipResult res = cur.flip(f, fresh);
      run.quads.push_back(quad);
      run.created.push_back(res.newEdge);
      cur = std::move(res.tri);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::FlipIllegal)
        fail(ErrorCode::BadScript, "flip " + std::to_string(k) + " of edge " + std::to_string(f) +
                                       " is illegal: " + err.what());
      throw;
    }
  }
  run.final_ = cur;

  // The relabeling must be a bijection final ids -> initial ids...
  std::vector<EdgeId> finalIds = cur.edgeIds(), initialIds = run.initial.edgeIds();
  std::set<EdgeId> image;
  if (script.relabel.size() != finalIds.size())
    fail(ErrorCode::BadScript, "relabeling must assign exactly the final edge ids");
  for (EdgeId e : finalIds) {
    auto it = script.relabel.find(e);
    if (it == script.relabel.end())
      fail(ErrorCode::BadScript, "relabeling misses final edge " + std::to_string(e));
    if (!run.initial.hasEdge(it->second))
      fail(ErrorCode::BadScript, "relabeling sends edge " + std::to_string(e) + " outside the initial edge set");
    if (!image.insert(it->second).second)
      fail(ErrorCode::BadScript, "relabeling is not injective at initial edge " + std::to_string(it->second));
  }

  // ... carrying the final triangle list onto the initial one (up to rotating
  // each oriented triple and permuting the triangles).
  auto canonical = [](std::array<EdgeId, 3> t) {
    std::array<EdgeId, 3> best = t;
    for (int r = 1; r < 3; ++r) {
      std::array<EdgeId, 3> rot = {t[r % 3], t[(r + 1) % 3], t[(r + 2) % 3]};
      best = std::min(best, rot);
    }
    return best;
  };
  std::vector<std::array<EdgeId, 3>> got, want;
  for (int t = 0; t < cur.triangleCount(); ++t) {
    std::array<EdgeId, 3> tri = cur.triangle(t);
    for (EdgeId& e : tri) e = script.relabel.at(e);
    got.push_back(canonical(tri));
  }
  for (int t = 0; t < run.initial.triangleCount(); ++t) want.push_back(canonical(run.initial.triangle(t)));
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  if (got != want)
    fail(ErrorCode::BadScript, "relabeling does not carry the final triangulation onto the initial one");

  return run;
}

MonodromySpec MonodromySpec::ofWord(std::string w) {
  MonodromySpec s;
  s.kind = Kind::Word;
  s.word = std::move(w);
  return s;
}

MonodromySpec MonodromySpec::ofMatrix(const Mat2& m) {
  MonodromySpec s;
  s.kind = Kind::Matrix;
  s.matrix = m;
  return s;
}

MonodromySpec MonodromySpec::ofScript(FlipScript sc) {
  MonodromySpec s;
  s.kind = Kind::Script;
  s.script = std::move(sc);
  return s;
}

std::string MonodromySpec::resolvedWord() const {
  switch (kind) {
    case Kind::Word:
      validateWord(word);
      return word;
    case Kind::Matrix:
      return matrixWord(matrix);
    case Kind::Script:
      fail(ErrorCode::ModelUnsupported, "a flip script does not resolve to a shear word");
  }
  fail(ErrorCode::Internal, "unhandled presentation kind");
}

} // namespace veerlat
