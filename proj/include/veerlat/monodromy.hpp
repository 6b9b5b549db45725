#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "veerlat/quadratic.hpp"
#include "veerlat/slope.hpp"
#include "veerlat/triangulation.hpp"

namespace veerlat {

// ---------------------------------------------------------------------------
// Monodromy presentations.
//
// A mapping torus is specified either combinatorially on the once-punctured
// torus -- as a positive word in the two elementary shears R and L, or as an
// integer matrix with |trace| > 2 -- or explicitly on any punctured surface as
// a periodic flip script.  All three normalize to a flip sequence plus a
// relabeling isomorphism; the word/matrix forms additionally carry exact
// eigen-slope data.
// ---------------------------------------------------------------------------

// Checks that `word` is a valid shear word: nonempty and drawn from {R, L}
// (BadScript otherwise), with both letters present (a one-letter word is a
// power of a shear, hence not pseudo-Anosov).
void validateWord(const std::string& word);

// Product of the letter matrices of `word`, left to right.
Mat2 wordMatrix(const std::string& word);

// The positive RL word (up to cyclic rotation) whose letter product is
// conjugate to +-M in SL(2, Z).  Requires det M == 1 and |trace M| > 2
// (NotPseudoAnosov otherwise).  Derived from the periodic continued fraction
// of the expanding fixed slope; a non-primitive M yields the primitive word
// repeated the appropriate number of times.
std::string matrixWord(const Mat2& m);

// The fixed slopes of the Mobius action of M on the slope line: `plus` is the
// expanding (attracting) one, `minus` the contracting one.  Requires
// det M == 1 and |trace M| > 2.
struct EigenSlopes {
  QuadVal minus;
  QuadVal plus;
};
EigenSlopes eigenSlopes(const Mat2& m);

// An explicit periodic flip script on an ideal triangulation: the initial
// triangulation, the edges to flip in order (each id must be flippable in the
// triangulation current at its step; the edge created by step k receives the
// smallest id exceeding every id used so far), and the relabeling that
// identifies the final triangulation with the initial one (final edge id ->
// initial edge id, required to be a simplicial isomorphism respecting the
// triangle orientations).
struct FlipScript {
  std::vector<std::array<EdgeId, 3>> initial;
  std::vector<EdgeId> flips;
  std::map<EdgeId, EdgeId> relabel;
};

// Result of running a script once through: the intermediate data the complex
// builder consumes.  `steps[k]` is the quadrilateral of flip k together with
// the id of the edge it created; `final_` is the triangulation after all
// flips (before relabeling).
struct ScriptRun {
  IdealTriangulation initial;
  IdealTriangulation final_;
  std::vector<IdealTriangulation::Quad> quads;
  std::vector<EdgeId> created;
};

// Executes and validates `script`: runs the flips (BadScript on an illegal
// one), then checks that `relabel` is a bijection from the final edge ids to
// the initial ones carrying the final triangle list onto the initial triangle
// list up to rotation of each triple and reordering of triangles.
ScriptRun runScript(const FlipScript& script);

// One of the three presentations.
struct MonodromySpec {
  enum class Kind { Word, Matrix, Script };

  Kind kind = Kind::Word;
  std::string word;              // Kind::Word
  Mat2 matrix = Mat2::identity(); // Kind::Matrix
  FlipScript script;             // Kind::Script

  static MonodromySpec ofWord(std::string w);
  static MonodromySpec ofMatrix(const Mat2& m);
  static MonodromySpec ofScript(FlipScript s);

  // The shear word of this presentation: the word itself, or matrixWord of
  // the matrix.  ModelUnsupported for scripts.
  std::string resolvedWord() const;
};

} // namespace veerlat
