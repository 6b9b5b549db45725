#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "veerlat/monodromy.hpp"
#include "veerlat/quadratic.hpp"
#include "veerlat/slope.hpp"
#include "veerlat/triangulation.hpp"

namespace veerlat {

// ---------------------------------------------------------------------------
// The layered flip complex of a periodic monodromy.
//
// Unrolling the flip sequence in both directions gives a bi-infinite sweep of
// ideal triangulations ("layers"), one flip event between consecutive layers.
// Event t replaces one edge (its quadrilateral's diagonal) by the opposite
// diagonal; the flip spans a tetrahedron whose bottom diagonal is the killed
// edge and whose top diagonal is the created one.  Everything is periodic
// under the deck translation, which shifts events by one period and relabels
// by the monodromy.
//
// Edge instances are identified with their creating events: the edge created
// by event t has instance id t, exists in the layers t+1 .. kill(t), and is
// flipped away by event kill(t).  Instances modulo the deck translation form
// `period()` orbits; the instance created at event t belongs to orbit
// t mod period at level floor(t / period).
// ---------------------------------------------------------------------------

// An edge orbit at a definite level: the instance created by event
// orbit + level * period.
struct TauEdgeRef {
  std::int64_t orbit = 0;
  std::int64_t level = 0;

  bool operator==(const TauEdgeRef&) const = default;
  bool operator<(const TauEdgeRef& o) const {
    return orbit != o.orbit ? orbit < o.orbit : level < o.level;
  }
};

enum class Color { Red, Blue };

// Temporal order relation between two edge instances: Less / Greater when the
// earlier one's arc crosses the later one (so every section containing the
// later must stack above the earlier), Incomparable when they can be realized
// disjointly, Equal when the two references name one instance.
enum class OrderRel { Less, Greater, Incomparable, Equal };

class VeeringComplex {
public:
  // Builds the complex of a monodromy presentation.  Word and matrix forms
  // are unrolled on the once-punctured torus and carry exact slope data;
  // script forms carry combinatorics only.  NotPseudoAnosov when the
  // presentation is not pseudo-Anosov (bad word or matrix, or a script with
  // an edge cycle that is never flipped).
  static VeeringComplex fromMonodromy(const MonodromySpec& spec);

  // Number of flip events (= tetrahedra = edge orbits) per period.
  std::int64_t period() const { return m_; }
  // Edges in every layer triangulation (= -3 chi).
  std::int64_t layerEdgeCount() const { return layerEdges_; }
  std::int64_t fiberChi() const { return chi_; }
  // Largest kill(t) - t over the orbits: no edge instance outlives this many
  // events past its creation.
  std::int64_t maxLifetime() const { return maxLifetime_; }

  bool torusModel() const { return torus_; }
  // The shear word (torus models only).
  const std::string& word() const;
  // Exact expanding / contracting slopes of the monodromy (torus only).
  const EigenSlopes& eigen() const;
  // The slope of an edge instance (torus only).
  Slope slopeOf(const TauEdgeRef& ref) const;

  TauEdgeRef refOfEvent(std::int64_t event) const;
  std::int64_t eventOf(const TauEdgeRef& ref) const { return ref.orbit + ref.level * m_; }
  std::int64_t killOfEvent(std::int64_t event) const;
  std::int64_t killOf(const TauEdgeRef& ref) const { return killOfEvent(eventOf(ref)); }

  // Deck translation: Phi^power moves the instance `power` periods down the
  // sweep (level decreases by power; orbits are stable in this labeling).
  TauEdgeRef applyDeck(const TauEdgeRef& ref, std::int64_t power) const {
    return {ref.orbit, ref.level - power};
  }

  // The quadrilateral of an event, all six entries as instance ids.
  struct EventQuad {
    std::int64_t diagonal, x, y, z, w, created;
  };
  EventQuad eventQuad(std::int64_t event) const;

  // Creator events of the two faces below the event's tetrahedron, and
  // destroyer events of the two faces above it.
  std::array<std::int64_t, 2> parentsOf(std::int64_t event) const;
  std::array<std::int64_t, 2> childrenOf(std::int64_t event) const;

  // The triangulation of a layer, edge ids = instance ids.  Layer t sits
  // between events t-1 and t.
  const IdealTriangulation& layerTriangulation(std::int64_t layer) const;

  // Checks the veering condition: around every tetrahedron the four side
  // edges must 2-color in the forced alternating pattern, consistently
  // across all tetrahedra and deck translates.  Returns the coloring by
  // orbit; Unveerable (naming a violating tetrahedron) otherwise.
  const std::vector<Color>& validateVeering() const;
  Color colorOf(std::int64_t orbit) const { return validateVeering()[normOrbit(orbit)]; }

  // Temporal order of two edge instances (see OrderRel).  Exact: the crossing
  // number of the earlier instance with the later one is computed by sweeping
  // its arc forward through the intervening flips.
  OrderRel edgeOrder(const TauEdgeRef& a, const TauEdgeRef& b) const;

private:
  VeeringComplex() = default;

  static VeeringComplex fromScriptRun(const ScriptRun& run, const FlipScript& script);
  std::int64_t normOrbit(std::int64_t orbit) const;
  // Crossing number of the dead instance `earlier` with the instance created
  // at event `target`, requiring kill(earlier) <= target.
  Int crossingForward(std::int64_t earlier, std::int64_t target) const;

  std::int64_t m_ = 0;
  std::int64_t layerEdges_ = 0;
  std::int64_t chi_ = 0;
  std::int64_t maxLifetime_ = 0;
  bool torus_ = false;

  std::vector<std::int64_t> kill_;                  // by orbit
  std::vector<EventQuad> quads_;                    // by event in [0, m)
  std::vector<std::array<std::int64_t, 2>> parents_;  // by event in [0, m)
  std::vector<std::array<std::int64_t, 2>> children_; // by event in [0, m)
  std::vector<IdealTriangulation> layers_;          // layers 0 .. m-1
  // Lazily grown caches may be touched from parallel check fan-outs.  The
  // mutex lives behind a pointer so complexes stay movable.
  std::shared_ptr<std::mutex> cacheMutex_ = std::make_shared<std::mutex>();
  mutable std::map<std::int64_t, IdealTriangulation> shiftedLayers_;

  // Torus decorations.
  std::string word_;
  std::optional<EigenSlopes> eigen_;
  std::vector<Slope> orbitSlope_; // slope of the level-0 instance, by orbit
  Mat2 deck_ = Mat2::identity();  // slope action of one period

  mutable std::optional<std::vector<Color>> colors_;
};

} // namespace veerlat
