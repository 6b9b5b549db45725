#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "veerlat/bounds.hpp"
#include "veerlat/slope.hpp"

namespace veerlat {

using EdgeId = std::int64_t;

// One side of a triangle: triangle index plus slot 0..2.  Slots list the
// triangle's sides in counterclockwise order, so slot k runs from the
// triangle's corner k to corner k+1 (mod 3).
struct HalfEdge {
  int tri = -1;
  int slot = -1;
  bool operator==(const HalfEdge& o) const { return tri == o.tri && slot == o.slot; }
};

struct FlipResult;

// Combinatorial ideal triangulation of an oriented punctured surface.  A
// triangulation is a list of triangles, each holding the persistent ids of
// its three edges in counterclockwise order; every edge id appears in exactly
// two sides, and the gluing along it reverses direction (forced by global
// orientation, so no extra gluing data is stored).  All ideal vertices are
// recovered as corner orbits.
class IdealTriangulation {
 public:
  explicit IdealTriangulation(std::vector<std::array<EdgeId, 3>> triangles);

  int triangleCount() const { return static_cast<int>(tris_.size()); }
  std::int64_t edgeCount() const { return static_cast<std::int64_t>(sides_.size()); }
  std::vector<EdgeId> edgeIds() const;
  bool hasEdge(EdgeId e) const { return sides_.count(e) != 0; }
  const std::array<EdgeId, 3>& triangle(int t) const { return tris_[t]; }
  EdgeId edgeAt(HalfEdge h) const { return tris_[h.tri][h.slot]; }

  // Euler characteristic of the fully punctured surface: faces minus edges
  // (ideal vertices are removed from the surface).
  std::int64_t chi() const { return triangleCount() - edgeCount(); }
  int vertexCount() const { return vertexCount_; }
  // Orbit index of the vertex at the origin corner of h (the corner between
  // slot h.slot and slot h.slot - 1).
  int vertexClassAt(HalfEdge h) const { return vclass_[h.tri][h.slot]; }

  // The two sides carrying edge e, in deterministic (triangle, slot) order.
  std::pair<HalfEdge, HalfEdge> sides(EdgeId e) const;
  HalfEdge opposite(HalfEdge h) const;

  static int nextSlot(int s) { return (s + 1) % 3; }
  static int prevSlot(int s) { return (s + 2) % 3; }

  // The quadrilateral around a flippable edge e: stepping counterclockwise
  // around the two triangles (t, k) and (t', k') of e, the four outer sides
  // are x = (t, k+1), y = (t, k+2), z = (t', k'+1), w = (t', k'+2); opposite
  // side pairs are (x, z) and (y, w).
  struct Quad {
    EdgeId diagonal;
    EdgeId x, y, z, w;
  };
  Quad quadAround(EdgeId e) const;

  // Diagonal exchange across e; the replacement diagonal gets the fresh id
  // newId (default: one past the largest id in use).  All other edges keep
  // their identities.
  FlipResult flip(EdgeId e) const;
  FlipResult flip(EdgeId e, EdgeId newId) const;

 private:
  std::vector<std::array<EdgeId, 3>> tris_;
  std::map<EdgeId, std::vector<HalfEdge>> sides_;
  std::vector<std::array<int, 3>> vclass_;
  int vertexCount_ = 0;
};

struct FlipResult {
  IdealTriangulation tri;
  EdgeId newEdge;
};

// Edge-crossing coordinates (one count per edge id; absent keys mean zero)
// updated through a diagonal exchange by the quadrilateral rule: the new
// diagonal carries max(x+z, y+w) minus the old diagonal's count.  The rule
// is exact for closed curves in minimal position, and for proper arcs at
// every step except the two where the tracked arc itself enters or leaves
// the edge set (it IS the new or the old diagonal); trackers crossing those
// steps seed by hand -- one crossing on the replacement diagonal after the
// arc's destruction, all counts zero after its creation -- which is exactly
// the birth/death bookkeeping the layered complex uses downstream.
std::map<EdgeId, Int> updateCoordsUnderFlip(const std::map<EdgeId, Int>& coords,
                                            const IdealTriangulation::Quad& quad, EdgeId newEdge);

// Per-triangle consistency of closed-curve coordinates: in every triangle
// each side's count is at most the sum of the other two.  Arcs ending at
// punctures may legitimately violate this (their ends absorb crossings at
// the corners), so the check applies to closed classes only.
bool normalCoordsConsistent(const IdealTriangulation& tri, const std::map<EdgeId, Int>& coords);

// A homotopy class of an essential simple closed curve or proper arc.
// Slope-valued classes live on a once-punctured torus piece; coordinate
// classes live on an explicit reference triangulation (tagged by an integer
// reference id chosen by the caller).  Normal-kind classes encode closed
// curves by their edge-crossing counts (proper arcs on torus pieces are
// carried by the Slope kinds, and edges of the reference by EdgeRef).
struct ArcClass {
  enum class Kind { SlopeArc, SlopeCurve, Normal, EdgeRef };
  Kind kind = Kind::SlopeArc;
  Slope slope;                  // SlopeArc / SlopeCurve
  int reference = -1;           // Normal / EdgeRef
  std::map<EdgeId, Int> coords; // Normal
  EdgeId edge = -1;             // EdgeRef

  static ArcClass arcOfSlope(Slope s);
  static ArcClass curveOfSlope(Slope s);
  static ArcClass normal(int reference, std::map<EdgeId, Int> coords);
  static ArcClass edgeRef(int reference, EdgeId e);

  bool operator==(const ArcClass& o) const;
  bool operator<(const ArcClass& o) const;
  std::string str() const;
};

// Geometric intersection number of two classes.  Slope classes pair exactly
// (arc/arc, arc/curve, curve/curve); an edge of a reference triangulation
// pairs with coordinate classes on the same reference by reading off the
// edge's count.  Distinct references are rejected with
// IncompatibleReference; two general coordinate classes are out of the exact
// model and rejected with ModelUnsupported.
Int intersectionNumber(const ArcClass& a, const ArcClass& b);

// An edge of a proper graph: an embedded arc attached to vertex classes
// v0 and v1 of the ambient surface, with its raw homology vector (p, q) in
// the torus piece carrying it.  The vector may be zero (a trivial loop) or
// imprimitive; such edges carry no essential class.
struct GraphEdge {
  int v0 = 0;
  int v1 = 0;
  Int p{0}, q{0};
};

// A one-complex properly embedded in the surface: vertex classes (flagged
// puncture or singular) and arcs between them.
struct ProperGraph {
  std::int64_t ambientChi = -1;
  std::vector<bool> puncture; // per vertex class
  std::vector<GraphEdge> edges;
};

// All essential simple arc/curve classes realized by walks in G visiting no
// vertex more than twice (endpoints and repeats counted; cyclic walks count
// each pass).  Exact for graphs whose edges are loops on once-punctured
// torus pieces — the only pieces the engine builds — where the bound leaves
// single-edge arcs, single-edge cycles, and two-edge cycles; a non-loop edge
// is rejected with ModelUnsupported.
std::vector<ArcClass> nearlySimpleArcs(const ProperGraph& g);

// A graph is essential when it carries at least one essential class.
bool graphEssential(const ProperGraph& g);

// Diameter bound for the carried classes: 15 when the graph meets at most
// 2|chi|+1 vertex classes, otherwise the crossing-estimate fallback.
// Inessential graphs are rejected.
DistanceBound diamAS(const ProperGraph& g);

// max(|chi|, 1).
std::int64_t chiPrime(std::int64_t chi);

} // namespace veerlat
