#include "veerlat/triangulation.hpp"

#include <algorithm>
#include <set>

namespace veerlat {

IdealTriangulation::IdealTriangulation(std::vector<std::array<EdgeId, 3>> triangles)
    : tris_(std::move(triangles)) {
  if (tris_.empty()) fail(ErrorCode::Internal, "triangulation with no triangles");
  for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
    for (int k = 0; k < 3; ++k) sides_[tris_[t][k]].push_back(HalfEdge{t, k});
  for (const auto& [id, hs] : sides_)
    if (hs.size() != 2)
      fail(ErrorCode::Internal,
           "edge " + std::to_string(id) + " appears in " + std::to_string(hs.size()) +
               " sides, expected 2");

  // Ideal vertices are the orbits of origin corners under "rotate around the
  // vertex": from the side entering the corner, cross to its partner side.
  vclass_.assign(tris_.size(), {-1, -1, -1});
  int nextClass = 0;
  for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
    for (int k = 0; k < 3; ++k) {
      if (vclass_[t][k] != -1) continue;
      HalfEdge h{t, k};
      while (vclass_[h.tri][h.slot] == -1) {
        vclass_[h.tri][h.slot] = nextClass;
        HalfEdge prev{h.tri, prevSlot(h.slot)};
        h = opposite(prev);
      }
      ++nextClass;
    }
  vertexCount_ = nextClass;
}

std::vector<EdgeId> IdealTriangulation::edgeIds() const {
  std::vector<EdgeId> out;
  out.reserve(sides_.size());
  for (const auto& [id, hs] : sides_) out.push_back(id);
  return out;
}

std::pair<HalfEdge, HalfEdge> IdealTriangulation::sides(EdgeId e) const {
  auto it = sides_.find(e);
  if (it == sides_.end())
    fail(ErrorCode::Internal, "unknown edge id " + std::to_string(e));
  return {it->second[0], it->second[1]};
}

HalfEdge IdealTriangulation::opposite(HalfEdge h) const {
  auto [s0, s1] = sides(edgeAt(h));
  return (s0 == h) ? s1 : s0;
}

IdealTriangulation::Quad IdealTriangulation::quadAround(EdgeId e) const {
  auto [s0, s1] = sides(e);
  if (s0.tri == s1.tri)
    fail(ErrorCode::FlipIllegal,
         "edge " + std::to_string(e) + " has both sides on one triangle");
  Quad q;
  q.diagonal = e;
  q.x = edgeAt(HalfEdge{s0.tri, nextSlot(s0.slot)});
  q.y = edgeAt(HalfEdge{s0.tri, prevSlot(s0.slot)});
  q.z = edgeAt(HalfEdge{s1.tri, nextSlot(s1.slot)});
  q.w = edgeAt(HalfEdge{s1.tri, prevSlot(s1.slot)});
  return q;
}

FlipResult IdealTriangulation::flip(EdgeId e) const {
  return flip(e, sides_.rbegin()->first + 1);
}

FlipResult IdealTriangulation::flip(EdgeId e, EdgeId newId) const {
  if (hasEdge(newId))
    fail(ErrorCode::Internal, "replacement edge id " + std::to_string(newId) + " already in use");
  auto [s0, s1] = sides(e);
  Quad q = quadAround(e); // rejects self-glued diagonals
  std::vector<std::array<EdgeId, 3>> next = tris_;
  // The new diagonal cuts the quadrilateral the other way: the triangle that
  // held (e, x, y) becomes (g, w, x) and the partner becomes (g, y, z),
  // both counterclockwise.
  next[s0.tri] = {newId, q.w, q.x};
  next[s1.tri] = {newId, q.y, q.z};
  return {IdealTriangulation(std::move(next)), newId};
}

std::map<EdgeId, Int> updateCoordsUnderFlip(const std::map<EdgeId, Int>& coords,
                                            const IdealTriangulation::Quad& quad, EdgeId newEdge) {
  auto get = [&](EdgeId id) -> Int {
    auto it = coords.find(id);
    return it == coords.end() ? Int(0) : it->second;
  };
  Int ac = get(quad.x) + get(quad.z), bd = get(quad.y) + get(quad.w);
  Int across = std::max(ac, bd) - get(quad.diagonal);
  if (across < 0)
    fail(ErrorCode::Internal, "negative crossing count out of the quadrilateral exchange");
  std::map<EdgeId, Int> out = coords;
  out.erase(quad.diagonal);
  if (across != 0) out[newEdge] = across;
  return out;
}

bool normalCoordsConsistent(const IdealTriangulation& tri, const std::map<EdgeId, Int>& coords) {
  auto get = [&](EdgeId id) -> Int {
    auto it = coords.find(id);
    return it == coords.end() ? Int(0) : it->second;
  };
  for (int t = 0; t < tri.triangleCount(); ++t) {
    Int a = get(tri.triangle(t)[0]), b = get(tri.triangle(t)[1]), c = get(tri.triangle(t)[2]);
    if (a > b + c || b > a + c || c > a + b) return false;
  }
  return true;
}

ArcClass ArcClass::arcOfSlope(Slope s) {
  ArcClass c;
  c.kind = Kind::SlopeArc;
  c.slope = std::move(s);
  return c;
}

ArcClass ArcClass::curveOfSlope(Slope s) {
  ArcClass c;
  c.kind = Kind::SlopeCurve;
  c.slope = std::move(s);
  return c;
}

ArcClass ArcClass::normal(int reference, std::map<EdgeId, Int> coords) {
  ArcClass c;
  c.kind = Kind::Normal;
  c.reference = reference;
  c.coords = std::move(coords);
  return c;
}

ArcClass ArcClass::edgeRef(int reference, EdgeId e) {
  ArcClass c;
  c.kind = Kind::EdgeRef;
  c.reference = reference;
  c.edge = e;
  return c;
}

bool ArcClass::operator==(const ArcClass& o) const {
  return kind == o.kind && slope == o.slope && reference == o.reference && edge == o.edge &&
         coords == o.coords;
}

bool ArcClass::operator<(const ArcClass& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (slope != o.slope) return slope < o.slope;
  if (reference != o.reference) return reference < o.reference;
  if (edge != o.edge) return edge < o.edge;
  return coords < o.coords;
}

std::string ArcClass::str() const {
  switch (kind) {
    case Kind::SlopeArc: return "arc " + slope.str();
    case Kind::SlopeCurve: return "curve " + slope.str();
    case Kind::EdgeRef:
      return "edge#" + std::to_string(edge) + "@ref" + std::to_string(reference);
    case Kind::Normal: {
      std::string s = "normal@ref" + std::to_string(reference) + "{";
      bool first = true;
      for (const auto& [id, v] : coords) {
        if (!first) s += ",";
        s += std::to_string(id) + ":" + v.str();
        first = false;
      }
      return s + "}";
    }
  }
  return "?";
}

namespace {
bool isSlopeKind(const ArcClass& a) {
  return a.kind == ArcClass::Kind::SlopeArc || a.kind == ArcClass::Kind::SlopeCurve;
}
} // namespace

Int intersectionNumber(const ArcClass& a, const ArcClass& b) {
  if (isSlopeKind(a) && isSlopeKind(b)) {
    bool aArc = a.kind == ArcClass::Kind::SlopeArc, bArc = b.kind == ArcClass::Kind::SlopeArc;
    if (aArc && bArc) return intersection_arcs(a.slope, b.slope);
    if (!aArc && !bArc) return intersection_closed(a.slope, b.slope);
    const Slope& arc = aArc ? a.slope : b.slope;
    const Slope& curve = aArc ? b.slope : a.slope;
    return intersection_arc_closed(arc, curve);
  }
  if (!isSlopeKind(a) && !isSlopeKind(b)) {
    if (a.reference != b.reference)
      fail(ErrorCode::IncompatibleReference,
           "classes reference triangulations " + std::to_string(a.reference) + " and " +
               std::to_string(b.reference));
    bool aEdge = a.kind == ArcClass::Kind::EdgeRef, bEdge = b.kind == ArcClass::Kind::EdgeRef;
    if (aEdge && bEdge) return 0; // edges of one triangulation are disjoint
    if (aEdge || bEdge) {
      const ArcClass& edge = aEdge ? a : b;
      const ArcClass& other = aEdge ? b : a;
      auto it = other.coords.find(edge.edge);
      return it == other.coords.end() ? Int(0) : it->second;
    }
    fail(ErrorCode::ModelUnsupported,
         "exact pairing of two coordinate classes is outside the exact models");
  }
  fail(ErrorCode::IncompatibleReference, "slope class paired against coordinate class");
}

namespace {
bool primitiveVec(const Int& p, const Int& q) {
  if (p == 0 && q == 0) return false;
  return gcd(abs(p), abs(q)) == 1;
}
} // namespace

std::vector<ArcClass> nearlySimpleArcs(const ProperGraph& g) {
  std::set<ArcClass> out;
  for (const GraphEdge& e : g.edges) {
    if (e.v0 != e.v1)
      fail(ErrorCode::ModelUnsupported,
           "proper-graph edges must be loops on a once-punctured torus piece");
    if (e.v0 < 0 || e.v0 >= static_cast<int>(g.puncture.size()))
      fail(ErrorCode::Internal, "graph edge attached to unknown vertex class");
  }
  // With every edge a loop, the two-visit rule leaves: one edge traversed
  // once as a proper arc (two endpoint visits), one edge closed up (one
  // cyclic visit), or two loops at one vertex concatenated (two visits).
  for (const GraphEdge& e : g.edges) {
    if (!primitiveVec(e.p, e.q)) continue; // trivial or imprimitive: no class
    if (g.puncture[e.v0]) out.insert(ArcClass::arcOfSlope(Slope(e.p, e.q)));
    out.insert(ArcClass::curveOfSlope(Slope(e.p, e.q)));
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (std::size_t j = i + 1; j < g.edges.size(); ++j) {
      const GraphEdge &e = g.edges[i], &f = g.edges[j];
      if (e.v0 != f.v0) continue;
      // Both smoothings of the concatenation at the shared puncture.
      for (int s : {1, -1}) {
        Int p = e.p + s * f.p, q = e.q + s * f.q;
        if (primitiveVec(p, q)) out.insert(ArcClass::curveOfSlope(Slope(p, q)));
      }
    }
  return std::vector<ArcClass>(out.begin(), out.end());
}

bool graphEssential(const ProperGraph& g) { return !nearlySimpleArcs(g).empty(); }

DistanceBound diamAS(const ProperGraph& g) {
  bool essential = graphEssential(g);
  std::set<int> met;
  for (const GraphEdge& e : g.edges) {
    met.insert(e.v0);
    met.insert(e.v1);
  }
  return diamCarriedClasses(static_cast<std::int64_t>(met.size()), g.ambientChi, essential);
}

std::int64_t chiPrime(std::int64_t chi) {
  std::int64_t a = chi < 0 ? -chi : chi;
  return a < 1 ? 1 : a;
}

} // namespace veerlat
