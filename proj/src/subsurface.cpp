#include "veerlat/subsurface.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "veerlat/annular.hpp"
#include "veerlat/errors.hpp"
#include "veerlat/window.hpp"

namespace veerlat {

namespace {

constexpr std::int64_t kAnnulusThreshold = 4;

// Canonical component representative: the smallest member, so reports and
// tie-breaks are independent of traversal order.
class UnionFind {
 public:
  void addNode(std::int64_t x) { parent_.emplace(x, x); }
  bool hasNode(std::int64_t x) const { return parent_.count(x) != 0; }

  std::int64_t find(std::int64_t x) {
    auto it = parent_.find(x);
    if (it == parent_.end()) fail(ErrorCode::Internal, "component lookup for an untracked edge");
    std::int64_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      std::int64_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  void unite(std::int64_t a, std::int64_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

  // Remap every root to the minimum member of its component.
  std::map<std::int64_t, std::int64_t> canonical() {
    std::map<std::int64_t, std::int64_t> rep;
    std::map<std::int64_t, std::int64_t> minOf;
    for (const auto& [node, p] : parent_) {
      (void)p;
      std::int64_t r = find(node);
      auto it = minOf.find(r);
      if (it == minOf.end() || node < it->second) minOf[r] = node;
    }
    for (const auto& [node, p] : parent_) {
      (void)p;
      rep[node] = minOf[find(node)];
    }
    return rep;
  }

 private:
  std::map<std::int64_t, std::int64_t> parent_;
};

} // namespace

// ---------------------------------------------------------------------------
// SubsurfaceSpec
// ---------------------------------------------------------------------------

SubsurfaceSpec SubsurfaceSpec::annulus(Slope coreSlope) {
  SubsurfaceSpec s;
  s.kind = Kind::Annulus;
  s.core = std::move(coreSlope);
  return s;
}

SubsurfaceSpec SubsurfaceSpec::explicitBoundary(std::vector<TauEdgeRef> edges) {
  SubsurfaceSpec s;
  s.kind = Kind::ExplicitBoundary;
  s.boundary = std::move(edges);
  return s;
}

std::string SubsurfaceSpec::str() const {
  if (kind == Kind::Annulus) return "annulus core " + core.str();
  std::ostringstream out;
  out << "boundary {";
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    if (i) out << ", ";
    out << boundary[i].orbit << "@" << boundary[i].level;
  }
  out << "}";
  return out.str();
}

// ---------------------------------------------------------------------------
// Cut components
// ---------------------------------------------------------------------------

// Components of the fiber minus the boundary arcs, at edge-instance
// granularity over a fixed window.  Nodes are the instances that are neither
// boundary edges nor boundary-crossers; two nodes are joined when they share
// a face.  All-boundary faces form their own (virtual) disk components with
// ids far below any real instance.
struct Subsurface::CutComponents {
  std::int64_t lo = 0, hi = 0;  // queryable event range [lo, hi)
  std::map<std::int64_t, std::int64_t> comp;
  std::set<std::int64_t> crossers;
  std::int64_t interiorComp = std::numeric_limits<std::int64_t>::min();
  bool interiorVirtual = false;
  std::map<std::int64_t, bool> twoSided;  // per boundary event
};

namespace {
std::int64_t virtualFaceId(std::int64_t creatorEvent, int which) {
  // Distinct from every real representative (real reps are instance events).
  return std::numeric_limits<std::int64_t>::min() / 2 - (creatorEvent * 2 + which);
}
} // namespace

Subsurface::CutComponents Subsurface::buildComponents(bool cutAlongBoundary) const {
  const VeeringComplex& cx = *cx_;
  const std::int64_t m = cx.period();
  const std::int64_t life = cx.maxLifetime();

  std::set<std::int64_t> bEvents;
  if (cutAlongBoundary)
    for (const auto& ref : boundary_) bEvents.insert(cx.eventOf(ref));

  std::int64_t center = 0, radius = 0;
  if (!bEvents.empty()) {
    center = (*bEvents.begin() + *bEvents.rbegin()) / 2;
    radius = (*bEvents.rbegin() - *bEvents.begin()) / 2;
  }
  const std::int64_t pad = (life + 2 * m + 2) * 4;
  CutComponents out;
  out.lo = center - radius - pad;
  out.hi = center + radius + pad;

  const std::int64_t sweepLo = out.lo - life - 2;
  const std::int64_t sweepHi = out.hi + life + 2;

  // Eligible nodes and the crosser set.
  UnionFind uf;
  for (std::int64_t e = sweepLo - life; e < sweepHi; ++e) {
    if (bEvents.count(e)) continue;
    bool crosses = false;
    for (std::int64_t b : bEvents) {
      OrderRel r = cx.edgeOrder(cx.refOfEvent(e), cx.refOfEvent(b));
      if (r == OrderRel::Less || r == OrderRel::Greater) {
        crosses = true;
        break;
      }
    }
    if (crosses) {
      out.crossers.insert(e);
      continue;
    }
    uf.addNode(e);
  }

  // Unify along faces; collect, per boundary edge, the components of the
  // faces adjacent to it (each face lies on one local side).
  std::map<std::int64_t, std::set<std::int64_t>> adjacency;  // boundary event -> comps
  std::map<std::int64_t, std::set<std::int64_t>> virtualSeen; // creator -> which
  auto faceOf = [&](std::array<std::int64_t, 3> tri, std::int64_t creator, int which) {
    std::vector<std::int64_t> eligible, onBoundary;
    for (std::int64_t e : tri) {
      if (bEvents.count(e)) onBoundary.push_back(e);
      else if (uf.hasNode(e)) eligible.push_back(e);
    }
    for (std::size_t i = 1; i < eligible.size(); ++i) uf.unite(eligible[0], eligible[i]);
    if (onBoundary.empty()) return;
    if (eligible.empty() && onBoundary.size() == 3) {
      // An all-boundary face is a disk component of its own; it is registered
      // when seen as an after-face of its creating event.
      if (which >= 0) virtualSeen[creator].insert(which);
      return;
    }
    // Defer component resolution until reps are canonical; remember the face
    // by one eligible member (or skip unresolvable faces).
    if (!eligible.empty())
      for (std::int64_t b : onBoundary) adjacency[b].insert(eligible[0]);
  };

  for (std::int64_t s = sweepLo; s < sweepHi; ++s) {
    VeeringComplex::EventQuad q = cx.eventQuad(s);
    faceOf({q.diagonal, q.x, q.y}, -1, -1);
    faceOf({q.diagonal, q.z, q.w}, -1, -1);
    faceOf({q.created, q.w, q.x}, s, 0);
    faceOf({q.created, q.y, q.z}, s, 1);
  }

  out.comp = uf.canonical();

  if (!cutAlongBoundary) return out;

  // Canonicalize the adjacency member instances to their component reps.
  std::map<std::int64_t, std::set<std::int64_t>> adjComps;
  for (auto& [b, members] : adjacency) {
    for (std::int64_t e : members) adjComps[b].insert(out.comp.at(e));
  }
  // Virtual all-boundary faces are adjacent to each of their three edges.
  std::vector<std::int64_t> virtualComps;
  for (const auto& [creator, whichSet] : virtualSeen) {
    for (int which : whichSet) {
      std::int64_t vid = virtualFaceId(creator, which);
      virtualComps.push_back(vid);
      VeeringComplex::EventQuad q = cx.eventQuad(creator);
      std::array<std::int64_t, 3> tri =
          which == 0 ? std::array<std::int64_t, 3>{q.created, q.w, q.x}
                     : std::array<std::int64_t, 3>{q.created, q.y, q.z};
      for (std::int64_t e : tri)
        if (bEvents.count(e)) adjComps[e].insert(vid);
    }
  }

  if (bEvents.empty()) {
    // No cut: the closure is the whole fiber; membership tests shortcut
    // before reaching here, but keep a sane interior for diagnostics.
    if (!out.comp.empty()) out.interiorComp = out.comp.begin()->second;
    return out;
  }

  // The interior side: a component adjacent to every boundary edge.
  std::set<std::int64_t> candidates;
  bool first = true;
  for (std::int64_t b : bEvents) {
    auto it = adjComps.find(b);
    std::set<std::int64_t> here = it == adjComps.end() ? std::set<std::int64_t>{} : it->second;
    if (first) {
      candidates = here;
      first = false;
    } else {
      std::set<std::int64_t> kept;
      std::set_intersection(candidates.begin(), candidates.end(), here.begin(), here.end(),
                            std::inserter(kept, kept.begin()));
      candidates = std::move(kept);
    }
  }
  if (candidates.empty())
    fail(ErrorCode::NotCompatible,
         "the boundary edges do not cobound a common subsurface side in this fiber");
  // Deterministic choice: the largest id wins only through the ordered-set
  // walk below — pick the smallest id, which prefers real components (their
  // reps are instance events) in their natural order.
  std::int64_t chosen = *candidates.begin();
  out.interiorComp = chosen;
  out.interiorVirtual = false;
  for (std::int64_t v : virtualComps)
    if (v == chosen) out.interiorVirtual = true;

  // A boundary edge has the interior on both local sides when every face
  // adjacent to it resolves to the interior component.
  for (std::int64_t b : bEvents) {
    const auto& comps = adjComps[b];
    bool allInterior = !comps.empty();
    for (std::int64_t c : comps)
      if (c != chosen) allInterior = false;
    out.twoSided[b] = allInterior;
  }
  return out;
}

const Subsurface::CutComponents& Subsurface::cut() const {
  if (!cut_) cut_ = std::make_shared<CutComponents>(buildComponents(true));
  return *cut_;
}

const Subsurface::CutComponents& Subsurface::uncut() const {
  if (!uncut_) uncut_ = std::make_shared<CutComponents>(buildComponents(false));
  return *uncut_;
}

// ---------------------------------------------------------------------------
// Resolution
// ---------------------------------------------------------------------------

Subsurface::Subsurface(const VeeringComplex& cx, SubsurfaceSpec spec)
    : cx_(&cx), spec_(std::move(spec)) {
  if (spec_.kind == SubsurfaceSpec::Kind::Annulus) {
    resolveAnnulus();
  } else {
    validateExplicit();
  }
}

void Subsurface::resolveAnnulus() {
  const VeeringComplex& cx = *cx_;
  if (!cx.torusModel())
    fail(ErrorCode::ModelUnsupported,
         "annulus cores are slope-addressed, which this fiber model does not carry; "
         "use an explicit boundary edge set");
  const std::int64_t m = cx.period();
  std::optional<TauEdgeRef> found;
  for (std::int64_t e = -3 - 8 * m; e < 8 * m && !found; ++e) {
    if (cx.slopeOf(cx.refOfEvent(e)) == spec_.core) found = cx.refOfEvent(e);
  }
  if (!found) {
    std::ostringstream out;
    out << "the annulus core " << spec_.core.str()
        << " is not realized by any sweep edge; cores available near level zero:";
    std::set<Slope> slate;
    for (std::int64_t e = -3; e < m; ++e) slate.insert(cx.slopeOf(cx.refOfEvent(e)));
    for (const Slope& s : slate) out << " " << s.str();
    out << "; an annulus missing every layer keeps the stable/unstable distance below the "
           "compatibility threshold";
    fail(ErrorCode::NotCompatible, out.str());
  }
  boundary_ = {*found};
  annular_ = true;
  chi_ = 0;
  chiPrime_ = 1;
  wholeFiberClosure_ = true;  // one arc cuts the once-punctured torus into an annulus

  const EigenSlopes& eig = cx.eigen();
  std::int64_t d = annularDistance(spec_.core, AnnularClass::ofEigen(eig.minus),
                                   AnnularClass::ofEigen(eig.plus));
  guard_ = GuardStatus::Verified;
  guardDistance_ = d;
  if (d < kAnnulusThreshold)
    fail(ErrorCode::NotCompatible,
         "the annulus at core " + spec_.core.str() + " has stable/unstable distance " +
             std::to_string(d) + ", below the compatibility threshold " +
             std::to_string(kAnnulusThreshold));
}

void Subsurface::validateExplicit() {
  const VeeringComplex& cx = *cx_;
  std::set<TauEdgeRef> uniq(spec_.boundary.begin(), spec_.boundary.end());
  boundary_.assign(uniq.begin(), uniq.end());
  for (std::size_t i = 0; i < boundary_.size(); ++i) {
    for (std::size_t j = i + 1; j < boundary_.size(); ++j) {
      OrderRel r = cx.edgeOrder(boundary_[i], boundary_[j]);
      if (r == OrderRel::Less || r == OrderRel::Greater)
        fail(ErrorCode::NotDisjoint,
             "boundary edges made at events " + std::to_string(cx.eventOf(boundary_[i])) +
                 " and " + std::to_string(cx.eventOf(boundary_[j])) +
                 " cross, so they bound no common subsurface");
    }
  }
  wholeFiberClosure_ = boundary_.empty() || (cx.torusModel() && boundary_.size() == 1);
  computeChi();
  annular_ = (chi_ == 0) && !boundary_.empty();
  chiPrime_ = std::max<std::int64_t>(chi_ < 0 ? -chi_ : chi_, 1);

  if (annular_ && cx.torusModel()) {
    spec_.core = cx.slopeOf(boundary_[0]);
    const EigenSlopes& eig = cx.eigen();
    std::int64_t d = annularDistance(spec_.core, AnnularClass::ofEigen(eig.minus),
                                     AnnularClass::ofEigen(eig.plus));
    guard_ = GuardStatus::Verified;
    guardDistance_ = d;
    if (d < kAnnulusThreshold)
      fail(ErrorCode::NotCompatible,
           "the annulus at core " + spec_.core.str() + " has stable/unstable distance " +
               std::to_string(d) + ", below the compatibility threshold " +
               std::to_string(kAnnulusThreshold));
  }
}

// chi of the subsurface from the cut piece of a canonical section: faces with
// an interior-side edge, interior edges once, boundary edges once per
// adjacent piece side, and corner classes under rotation stopped at the
// boundary.  Interior corner classes (full rotations) are punctures of the
// subsurface and subtract from the filled count.
void Subsurface::computeChi() {
  const VeeringComplex& cx = *cx_;
  if (boundary_.empty()) {
    chi_ = cx.fiberChi();
    return;
  }
  const CutComponents& cc = cut();
  if (cc.interiorVirtual) {
    // The interior side is a single all-boundary face: a disk.
    chi_ = 1;
    return;
  }
  Section s = extendToSection(cx, boundary_);
  const IdealTriangulation& tri = s.boundary();

  std::set<std::int64_t> bEvents;
  for (const auto& ref : boundary_) bEvents.insert(cx.eventOf(ref));
  auto isBoundary = [&](EdgeId e) { return bEvents.count(e) != 0; };
  auto isInterior = [&](EdgeId e) {
    if (isBoundary(e)) return false;
    auto it = cc.comp.find(e);
    if (it == cc.comp.end())
      fail(ErrorCode::Internal, "a section edge escaped the component window");
    return it->second == cc.interiorComp;
  };

  std::vector<bool> pieceFace(tri.triangleCount(), false);
  std::int64_t faces = 0;
  for (int t = 0; t < tri.triangleCount(); ++t) {
    for (EdgeId e : tri.triangle(t)) {
      if (isInterior(e)) {
        pieceFace[t] = true;
        break;
      }
    }
    if (pieceFace[t]) ++faces;
  }
  if (faces == 0)
    fail(ErrorCode::Internal, "the interior side has no face on its canonical section");

  std::int64_t interiorEdges = 0;
  for (EdgeId e : tri.edgeIds())
    if (isInterior(e)) ++interiorEdges;
  std::int64_t boundarySides = 0;
  for (std::int64_t b : bEvents) {
    auto [h0, h1] = tri.sides(b);
    if (pieceFace[h0.tri]) ++boundarySides;
    if (pieceFace[h1.tri]) ++boundarySides;
  }
  std::int64_t edges = interiorEdges + boundarySides;

  // Corner classes: rotation around a vertex crosses the corner's incoming
  // side; a crossing is allowed when that side is an interior edge.
  UnionFind corners;
  auto cornerId = [&](int t, int slot) { return static_cast<std::int64_t>(t) * 3 + slot; };
  for (int t = 0; t < tri.triangleCount(); ++t) {
    if (!pieceFace[t]) continue;
    for (int k = 0; k < 3; ++k) corners.addNode(cornerId(t, k));
  }
  for (int t = 0; t < tri.triangleCount(); ++t) {
    if (!pieceFace[t]) continue;
    for (int k = 0; k < 3; ++k) {
      HalfEdge crossed{t, IdealTriangulation::prevSlot(k)};
      EdgeId e = tri.edgeAt(crossed);
      if (!isInterior(e)) continue;
      HalfEdge other = tri.opposite(crossed);
      if (!pieceFace[other.tri])
        fail(ErrorCode::Internal, "an interior edge leads out of its own piece");
      corners.unite(cornerId(t, k), cornerId(other.tri, other.slot));
    }
  }
  std::map<std::int64_t, std::int64_t> rep = corners.canonical();
  std::set<std::int64_t> classes;
  std::set<std::int64_t> touchingBoundary;
  for (int t = 0; t < tri.triangleCount(); ++t) {
    if (!pieceFace[t]) continue;
    for (int k = 0; k < 3; ++k) {
      std::int64_t r = rep.at(cornerId(t, k));
      classes.insert(r);
      EdgeId incoming = tri.edgeAt({t, IdealTriangulation::prevSlot(k)});
      EdgeId outgoing = tri.edgeAt({t, k});
      if (isBoundary(incoming) || isBoundary(outgoing)) touchingBoundary.insert(r);
    }
  }
  std::int64_t vertices = static_cast<std::int64_t>(classes.size());
  std::int64_t interiorClasses =
      vertices - static_cast<std::int64_t>(touchingBoundary.size());

  chi_ = (vertices - edges + faces) - interiorClasses;
}

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

const Slope& Subsurface::core() const {
  if (!annular_ || !cx_->torusModel())
    fail(ErrorCode::ModelUnsupported, "only annular subsurfaces on torus fibers carry a core slope");
  return spec_.core;
}

std::int64_t Subsurface::guardDistance() const {
  if (guard_ != GuardStatus::Verified)
    fail(ErrorCode::Internal, "guard distance requested for an unverified subsurface");
  return guardDistance_;
}

std::string Subsurface::describe() const {
  std::string base = spec_.str();
  base += annular_ ? " (annulus)" : " (chi " + std::to_string(chi_) + ")";
  return base;
}

bool Subsurface::edgeOverClosure(std::int64_t edgeEvent) const {
  if (wholeFiberClosure_) return true;
  const VeeringComplex& cx = *cx_;
  for (const auto& ref : boundary_)
    if (cx.eventOf(ref) == edgeEvent) return true;
  const CutComponents& cc = cut();
  if (edgeEvent < cc.lo || edgeEvent >= cc.hi)
    windowOverrun("the subsurface membership window");
  if (cc.crossers.count(edgeEvent)) {
    for (const auto& ref : boundary_) {
      std::int64_t b = cx.eventOf(ref);
      OrderRel r = cx.edgeOrder(cx.refOfEvent(edgeEvent), ref);
      if (r == OrderRel::Less || r == OrderRel::Greater) {
        auto it = cc.twoSided.find(b);
        if (it == cc.twoSided.end() || !it->second) return false;
      }
    }
    return true;
  }
  auto it = cc.comp.find(edgeEvent);
  if (it == cc.comp.end()) windowOverrun("the subsurface membership window");
  return it->second == cc.interiorComp;
}

bool Subsurface::cellOverInterior(std::int64_t event) const {
  if (wholeFiberClosure_) return true;
  VeeringComplex::EventQuad q = cx_->eventQuad(event);
  for (std::int64_t e : {q.diagonal, q.x, q.y, q.z, q.w, q.created})
    if (!edgeOverClosure(e)) return false;
  return true;
}

bool Subsurface::sameFiberComponent(std::int64_t eventA, std::int64_t eventB) const {
  if (cx_->torusModel()) return true;
  const CutComponents& cc = uncut();
  auto a = cc.comp.find(eventA), b = cc.comp.find(eventB);
  if (a == cc.comp.end() || b == cc.comp.end())
    windowOverrun("the fiber component window");
  return a->second == b->second;
}

const std::vector<TauEdgeRef>& Subsurface::pocketAnchor() const {
  if (anchor_) return *anchor_;
  std::vector<TauEdgeRef> anchor = boundary_;
  if (!boundary_.empty() && !cx_->torusModel()) {
    // A fiber component untouched by the boundary would let sections through
    // the boundary rise or fall without limit, so the constrained family
    // would have no extremes.  Pinning such components at the reference
    // layer bounds the family; no cell over the subsurface is gained or
    // lost because every such cell sits in a component the boundary meets.
    std::vector<std::int64_t> boundaryEvents;
    boundaryEvents.reserve(boundary_.size());
    for (const auto& ref : boundary_) boundaryEvents.push_back(cx_->eventOf(ref));
    for (std::int64_t layerEvent : Section::base(*cx_, 0).boundaryEdges()) {
      bool touched = false;
      for (std::int64_t b : boundaryEvents) {
        if (sameFiberComponent(layerEvent, b)) {
          touched = true;
          break;
        }
      }
      if (!touched) anchor.push_back(cx_->refOfEvent(layerEvent));
    }
  }
  anchor_ = std::move(anchor);
  return *anchor_;
}

const SectionExtrema& Subsurface::extrema() const {
  if (!extrema_) extrema_ = extremaOf(*cx_, pocketAnchor());
  return *extrema_;
}

std::int64_t chiPrime(const Subsurface& y) { return y.chiPrimeOf(); }

} // namespace veerlat
