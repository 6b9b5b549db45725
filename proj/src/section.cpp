#include "veerlat/section.hpp"

#include <algorithm>
#include <string>

#include "veerlat/errors.hpp"
#include "veerlat/window.hpp"

namespace veerlat {

namespace {

// Longest face lifetime over one period: every tetrahedron sits at most
// this far above its parents and below its children.
std::int64_t faceSpan(const VeeringComplex& cx) {
  std::int64_t span = 1;
  for (std::int64_t s = 0; s < cx.period(); ++s) {
    auto ch = cx.childrenOf(s);
    span = std::max({span, ch[0] - s, ch[1] - s});
  }
  return span;
}

void requireSameComplex(const Section& a, const Section& b) {
  if (&a.complex() != &b.complex())
    fail(ErrorCode::Internal, "sections over different complexes were combined");
}

std::int64_t levelBound(const VeeringComplex& cx) {
  return static_cast<std::int64_t>(windowCap()) * cx.period();
}

} // namespace

Section::Section(const VeeringComplex& cx, std::int64_t floor, std::set<std::int64_t> extra)
    : cx_(&cx), floor_(floor), extra_(std::move(extra)) {
  normalize();
}

void Section::normalize() {
  while (!extra_.empty() && *extra_.begin() <= floor_) {
    if (*extra_.begin() == floor_) ++floor_;
    extra_.erase(extra_.begin());
  }
}

Section Section::base(const VeeringComplex& cx, std::int64_t level) {
  if (level > levelBound(cx) || level < -levelBound(cx))
    windowOverrun("the requested base section level");
  return Section(cx, level, {});
}

bool Section::contains(std::int64_t tetra) const {
  return tetra < floor_ || extra_.count(tetra) != 0;
}

std::int64_t Section::ceilLevel() const {
  return extra_.empty() ? floor_ : *extra_.rbegin() + 1;
}

bool Section::isIdeal() const {
  for (std::int64_t t : extra_) {
    auto p = cx_->parentsOf(t);
    if (!contains(p[0]) || !contains(p[1])) return false;
  }
  return true;
}

bool Section::operator==(const Section& o) const {
  return cx_ == o.cx_ && floor_ == o.floor_ && extra_ == o.extra_;
}

Section Section::moveUp(std::int64_t tetra) const {
  if (contains(tetra))
    fail(ErrorCode::MoveIllegal,
         "upward move at " + std::to_string(tetra) + ": the tetrahedron is already in the ideal");
  auto p = cx_->parentsOf(tetra);
  for (std::int64_t parent : {p[0], p[1]})
    if (!contains(parent))
      fail(ErrorCode::MoveIllegal,
           "upward move at " + std::to_string(tetra) + ": its bottom face made by " +
               std::to_string(parent) + " is not on the section");
  std::set<std::int64_t> extra = extra_;
  extra.insert(tetra);
  return Section(*cx_, floor_, std::move(extra));
}

Section Section::moveDown(std::int64_t tetra) const {
  if (!contains(tetra))
    fail(ErrorCode::MoveIllegal,
         "downward move at " + std::to_string(tetra) + ": the tetrahedron is not in the ideal");
  auto ch = cx_->childrenOf(tetra);
  for (std::int64_t child : {ch[0], ch[1]})
    if (contains(child))
      fail(ErrorCode::MoveIllegal,
           "downward move at " + std::to_string(tetra) + ": its top face is covered by " +
               std::to_string(child));
  if (tetra < floor_) {
    // Pull the floor below the removed tetrahedron and list the survivors.
    std::set<std::int64_t> extra = extra_;
    for (std::int64_t t = tetra + 1; t < floor_; ++t) extra.insert(t);
    return Section(*cx_, tetra, std::move(extra));
  }
  std::set<std::int64_t> extra = extra_;
  extra.erase(tetra);
  return Section(*cx_, floor_, std::move(extra));
}

std::vector<std::int64_t> Section::legalUps() const {
  std::int64_t span = faceSpan(*cx_);
  std::vector<std::int64_t> out;
  for (std::int64_t t = floor_; t < ceilLevel() + span; ++t) {
    if (contains(t)) continue;
    auto p = cx_->parentsOf(t);
    if (contains(p[0]) && contains(p[1])) out.push_back(t);
  }
  return out;
}

std::vector<std::int64_t> Section::legalDowns() const {
  std::int64_t span = faceSpan(*cx_);
  std::vector<std::int64_t> out;
  for (std::int64_t t = floor_ - span; t < ceilLevel(); ++t) {
    if (!contains(t)) continue;
    auto ch = cx_->childrenOf(t);
    if (!contains(ch[0]) && !contains(ch[1])) out.push_back(t);
  }
  return out;
}

Section Section::applyDeck(std::int64_t power) const {
  std::int64_t shift = power * cx_->period();
  std::set<std::int64_t> extra;
  for (std::int64_t t : extra_) extra.insert(t - shift);
  return Section(*cx_, floor_ - shift, std::move(extra));
}

bool Section::isPhiSection() const { return leq(applyDeck(1), *this); }

std::vector<std::int64_t> Section::boundaryEdges() const {
  std::vector<std::int64_t> out;
  for (std::int64_t e = floor_ - cx_->maxLifetime() - 1; e < ceilLevel(); ++e)
    if (contains(e) && !contains(cx_->killOfEvent(e))) out.push_back(e);
  if (static_cast<std::int64_t>(out.size()) != cx_->layerEdgeCount())
    fail(ErrorCode::Internal, "section boundary edge count diverges from the fiber Euler count");
  return out;
}

const IdealTriangulation& Section::boundary() const {
  if (boundary_) return *boundary_;
  std::int64_t span = faceSpan(*cx_);
  std::vector<std::array<EdgeId, 3>> tris;
  for (std::int64_t u = floor_ - span - 1; u < ceilLevel(); ++u) {
    if (!contains(u)) continue;
    auto ch = cx_->childrenOf(u);
    VeeringComplex::EventQuad q = cx_->eventQuad(u);
    if (!contains(ch[0])) tris.push_back({q.created, q.w, q.x});
    if (!contains(ch[1])) tris.push_back({q.created, q.y, q.z});
  }
  if (3 * static_cast<std::int64_t>(tris.size()) != 2 * cx_->layerEdgeCount())
    fail(ErrorCode::Internal, "section boundary face count diverges from the fiber Euler count");
  boundary_ = std::make_shared<const IdealTriangulation>(std::move(tris));
  return *boundary_;
}

bool Section::boundaryContains(TauEdgeRef e) const {
  std::int64_t ev = cx_->eventOf(e);
  return contains(ev) && !contains(cx_->killOfEvent(ev));
}

Section join(const Section& a, const Section& b) {
  requireSameComplex(a, b);
  std::int64_t floor = std::max(a.floor_, b.floor_);
  std::set<std::int64_t> extra;
  for (std::int64_t t : a.extra_)
    if (t >= floor) extra.insert(t);
  for (std::int64_t t : b.extra_)
    if (t >= floor) extra.insert(t);
  return Section(*a.cx_, floor, std::move(extra));
}

Section meet(const Section& a, const Section& b) {
  requireSameComplex(a, b);
  std::int64_t floor = std::min(a.floor_, b.floor_);
  std::set<std::int64_t> extra;
  std::int64_t hi = std::max(a.ceilLevel(), b.ceilLevel());
  for (std::int64_t t = floor; t < hi; ++t)
    if (a.contains(t) && b.contains(t)) extra.insert(t);
  return Section(*a.cx_, floor, std::move(extra));
}

bool leq(const Section& a, const Section& b) {
  requireSameComplex(a, b);
  std::int64_t lo = std::min(a.floor_, b.floor_);
  std::int64_t hi = std::max(a.ceilLevel(), b.ceilLevel());
  for (std::int64_t t = lo; t < hi; ++t)
    if (a.contains(t) && !b.contains(t)) return false;
  return true;
}

SectionInterval interval(const Section& a, const Section& b) {
  Section bottom = meet(a, b);
  Section top = join(a, b);
  std::vector<std::int64_t> cells;
  for (std::int64_t t = bottom.floorLevel(); t < top.ceilLevel(); ++t)
    if (top.contains(t) && !bottom.contains(t)) cells.push_back(t);
  return {std::move(bottom), std::move(top), std::move(cells)};
}

namespace {

// Constraint edges, deduplicated by event, with crossing pairs rejected.
std::vector<std::int64_t> disjointEvents(const VeeringComplex& cx,
                                         const std::vector<TauEdgeRef>& edges) {
  std::set<std::int64_t> events;
  for (TauEdgeRef e : edges) events.insert(cx.eventOf(e));
  std::vector<std::int64_t> out(events.begin(), events.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      OrderRel rel = cx.edgeOrder(cx.refOfEvent(out[i]), cx.refOfEvent(out[j]));
      if (rel != OrderRel::Incomparable)
        fail(ErrorCode::NotDisjoint, "the edges made at events " + std::to_string(out[i]) +
                                         " and " + std::to_string(out[j]) + " cross");
    }
  return out;
}

// Minimal downward-closed superset of the section containing the event.
Section raiseToInclude(Section s, std::int64_t event) {
  const VeeringComplex& cx = s.complex();
  std::set<std::int64_t> cone;
  std::vector<std::int64_t> stack{event};
  while (!stack.empty()) {
    std::int64_t t = stack.back();
    stack.pop_back();
    if (s.contains(t) || cone.count(t)) continue;
    cone.insert(t);
    auto p = cx.parentsOf(t);
    stack.push_back(p[0]);
    stack.push_back(p[1]);
  }
  for (std::int64_t t : cone) s = s.moveUp(t); // ascending: parents first
  return s;
}

// Maximal downward-closed subset of the section avoiding the event.
Section lowerToExclude(Section s, std::int64_t event) {
  const VeeringComplex& cx = s.complex();
  std::set<std::int64_t> cone;
  std::vector<std::int64_t> stack{event};
  while (!stack.empty()) {
    std::int64_t t = stack.back();
    stack.pop_back();
    if (!s.contains(t) || cone.count(t)) continue;
    cone.insert(t);
    auto ch = cx.childrenOf(t);
    stack.push_back(ch[0]);
    stack.push_back(ch[1]);
  }
  for (auto it = cone.rbegin(); it != cone.rend(); ++it) s = s.moveDown(*it); // children first
  return s;
}

} // namespace

Section extendToSection(const VeeringComplex& cx, const std::vector<TauEdgeRef>& edges) {
  if (edges.empty()) return Section::base(cx, 0);
  std::vector<std::int64_t> events = disjointEvents(cx, edges);
  std::int64_t bound = static_cast<std::int64_t>(windowCap()) * cx.period();
  for (std::int64_t e : events)
    if (e < -bound || cx.killOfEvent(e) > bound) windowOverrun("the requested boundary edges");

  Section s = Section::base(cx, *std::min_element(events.begin(), events.end()));
  for (std::int64_t e : events) s = raiseToInclude(s, e);
  for (std::int64_t e : events) s = lowerToExclude(s, cx.killOfEvent(e));
  for (std::int64_t e : events)
    if (!s.boundaryContains(cx.refOfEvent(e)))
      fail(ErrorCode::Internal,
           "extending to a section lost the placed edge at event " + std::to_string(e));
  return s;
}

namespace {

Section greedyUp(Section s, const std::set<std::int64_t>& keep) {
  std::int64_t bound = static_cast<std::int64_t>(windowCap()) * s.complex().period();
  for (;;) {
    if (s.ceilLevel() > bound) windowOverrun("the greedy top of the constrained family");
    bool moved = false;
    for (std::int64_t t : s.legalUps()) {
      if (keep.count(s.complex().eventQuad(t).diagonal)) continue;
      s = s.moveUp(t);
      moved = true;
      break;
    }
    if (!moved) return s;
  }
}

Section greedyDown(Section s, const std::set<std::int64_t>& keep) {
  std::int64_t bound = static_cast<std::int64_t>(windowCap()) * s.complex().period();
  for (;;) {
    if (s.floorLevel() < -bound) windowOverrun("the greedy bottom of the constrained family");
    bool moved = false;
    for (std::int64_t t : s.legalDowns()) {
      if (keep.count(t)) continue; // the top edge of t is the edge t creates
      s = s.moveDown(t);
      moved = true;
      break;
    }
    if (!moved) return s;
  }
}

} // namespace

SectionExtrema extremaOf(const VeeringComplex& cx, const std::vector<TauEdgeRef>& edges) {
  if (edges.empty())
    fail(ErrorCode::EmptyConstraint, "the family over the empty edge set has no top or bottom");
  Section start = extendToSection(cx, edges);
  std::set<std::int64_t> keep;
  for (TauEdgeRef e : edges) keep.insert(cx.eventOf(e));

  Section top = greedyUp(start, keep);
  Section bottom = greedyDown(start, keep);
  // Determinism: the same extremes must be reached from the opposite ends.
  if (greedyUp(bottom, keep) != top || greedyDown(top, keep) != bottom)
    fail(ErrorCode::Internal, "greedy extremum of the constrained family depends on its start");
  for (TauEdgeRef e : edges)
    if (!top.boundaryContains(e) || !bottom.boundaryContains(e))
      fail(ErrorCode::Internal, "greedy extremum of the constrained family lost an edge");
  return {std::move(bottom), std::move(top)};
}

Section topOf(const VeeringComplex& cx, const std::vector<TauEdgeRef>& edges) {
  return extremaOf(cx, edges).top;
}

Section bottomOf(const VeeringComplex& cx, const std::vector<TauEdgeRef>& edges) {
  return extremaOf(cx, edges).bottom;
}

std::vector<std::int64_t> monotonePath(const Section& from, const Section& to,
                                       const std::vector<TauEdgeRef>& edges) {
  requireSameComplex(from, to);
  if (!leq(from, to))
    fail(ErrorCode::NotOrdered, "no monotone path: the source section is not below the target");
  for (TauEdgeRef e : edges)
    if (!from.boundaryContains(e) || !to.boundaryContains(e))
      fail(ErrorCode::NotContaining, "a constrained edge is missing from a path endpoint");

  std::vector<std::int64_t> cells;
  for (std::int64_t t = from.floorLevel(); t < to.ceilLevel(); ++t)
    if (to.contains(t) && !from.contains(t)) cells.push_back(t);

  Section s = from;
  for (std::int64_t t : cells) {
    s = s.moveUp(t); // ascending order lists parents before children
    for (TauEdgeRef e : edges)
      if (!s.boundaryContains(e))
        fail(ErrorCode::Internal, "monotone path left the constrained family");
  }
  if (s != to) fail(ErrorCode::Internal, "monotone path missed its target section");
  return cells;
}

} // namespace veerlat
