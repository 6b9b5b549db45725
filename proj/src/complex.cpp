#include "veerlat/complex.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "veerlat/errors.hpp"

namespace veerlat {

namespace {

std::int64_t floorDiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

std::int64_t floorMod(std::int64_t a, std::int64_t b) { return a - floorDiv(a, b) * b; }

std::array<EdgeId, 3> canonicalTriple(std::array<EdgeId, 3> t) {
  std::array<EdgeId, 3> best = t;
  for (int r = 1; r < 3; ++r) {
    std::array<EdgeId, 3> rot = {t[r % 3], t[(r + 1) % 3], t[(r + 2) % 3]};
    best = std::min(best, rot);
  }
  return best;
}

// The canonical layered script of a shear word on the once-punctured torus.
// Initial edges 0, 1, 2 carry slopes 1/0, 0/1, 1/1; the shear R flips the
// edge carrying the image of 0/1 under the state matrix, L the image of 1/0,
// and the created edge carries the new mediant.
struct TorusScript {
  FlipScript script;
  std::vector<Slope> createdSlopes;
  Mat2 deck;
};

TorusScript buildTorusScript(const std::string& word) {
  TorusScript out;
  out.script.initial = {{0, 1, 2}, {2, 0, 1}};
  IdealTriangulation tri(out.script.initial);
  std::map<EdgeId, Slope> label = {{0, Slope(1, 0)}, {1, Slope(0, 1)}, {2, Slope(1, 1)}};
  Mat2 state = Mat2::identity();
  EdgeId next = 2;
  for (char ch : word) {
    Slope victim = state.apply(ch == 'R' ? Slope(0, 1) : Slope(1, 0));
    EdgeId vid = -1;
    for (const auto& [id, sl] : label)
      if (sl == victim) vid = id;
    if (vid < 0) fail(ErrorCode::Internal, "sweep victim slope is not in the current layer");
    state = state * (ch == 'R' ? Mat2::letterR() : Mat2::letterL());
    Slope fresh = state.apply(Slope(1, 1));
    EdgeId nid = ++next;
    FlipResult res = tri.flip(vid, nid);
    tri = std::move(res.tri);
    label.erase(vid);
    label.emplace(nid, fresh);
    out.script.flips.push_back(vid);
    out.createdSlopes.push_back(fresh);
  }
  // The deck relabeling matches final slopes with the monodromy images of the
  // initial ones.
  std::array<Slope, 3> basis = {Slope(1, 0), Slope(0, 1), Slope(1, 1)};
  for (const auto& [id, sl] : label) {
    EdgeId target = -1;
    for (int k = 0; k < 3; ++k)
      if (sl == state.apply(basis[k])) target = k;
    if (target < 0) fail(ErrorCode::Internal, "final layer slope is not a monodromy image of the initial layer");
    out.script.relabel.emplace(id, target);
  }
  out.deck = state;
  return out;
}

} // namespace

VeeringComplex VeeringComplex::fromMonodromy(const MonodromySpec& spec) {
  if (spec.kind == MonodromySpec::Kind::Script) {
    ScriptRun run = runScript(spec.script);
    return fromScriptRun(run, spec.script);
  }
  std::string word = spec.resolvedWord();
  TorusScript ts = buildTorusScript(word);
  ScriptRun run = runScript(ts.script);
  VeeringComplex c = fromScriptRun(run, ts.script);
  c.torus_ = true;
  c.word_ = word;
  c.eigen_ = eigenSlopes(ts.deck);
  c.orbitSlope_ = ts.createdSlopes;
  c.deck_ = ts.deck;
  return c;
}

VeeringComplex VeeringComplex::fromScriptRun(const ScriptRun& run, const FlipScript& script) {
  VeeringComplex c;
  c.m_ = static_cast<std::int64_t>(script.flips.size());
  c.layerEdges_ = run.initial.edgeCount();
  c.chi_ = run.initial.chi();
  if (c.layerEdges_ != -3 * c.chi_)
    fail(ErrorCode::Internal, "layer edge count is not -3 chi");
  const std::int64_t m = c.m_;

  // Provisional-id bookkeeping for one period.
  std::map<EdgeId, std::int64_t> createdEvent; // created id -> event
  for (std::int64_t s = 0; s < m; ++s) createdEvent.emplace(run.created[s], s);
  std::map<EdgeId, std::int64_t> flippedAt; // provisional id -> event flipping it
  for (std::int64_t s = 0; s < m; ++s) flippedAt.emplace(script.flips[s], s);
  std::map<EdgeId, EdgeId> invRelabel;
  for (const auto& [fin, init] : script.relabel) invRelabel.emplace(init, fin);

  // Kill event of the instance that carries provisional id `id` in period 0:
  // the first flip of the id, else the id survives into the next period under
  // the relabeling.  An id cycle that is never flipped means the monodromy
  // permutes a set of edges, so it is not pseudo-Anosov.
  auto killOfProvisional = [&](EdgeId id) -> std::int64_t {
    std::int64_t off = 0;
    EdgeId cur = id;
    std::set<EdgeId> visited;
    while (flippedAt.count(cur) == 0) {
      if (!visited.insert(cur).second)
        fail(ErrorCode::NotPseudoAnosov,
             "the script never flips the edge cycle through id " + std::to_string(id));
      auto it = script.relabel.find(cur);
      if (it == script.relabel.end())
        fail(ErrorCode::Internal, "surviving edge id is not in the relabeling");
      cur = it->second;
      off += m;
    }
    return off + flippedAt.at(cur);
  };
  // Creation event (negative) of the instance carrying an initial id.
  auto creOfInitial = [&](EdgeId id) -> std::int64_t {
    std::int64_t off = 0;
    EdgeId cur = id;
    std::set<EdgeId> visited;
    while (true) {
      if (!visited.insert(cur).second)
        fail(ErrorCode::NotPseudoAnosov,
             "the script never creates the edge cycle through id " + std::to_string(id));
      auto it = invRelabel.find(cur);
      if (it == invRelabel.end())
        fail(ErrorCode::Internal, "initial edge id is not hit by the relabeling");
      cur = it->second;
      off -= m;
      auto ce = createdEvent.find(cur);
      if (ce != createdEvent.end()) return off + ce->second;
    }
  };

  // Instance ids (= creation events) for every provisional id in the period.
  std::map<EdgeId, std::int64_t> instOf;
  for (const auto& [id, s] : createdEvent) instOf.emplace(id, s);
  for (EdgeId id : run.initial.edgeIds())
    if (instOf.count(id) == 0) instOf.emplace(id, creOfInitial(id));
  {
    std::set<std::int64_t> distinct;
    for (const auto& [id, e] : instOf)
      if (!distinct.insert(e).second)
        fail(ErrorCode::Internal, "two edges chase to one creation event");
  }

  // Orbit kill events, plus a consistency check: the kill of an initial
  // instance must agree with the periodic shift of its orbit's kill.
  c.kill_.resize(m);
  for (std::int64_t o = 0; o < m; ++o) {
    c.kill_[o] = killOfProvisional(run.created[o]);
    if (c.kill_[o] <= o) fail(ErrorCode::Internal, "edge killed before it was created");
  }
  c.maxLifetime_ = 0;
  for (std::int64_t o = 0; o < m; ++o) c.maxLifetime_ = std::max(c.maxLifetime_, c.kill_[o] - o);
  for (EdgeId id : run.initial.edgeIds()) {
    if (createdEvent.count(id)) continue;
    std::int64_t e = instOf.at(id);
    std::int64_t o = floorMod(e, m), level = floorDiv(e, m);
    if (killOfProvisional(id) != c.kill_[o] + level * m)
      fail(ErrorCode::Internal, "kill chase disagrees with the periodic kill of the orbit");
  }

  // Quadrilaterals per event in instance ids, and the bottom-diagonal orbit
  // bijection (each orbit is the top of its creating tetrahedron and the
  // bottom of exactly one).
  c.quads_.resize(m);
  {
    std::set<std::int64_t> diagOrbits;
    for (std::int64_t s = 0; s < m; ++s) {
      const IdealTriangulation::Quad& q = run.quads[s];
      c.quads_[s] = {instOf.at(q.diagonal), instOf.at(q.x), instOf.at(q.y),
                     instOf.at(q.z),        instOf.at(q.w), s};
      if (!diagOrbits.insert(floorMod(c.quads_[s].diagonal, m)).second)
        fail(ErrorCode::Internal, "two tetrahedra in one period share a bottom edge orbit");
    }
  }

  // Face lifetimes: re-run the period tagging triangles.  Tag -1-k marks
  // initial triangle k; tag 2s / 2s+1 marks the two triangles made by event
  // s.  Faces surviving the period continue as the matched initial triangle
  // of the next period.
  std::vector<std::int64_t> tags(run.initial.triangleCount());
  for (std::size_t k = 0; k < tags.size(); ++k) tags[k] = -1 - static_cast<std::int64_t>(k);
  std::vector<std::array<std::int64_t, 2>> parentTags(m);
  std::map<std::int64_t, std::int64_t> destroyedAt; // tag -> event
  {
    IdealTriangulation cur = run.initial;
    for (std::int64_t s = 0; s < m; ++s) {
      EdgeId f = script.flips[s];
      auto [h0, h1] = cur.sides(f);
      parentTags[s] = {tags[h0.tri], tags[h1.tri]};
      destroyedAt.emplace(tags[h0.tri], s);
      destroyedAt.emplace(tags[h1.tri], s);
      FlipResult res = cur.flip(f, run.created[s]);
      cur = std::move(res.tri);
      tags[h0.tri] = 2 * s;
      tags[h1.tri] = 2 * s + 1;
    }
  }
  // Match final triangles with initial ones through the relabeling (stable
  // pairing among identical triples).
  std::vector<std::pair<std::array<EdgeId, 3>, int>> fin, ini;
  for (int t = 0; t < run.final_.triangleCount(); ++t) {
    std::array<EdgeId, 3> tri = run.final_.triangle(t);
    for (EdgeId& e : tri) e = script.relabel.at(e);
    fin.emplace_back(canonicalTriple(tri), t);
  }
  for (int k = 0; k < run.initial.triangleCount(); ++k)
    ini.emplace_back(canonicalTriple(run.initial.triangle(k)), k);
  std::sort(fin.begin(), fin.end());
  std::sort(ini.begin(), ini.end());
  std::vector<int> sigma(fin.size()), sigmaInv(ini.size());
  for (std::size_t i = 0; i < fin.size(); ++i) {
    if (fin[i].first != ini[i].first)
      fail(ErrorCode::Internal, "validated relabeling fails to match triangles");
    sigma[fin[i].second] = ini[i].second;
    sigmaInv[ini[i].second] = fin[i].second;
  }

  // Creation event of initial triangle k (negative), chasing through
  // surviving faces of earlier periods.
  std::map<int, std::int64_t> triCreMemo;
  std::set<int> triCreActive;
  auto creOfInitTri = [&](auto&& self, int k) -> std::int64_t {
    auto it = triCreMemo.find(k);
    if (it != triCreMemo.end()) return it->second;
    if (!triCreActive.insert(k).second)
      fail(ErrorCode::NotPseudoAnosov, "the script never remakes a face cycle");
    std::int64_t T = tags[sigmaInv[k]];
    std::int64_t cre = (T >= 0) ? T / 2 - m : self(self, static_cast<int>(-1 - T)) - m;
    triCreActive.erase(k);
    triCreMemo.emplace(k, cre);
    return cre;
  };
  // Destruction event of initial triangle k (of period 0).
  std::map<int, std::int64_t> triDesMemo;
  std::set<int> triDesActive;
  auto desOfInitTri = [&](auto&& self, int k) -> std::int64_t {
    auto it = triDesMemo.find(k);
    if (it != triDesMemo.end()) return it->second;
    auto hit = destroyedAt.find(-1 - static_cast<std::int64_t>(k));
    std::int64_t des;
    if (hit != destroyedAt.end()) {
      des = hit->second;
    } else {
      if (!triDesActive.insert(k).second)
        fail(ErrorCode::NotPseudoAnosov, "the script never unmakes a face cycle");
      // Survives the period: find its final position and continue.
      int ft = -1;
      for (std::size_t t = 0; t < tags.size(); ++t)
        if (tags[t] == -1 - static_cast<std::int64_t>(k)) ft = static_cast<int>(t);
      if (ft < 0) fail(ErrorCode::Internal, "surviving face tag lost");
      des = m + self(self, sigma[ft]);
      triDesActive.erase(k);
    }
    triDesMemo.emplace(k, des);
    return des;
  };

  c.parents_.resize(m);
  c.children_.resize(m);
  for (std::int64_t s = 0; s < m; ++s) {
    for (int i = 0; i < 2; ++i) {
      std::int64_t T = parentTags[s][i];
      c.parents_[s][i] = (T >= 0) ? T / 2 : creOfInitTri(creOfInitTri, static_cast<int>(-1 - T));
      if (c.parents_[s][i] >= s) fail(ErrorCode::Internal, "face created after the tetrahedron above it");
    }
    for (int i = 0; i < 2; ++i) {
      std::int64_t T = 2 * s + i;
      std::int64_t des;
      auto hit = destroyedAt.find(T);
      if (hit != destroyedAt.end()) {
        des = hit->second;
      } else {
        int ft = -1;
        for (std::size_t t = 0; t < tags.size(); ++t)
          if (tags[t] == T) ft = static_cast<int>(t);
        if (ft < 0) fail(ErrorCode::Internal, "surviving face tag lost");
        des = m + desOfInitTri(desOfInitTri, sigma[ft]);
      }
      c.children_[s][i] = des;
      if (des <= s) fail(ErrorCode::Internal, "face destroyed before the tetrahedron below it");
    }
  }

  // Layer triangulations 0 .. m-1 in instance ids.
  {
    std::vector<std::array<EdgeId, 3>> tris0;
    for (int t = 0; t < run.initial.triangleCount(); ++t) {
      std::array<EdgeId, 3> tri = run.initial.triangle(t);
      for (EdgeId& e : tri) e = instOf.at(e);
      tris0.push_back(tri);
    }
    c.layers_.emplace_back(tris0);
    for (std::int64_t s = 0; s + 1 < m; ++s) {
      FlipResult res = c.layers_.back().flip(c.quads_[s].diagonal, s);
      c.layers_.push_back(std::move(res.tri));
    }
    // Periodicity canary: one more flip must reproduce layer 0 shifted by m.
    FlipResult res = c.layers_.back().flip(c.quads_[m - 1].diagonal, m - 1);
    std::vector<std::array<EdgeId, 3>> got, want;
    for (int t = 0; t < res.tri.triangleCount(); ++t) got.push_back(canonicalTriple(res.tri.triangle(t)));
    for (std::array<EdgeId, 3> tri : tris0) {
      for (EdgeId& e : tri) e += m;
      want.push_back(canonicalTriple(tri));
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) fail(ErrorCode::Internal, "unrolled layers are not periodic under the deck shift");
  }

  return c;
}

const std::string& VeeringComplex::word() const {
  if (!torus_) fail(ErrorCode::ModelUnsupported, "shear word is only defined for torus models");
  return word_;
}

const EigenSlopes& VeeringComplex::eigen() const {
  if (!eigen_) fail(ErrorCode::ModelUnsupported, "eigen slopes are only defined for torus models");
  return *eigen_;
}

Slope VeeringComplex::slopeOf(const TauEdgeRef& ref) const {
  if (!torus_) fail(ErrorCode::ModelUnsupported, "edge slopes are only defined for torus models");
  std::int64_t o = normOrbit(ref.orbit);
  if (ref.level > 1000000 || ref.level < -1000000)
    fail(ErrorCode::Internal, "slope requested at an unreasonable level");
  return deck_.pow(static_cast<long>(ref.level)).apply(orbitSlope_[o]);
}

TauEdgeRef VeeringComplex::refOfEvent(std::int64_t event) const {
  std::int64_t level = floorDiv(event, m_);
  return {event - level * m_, level};
}

std::int64_t VeeringComplex::normOrbit(std::int64_t orbit) const {
  if (orbit < 0 || orbit >= m_) fail(ErrorCode::Internal, "orbit index out of range");
  return orbit;
}

std::int64_t VeeringComplex::killOfEvent(std::int64_t event) const {
  std::int64_t level = floorDiv(event, m_);
  return kill_[event - level * m_] + level * m_;
}

VeeringComplex::EventQuad VeeringComplex::eventQuad(std::int64_t event) const {
  std::int64_t level = floorDiv(event, m_), shift = level * m_;
  EventQuad q = quads_[event - shift];
  q.diagonal += shift;
  q.x += shift;
  q.y += shift;
  q.z += shift;
  q.w += shift;
  q.created += shift;
  return q;
}

std::array<std::int64_t, 2> VeeringComplex::parentsOf(std::int64_t event) const {
  std::int64_t level = floorDiv(event, m_), shift = level * m_;
  std::array<std::int64_t, 2> p = parents_[event - shift];
  return {p[0] + shift, p[1] + shift};
}

std::array<std::int64_t, 2> VeeringComplex::childrenOf(std::int64_t event) const {
  std::int64_t level = floorDiv(event, m_), shift = level * m_;
  std::array<std::int64_t, 2> ch = children_[event - shift];
  return {ch[0] + shift, ch[1] + shift};
}

const IdealTriangulation& VeeringComplex::layerTriangulation(std::int64_t layer) const {
  std::int64_t level = floorDiv(layer, m_), shift = level * m_;
  if (shift == 0) return layers_[layer];
  std::lock_guard<std::mutex> lock(*cacheMutex_);
  auto it = shiftedLayers_.find(layer);
  if (it != shiftedLayers_.end()) return it->second;
  std::vector<std::array<EdgeId, 3>> tris;
  const IdealTriangulation& base = layers_[layer - shift];
  for (int t = 0; t < base.triangleCount(); ++t) {
    std::array<EdgeId, 3> tri = base.triangle(t);
    for (EdgeId& e : tri) e += shift;
    tris.push_back(tri);
  }
  return shiftedLayers_.emplace(layer, IdealTriangulation(std::move(tris))).first->second;
}

const std::vector<Color>& VeeringComplex::validateVeering() const {
  std::lock_guard<std::mutex> lock(*cacheMutex_);
  if (colors_) return *colors_;
  std::vector<std::optional<Color>> assigned(m_);
  auto force = [&](std::int64_t edgeInstance, Color col, std::int64_t tetra) {
    std::int64_t o = floorMod(edgeInstance, m_);
    if (!assigned[o]) {
      assigned[o] = col;
    } else if (*assigned[o] != col) {
      fail(ErrorCode::Unveerable,
           "tetrahedron at event " + std::to_string(tetra) + " needs edge orbit " + std::to_string(o) +
               " to be " + (col == Color::Red ? "red" : "blue") + ", but another tetrahedron forces the opposite");
    }
  };
  // Counterclockwise from a bottom-diagonal endpoint the four side edges of a
  // tetrahedron are forced red, blue, red, blue.
  for (std::int64_t s = 0; s < m_; ++s) {
    force(quads_[s].x, Color::Red, s);
    force(quads_[s].y, Color::Blue, s);
    force(quads_[s].z, Color::Red, s);
    force(quads_[s].w, Color::Blue, s);
  }
  std::vector<Color> colors(m_);
  for (std::int64_t o = 0; o < m_; ++o) {
    if (!assigned[o]) {
      // The orbit is never a side of any tetrahedron, so the veering
      // condition does not constrain it; any choice is consistent.  Layered
      // torus models always constrain every orbit.
      if (torus_) fail(ErrorCode::Internal, "torus edge orbit missed by all quadrilaterals");
      assigned[o] = Color::Red;
    }
    colors[o] = *assigned[o];
  }
  if (torus_) {
    // Cross-check against the slope picture: an edge is red exactly when its
    // slope lies strictly between the contracting and expanding slopes.
    for (std::int64_t o = 0; o < m_; ++o) {
      const Slope& sl = orbitSlope_[o];
      bool red;
      if (sl.q == 0) {
        red = false;
      } else {
        QuadVal v = QuadVal::rational(sl.p, sl.q);
        red = (eigen_->minus < v) && (v < eigen_->plus);
      }
      if (red != (colors[o] == Color::Red))
        fail(ErrorCode::Internal, "chirality coloring disagrees with the eigen-slope interval rule");
    }
  }
  colors_ = std::move(colors);
  return *colors_;
}

Int VeeringComplex::crossingForward(std::int64_t earlier, std::int64_t target) const {
  std::int64_t cur = earlier;
  while (true) {
    std::int64_t s = killOfEvent(cur);
    if (s > target) return 0; // coexists with the target's layer: disjoint
    if (s == target) return 1; // dies into the co-diagonal of the creating flip
    // After its death the instance survives as an arc crossing the created
    // edge once; sweep it forward.  If it ever matches the co-diagonal of the
    // next flip exactly, it has become that created edge: continue from there.
    std::map<EdgeId, Int> coords{{s, Int(1)}};
    std::int64_t became = -1;
    for (std::int64_t t = s + 1; t < target; ++t) {
      EventQuad eq = eventQuad(t);
      if (coords.size() == 1 && coords.begin()->first == eq.diagonal && coords.begin()->second == 1) {
        became = t;
        break;
      }
      IdealTriangulation::Quad q{eq.diagonal, eq.x, eq.y, eq.z, eq.w};
      coords = updateCoordsUnderFlip(coords, q, eq.created);
      if (coords.empty())
        fail(ErrorCode::Internal, "swept arc lost all crossings away from a co-diagonal");
    }
    if (became >= 0) {
      cur = became;
      continue;
    }
    EventQuad eq = eventQuad(target);
    if (coords.size() == 1 && coords.begin()->first == eq.diagonal && coords.begin()->second == 1)
      return 0; // the arc is the created edge itself
    auto get = [&](std::int64_t id) -> Int {
      auto it = coords.find(id);
      return it == coords.end() ? Int(0) : it->second;
    };
    Int across = std::max(get(eq.x) + get(eq.z), get(eq.y) + get(eq.w)) - get(eq.diagonal);
    if (across < 0) fail(ErrorCode::Internal, "negative crossing count in the temporal order sweep");
    return across;
  }
}

OrderRel VeeringComplex::edgeOrder(const TauEdgeRef& a, const TauEdgeRef& b) const {
  normOrbit(a.orbit);
  normOrbit(b.orbit);
  std::int64_t ea = eventOf(a), eb = eventOf(b);
  if (ea == eb) return OrderRel::Equal;
  std::int64_t ka = killOfEvent(ea), kb = killOfEvent(eb);
  if (ka <= eb) return crossingForward(ea, eb) > 0 ? OrderRel::Less : OrderRel::Incomparable;
  if (kb <= ea) return crossingForward(eb, ea) > 0 ? OrderRel::Greater : OrderRel::Incomparable;
  return OrderRel::Incomparable; // lifetimes overlap: realized disjointly in a common layer
}

} // namespace veerlat
