#include "veerlat/pocket.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <random>
#include <set>
#include <sstream>

#include "veerlat/errors.hpp"
#include "veerlat/window.hpp"

namespace veerlat {

namespace {

// Distance-scale constants of the check battery, all multiples of the base
// projection-diameter scale 15.
constexpr std::int64_t kScale = 15;                 // D
constexpr std::int64_t kClosedDistance = kScale + 1;       // 16
constexpr std::int64_t kFlipProgress = 2 * kScale;         // 30
constexpr std::int64_t kStaysClose = 4 * kScale;           // 60
constexpr std::int64_t kRightPlace = 2 * kScale + 11;      // 41
constexpr std::int64_t kCertTop = 9 * kScale;              // 135
constexpr std::int64_t kCertBottom = 7 * kScale;           // 105
constexpr std::int64_t kSpectralGate = 10 * kScale;        // 150
constexpr std::int64_t kCountOffset = 16 * kScale;         // 240
constexpr std::int64_t kBandLo = 3 * kScale;               // 45
constexpr std::int64_t kBandHi = 5 * kScale;               // 75
constexpr std::int64_t kBandCenter = 4 * kScale;           // 60
constexpr std::int64_t kIterateOrderGate = 20;
constexpr std::int64_t kIterateOrderBound = 4;

// Annotation carried by every distance-valued row: annular distances count
// 1 + (crossings of chosen lifts), and two-sided comparisons take the
// diameter of the union of both projections, so a nearest-representative
// reading of the same quantity can be smaller by up to 2.
constexpr const char* kDistanceSlack =
    "distance = 1 + lift crossings, two-sided rows use the diameter of the "
    "union; a nearest-pair reading can be up to 2 lower";

std::uint64_t fnv64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

bool exactAnnularModel(const Subsurface& y) {
  return y.annular() && y.complex().torusModel();
}

std::vector<AnnularClass> annularClassesOf(const Subsurface& y,
                                           const std::vector<std::int64_t>& edgeEvents) {
  const VeeringComplex& cx = y.complex();
  const Slope& core = y.core();
  std::set<Slope> seen;
  for (std::int64_t e : edgeEvents) seen.insert(cx.slopeOf(cx.refOfEvent(e)));
  std::vector<AnnularClass> out;
  for (const Slope& s : seen)
    if (det(s, core) != 0) out.push_back(AnnularClass::ofSlope(s));
  return out;
}

ProperGraph fiberGraphOf(const Subsurface& y, const std::vector<std::int64_t>& edgeEvents) {
  const VeeringComplex& cx = y.complex();
  std::set<Slope> seen;
  for (std::int64_t e : edgeEvents) seen.insert(cx.slopeOf(cx.refOfEvent(e)));
  ProperGraph g;
  g.ambientChi = y.chi();
  g.puncture = {true};
  for (const Slope& s : seen) g.edges.push_back(GraphEdge{0, 0, s.p, s.q});
  return g;
}

} // namespace

// ---------------------------------------------------------------------------
// Projections
// ---------------------------------------------------------------------------

Projection projTau(const Subsurface& y, const std::vector<std::int64_t>& edgeEvents) {
  const VeeringComplex& cx = y.complex();
  if (exactAnnularModel(y)) {
    Projection p;
    p.annular = true;
    p.annularClasses = annularClassesOf(y, edgeEvents);
    return p;
  }
  if (!y.annular() && cx.torusModel() && y.tauBoundary().empty()) {
    Projection p;
    p.annular = false;
    p.graph = fiberGraphOf(y, edgeEvents);
    p.arcClasses = nearlySimpleArcs(*p.graph);
    return p;
  }
  fail(ErrorCode::ModelUnsupported,
       "projection into " + y.describe() + " has no exact model on this fiber");
}

Projection projTau(const Subsurface& y, const Section& s) {
  return projTau(y, s.boundaryEdges());
}

LambdaProjection lambdaProjection(const Subsurface& y) {
  if (!exactAnnularModel(y))
    fail(ErrorCode::ModelUnsupported,
         "the laminations project exactly only into annuli on torus fibers");
  const EigenSlopes& eig = y.complex().eigen();
  return LambdaProjection{AnnularClass::ofEigen(eig.minus), AnnularClass::ofEigen(eig.plus)};
}

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

DistanceBound dY(const Subsurface& y, const Projection& a, const Projection& b) {
  if (exactAnnularModel(y)) {
    if (a.annularClasses.empty())
      fail(ErrorCode::EmptyProjection,
           "the first surface projects to nothing in " + y.describe());
    if (b.annularClasses.empty())
      fail(ErrorCode::EmptyProjection,
           "the second surface projects to nothing in " + y.describe());
    std::vector<AnnularClass> all = a.annularClasses;
    all.insert(all.end(), b.annularClasses.begin(), b.annularClasses.end());
    return DistanceBound{DistanceBound::Kind::Exact, annularDiameter(y.core(), all),
                         "annular diameter of the union"};
  }
  if (a.graph && b.graph) {
    ProperGraph g = *a.graph;
    g.edges.insert(g.edges.end(), b.graph->edges.begin(), b.graph->edges.end());
    return diamAS(g);
  }
  fail(ErrorCode::ModelUnsupported,
       "no distance model for " + y.describe() + " on this fiber");
}

DistanceBound dY(const Subsurface& y, const Section& a, const Section& b) {
  return dY(y, projTau(y, a), projTau(y, b));
}

DistanceBound dYToLambda(const Subsurface& y, const Section& s, bool plusSide) {
  if (!exactAnnularModel(y))
    fail(ErrorCode::ModelUnsupported,
         "lamination distances are exact only in annuli on torus fibers");
  Projection p = projTau(y, s);
  if (p.annularClasses.empty())
    fail(ErrorCode::EmptyProjection, "the section projects to nothing in " + y.describe());
  LambdaProjection lam = lambdaProjection(y);
  std::vector<AnnularClass> all = p.annularClasses;
  all.push_back(plusSide ? lam.plus : lam.minus);
  return DistanceBound{DistanceBound::Kind::Exact, annularDiameter(y.core(), all),
                       "annular diameter against the lamination"};
}

DistanceBound dYLambdaMinusPlus(const Subsurface& y) {
  if (!exactAnnularModel(y))
    fail(ErrorCode::ModelUnsupported,
         "lamination distances are exact only in annuli on torus fibers");
  return DistanceBound{DistanceBound::Kind::Exact, y.guardDistance(),
                       "annular distance between the laminations"};
}

// ---------------------------------------------------------------------------
// Pockets
// ---------------------------------------------------------------------------

namespace {
std::vector<std::int64_t> regionOf(const Subsurface& y, const std::vector<std::int64_t>& cells) {
  std::vector<std::int64_t> out;
  for (std::int64_t c : cells)
    if (y.cellOverInterior(c)) out.push_back(c);
  return out;
}
} // namespace

Pocket maximalPocket(const Subsurface& y) {
  const SectionExtrema& ex = y.extrema();
  SectionInterval iv = interval(ex.bottom, ex.top);
  return Pocket{Pocket::Kind::Maximal, iv.bottom, iv.top, iv.cells, regionOf(y, iv.cells)};
}

Section retractToPocket(const Section& t, const Subsurface& y) {
  const SectionExtrema& ex = y.extrema();
  Section viaMeet = join(ex.bottom, meet(ex.top, t));
  Section viaJoin = meet(ex.top, join(ex.bottom, t));
  if (viaMeet != viaJoin)
    fail(ErrorCode::Internal, "the two retraction formulas disagree");
  return viaMeet;
}

Pocket pinchedPocket(const Subsurface& y, const Section& t1, const Section& t2) {
  Section r1 = retractToPocket(t1, y);
  Section r2 = retractToPocket(t2, y);
  SectionInterval iv = interval(r1, r2);
  return Pocket{Pocket::Kind::Pinched, iv.bottom, iv.top, iv.cells, regionOf(y, iv.cells)};
}

std::int64_t overlapIndex(const Subsurface& y) {
  const VeeringComplex& cx = y.complex();
  const auto& boundary = y.tauBoundary();
  if (boundary.empty()) return 1;
  if (cx.torusModel()) return 1;  // connected fiber: essential translates always meet
  const std::int64_t m = cx.period();
  std::vector<std::int64_t> events;
  for (const auto& ref : boundary) events.push_back(cx.eventOf(ref));
  for (std::int64_t i = 1; i <= windowCap(); ++i) {
    for (std::int64_t a : events) {
      for (std::int64_t b : events) {
        bool same = false;
        try {
          same = y.sameFiberComponent(a, b - i * m);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::WindowExceeded) throw;
          fail(ErrorCode::NoOverlapFound,
               "no positive deck power returns the boundary of " + y.describe() +
                   " to its fiber component within the component window");
        }
        if (same) return i;
      }
    }
  }
  fail(ErrorCode::NoOverlapFound,
       "no positive deck power up to " + std::to_string(windowCap()) +
           " returns the boundary of " + y.describe() + " to its fiber component");
}

Pocket isolatedPocket(const Subsurface& y, bool overrideGate) {
  const VeeringComplex& cx = y.complex();
  if (!exactAnnularModel(y))
    fail(ErrorCode::ModelUnsupported,
         "the isolated-pocket construction needs the exact annular model");
  const std::int64_t measured = y.guardDistance();
  const bool met = measured >= kSpectralGate;
  if (!met && !overrideGate)
    fail(ErrorCode::HypothesisUnmet,
         "the stable/unstable distance at " + y.describe() + " is " +
             std::to_string(measured) + ", below the spectral threshold " +
             std::to_string(kSpectralGate));

  const Slope& core = y.core();
  LambdaProjection lam = lambdaProjection(y);
  const std::int64_t m = cx.period();

  std::optional<std::int64_t> bestK;
  std::int64_t bestD = -1, bestScore = 0;
  for (std::int64_t k = -2 * m - 3; k <= 2 * m + 3; ++k) {
    Section t = Section::base(cx, k);
    std::vector<AnnularClass> cls = annularClassesOf(y, t.boundaryEdges());
    if (cls.empty()) continue;
    cls.push_back(lam.plus);
    std::int64_t d = annularDiameter(core, cls);
    if (d < kBandLo || d > kBandHi) continue;
    std::int64_t score = d >= kBandCenter ? d - kBandCenter : kBandCenter - d;
    if (!bestK || score < bestScore) {
      bestK = k;
      bestD = d;
      bestScore = score;
    }
  }
  if (!bestK)
    fail(ErrorCode::NoT0InBand,
         "no base section lands in the middle band [" + std::to_string(kBandLo) + ", " +
             std::to_string(kBandHi) + "] at " + y.describe());

  Section seed = Section::base(cx, *bestK);
  const std::int64_t n = overlapIndex(y);
  Section top = retractToPocket(seed, y);
  Section bottom = retractToPocket(seed.applyDeck(n), y);
  SectionInterval iv = interval(bottom, top);

  Pocket p{Pocket::Kind::Isolated, iv.bottom, iv.top, iv.cells, regionOf(y, iv.cells)};
  p.overlapIndex = n;
  p.start = seed;
  p.startDistancePlus = bestD;
  p.certTopPlus = dYToLambda(y, top, true).value;
  p.certBottomMinus = dYToLambda(y, bottom, false).value;
  p.gateMet = met;
  p.gateMeasured = measured;
  return p;
}

// ---------------------------------------------------------------------------
// Check battery
// ---------------------------------------------------------------------------

namespace {

Section randomWalk(Section s, std::mt19937_64& rng, int steps, bool upOnly, bool downOnly) {
  for (int i = 0; i < steps; ++i) {
    bool up = upOnly || (!downOnly && (rng() & 1));
    std::vector<std::int64_t> opts = up ? s.legalUps() : s.legalDowns();
    if (opts.empty()) continue;
    std::int64_t pick = opts[rng() % opts.size()];
    s = up ? s.moveUp(pick) : s.moveDown(pick);
  }
  return s;
}

Section randomSection(const VeeringComplex& cx, std::mt19937_64& rng) {
  const std::int64_t m = cx.period();
  std::int64_t level = static_cast<std::int64_t>(rng() % (2 * m + 1)) - m;
  return randomWalk(Section::base(cx, level), rng, 1 + static_cast<int>(rng() % 6), false, false);
}

// True when the two sorted cell lists share no member after shifting the
// second down by `shift`.
bool disjointShifted(const std::vector<std::int64_t>& cells, std::int64_t shift) {
  std::set<std::int64_t> base(cells.begin(), cells.end());
  for (std::int64_t c : cells)
    if (base.count(c - shift)) return false;
  return true;
}

void embeddingRows(CheckReport& out, const std::string& id, const std::string& tag,
                   const Subsurface& y, const Pocket& p) {
  const std::int64_t m = y.complex().period();
  if (p.region.empty()) {
    out.add(skippedRecord(id + tag, "isolated-embedding", y.describe(),
                          "the pocket region is empty; nothing to embed"));
    return;
  }
  auto [lo, hi] = std::minmax_element(p.region.begin(), p.region.end());
  const std::int64_t span = *hi - *lo;
  const std::int64_t horizon = span / m + 1;
  std::int64_t meeting = 0;
  for (std::int64_t i = 1; i <= horizon; ++i)
    if (!disjointShifted(p.region, i * m)) ++meeting;
  std::ostringstream in;
  in << y.describe() << "; region " << p.region.size() << " cells, span " << span
     << ", deck powers checked 1.." << horizon << " (larger powers clear the span)";
  if (meeting == 0)
    out.add(passRecord(id + tag, "isolated-embedding", in.str(), "0 meeting translates",
                       "0 allowed"));
  else
    out.add(failRecord(id + tag, "isolated-embedding", in.str(), std::to_string(meeting),
                       "0 allowed", "a deck translate meets the pocket region"));

  const std::int64_t n = p.overlapIndex > 0 ? p.overlapIndex : overlapIndex(y);
  out.add(comparisonRecord(id + "-count" + tag, "main-inequality",
                           y.describe() + "; overlap index " + std::to_string(n) +
                               ", cells per period " + std::to_string(m),
                           static_cast<std::int64_t>(p.region.size()), n * m));
}

CheckReport checksForSubsurface(const VeeringComplex& cx, const SubsurfaceSpec& spec,
                                std::uint64_t seed) {
  CheckReport out;
  out.seed = seed;
  const std::string tag = "@" + spec.str();

  std::optional<Subsurface> yOpt;
  try {
    yOpt.emplace(cx, spec);
  } catch (const Error& e) {
    out.add(skippedRecord("resolve" + tag, "compatibility", spec.str(),
                          std::string("rejected: ") + e.what()));
    return out;
  }
  const Subsurface& y = *yOpt;
  std::mt19937_64 rng(seed);
  const bool exact = exactAnnularModel(y);
  const std::int64_t m = cx.period();

  if (y.guard() == GuardStatus::Verified)
    out.add(passRecord("guard" + tag, "compatibility", y.describe(),
                       std::to_string(y.guardDistance()),
                       ">= 4 (lamination distance at the annulus)", kDistanceSlack));
  else
    out.add(boundOnlyRecord("guard" + tag, "compatibility", y.describe(),
                            "threshold taken as hypothesis", "no exact route on this fiber"));

  // Sampled sections reused by several rows.
  std::vector<Section> samples;
  for (std::int64_t j : {-m, std::int64_t{0}, m}) samples.push_back(Section::base(cx, j));
  for (int i = 0; i < 6; ++i) samples.push_back(randomSection(cx, rng));

  // Projection diameter of every sampled section.
  if (exact) {
    std::int64_t worst = 0;
    for (const Section& t : samples) {
      std::int64_t d = annularDiameter(y.core(), projTau(y, t).annularClasses);
      worst = std::max(worst, d);
    }
    out.add(comparisonRecord("proj-diam" + tag, "overlap-bound",
                             y.describe() + "; " + std::to_string(samples.size()) +
                                 " sampled sections, annular bound 3",
                             worst, 3, kDistanceSlack));
  } else if (!y.annular() && cx.torusModel() && y.tauBoundary().empty()) {
    std::int64_t worst = 0;
    std::string rule;
    for (const Section& t : samples) {
      DistanceBound b = diamAS(fiberGraphOf(y, t.boundaryEdges()));
      worst = std::max(worst, b.value);
      rule = b.rule;
    }
    out.add(boundOnlyRecord("proj-diam" + tag, "overlap-bound",
                            y.describe() + "; " + std::to_string(samples.size()) +
                                " sampled sections; rule: " + rule,
                            std::to_string(worst), "15"));
    if (worst > kScale)
      out.add(failRecord("proj-diam-limit" + tag, "overlap-bound", y.describe(),
                         std::to_string(worst), "15", "the graph bound exceeded 15"));
  } else {
    out.add(skippedRecord("proj-diam" + tag, "overlap-bound", y.describe(),
                          "no exact projection model for this fiber"));
  }

  // Pocket-based rows need boundary extrema.
  std::optional<Pocket> mp;
  if (!y.tauBoundary().empty()) {
    mp = maximalPocket(y);
  } else {
    out.add(skippedRecord("maximal-pocket" + tag, "interior-identity", y.describe(),
                          "empty boundary: the subsurface is the whole fiber"));
  }

  if (mp && exact) {
    // Sections at or above the top stay near the unstable side; dually below.
    std::int64_t worstAbove = 0, worstBelow = 0;
    for (int i = 0; i < 20; ++i) {
      Section q = randomWalk(mp->top, rng, 1 + static_cast<int>(rng() % 12), true, false);
      worstAbove = std::max(worstAbove, dYToLambda(y, q, true).value);
      Section r = randomWalk(mp->bottom, rng, 1 + static_cast<int>(rng() % 12), false, true);
      worstBelow = std::max(worstBelow, dYToLambda(y, r, false).value);
    }
    out.add(comparisonRecord("closed-above" + tag, "closed-distance",
                             y.describe() + "; 20 random sections above the top",
                             worstAbove, kClosedDistance, kDistanceSlack));
    out.add(comparisonRecord("closed-below" + tag, "closed-distance",
                             y.describe() + "; 20 random sections below the bottom",
                             worstBelow, kClosedDistance, kDistanceSlack));

    // Single flips through sections holding the boundary move slowly.
    std::vector<std::int64_t> path = monotonePath(mp->bottom, mp->top, y.pocketAnchor());
    Section t = mp->bottom;
    std::int64_t worstFlip = 0;
    for (std::int64_t cell : path) {
      Section t2 = t.moveUp(cell);
      worstFlip = std::max(worstFlip, dY(y, t, t2).value);
      t = t2;
    }
    out.add(comparisonRecord("flip-progress" + tag, "slowed-progress",
                             y.describe() + "; " + std::to_string(path.size()) +
                                 " single flips along the pocket",
                             worstFlip, kFlipProgress, kDistanceSlack));

    // Retraction moves a section a bounded distance.
    std::int64_t worstStay = 0;
    for (const Section& s : samples)
      worstStay = std::max(worstStay, dY(y, s, retractToPocket(s, y)).value);
    out.add(comparisonRecord("stays-close" + tag, "stays-close",
                             y.describe() + "; " + std::to_string(samples.size()) +
                                 " sampled sections against their retractions",
                             worstStay, kStaysClose, kDistanceSlack));

    // Deck iterates of the boundary order themselves toward the stable side.
    {
      std::vector<std::int64_t> values;
      std::int64_t worstIter = 0;
      LambdaProjection lam = lambdaProjection(y);
      for (std::int64_t nIt = 1; nIt <= 3; ++nIt) {
        TauEdgeRef shifted = cx.applyDeck(y.tauBoundary()[0], nIt);
        Slope sl = cx.slopeOf(shifted);
        if (det(sl, y.core()) == 0) continue;
        std::int64_t d = annularDistance(y.core(), AnnularClass::ofSlope(sl), lam.minus);
        values.push_back(d);
        worstIter = std::max(worstIter, d);
      }
      std::ostringstream in;
      in << y.describe() << "; iterate distances to the stable side:";
      for (std::int64_t v : values) in << " " << v;
      if (y.guardDistance() >= kIterateOrderGate)
        out.add(comparisonRecord("iterate-order" + tag, "order-lemma", in.str(), worstIter,
                                 kIterateOrderBound, kDistanceSlack));
      else
        out.add(skippedRecord("iterate-order" + tag, "order-lemma", in.str(),
                              "lamination distance " + std::to_string(y.guardDistance()) +
                                  " is below the gate " + std::to_string(kIterateOrderGate) +
                                  "; values recorded only"));
    }
  } else if (mp) {
    for (const char* id : {"closed-above", "closed-below", "flip-progress", "stays-close",
                           "iterate-order"})
      out.add(skippedRecord(std::string(id) + tag,
                            std::string(id) == "flip-progress" ? "slowed-progress"
                                                               : "closed-distance",
                            y.describe(), "no exact distance model for this fiber"));
  }

  if (mp) {
    // Pinching two sections keeps exactly the interval cells over the pocket.
    std::set<std::int64_t> maximalCells(mp->cells.begin(), mp->cells.end());
    std::int64_t mismatches = 0;
    const int pairs = 50;
    for (int i = 0; i < pairs; ++i) {
      Section t1 = randomSection(cx, rng);
      Section t2 = randomSection(cx, rng);
      Pocket pk = pinchedPocket(y, t1, t2);
      std::set<std::int64_t> got(pk.cells.begin(), pk.cells.end());
      std::set<std::int64_t> want;
      for (std::int64_t c : interval(t1, t2).cells)
        if (maximalCells.count(c)) want.insert(c);
      if (got != want) ++mismatches;
    }
    if (mismatches == 0)
      out.add(passRecord("interior-identity" + tag, "interior-identity",
                         y.describe() + "; " + std::to_string(pairs) + " random section pairs",
                         "0 mismatched pairs", "0 allowed"));
    else
      out.add(failRecord("interior-identity" + tag, "interior-identity",
                         y.describe() + "; " + std::to_string(pairs) + " random section pairs",
                         std::to_string(mismatches), "0 allowed",
                         "the pinched cells differ from the clamped interval"));

    embeddingRows(out, "translate-embedding", tag, y, *mp);
  }

  // Isolated pocket: gate, seed band, certificates, counting.
  if (exact) {
    try {
      Pocket iso = isolatedPocket(y, false);
      out.add(passRecord("spectral-gate" + tag, "main-inequality", y.describe(),
                         std::to_string(iso.gateMeasured),
                         ">= " + std::to_string(kSpectralGate), kDistanceSlack));
      out.add(passRecord("seed-band" + tag, "right-place",
                         y.describe() + "; seed distance to the unstable side",
                         std::to_string(iso.startDistancePlus),
                         "within [" + std::to_string(kBandLo) + ", " + std::to_string(kBandHi) +
                             "]",
                         kDistanceSlack));
      Section translated = iso.start->applyDeck(iso.overlapIndex);
      out.add(comparisonRecord("right-place" + tag, "right-place",
                               y.describe() + "; overlap index " +
                                   std::to_string(iso.overlapIndex),
                               dYToLambda(y, translated, false).value, kRightPlace,
                               kDistanceSlack));
      out.add(comparisonRecord("cert-top" + tag, "certificates", y.describe(),
                               iso.certTopPlus, kCertTop, kDistanceSlack));
      out.add(comparisonRecord("cert-bottom" + tag, "certificates", y.describe(),
                               iso.certBottomMinus, kCertBottom, kDistanceSlack));

      std::int64_t chiP = chiPrime(y);
      std::int64_t dTopBottom = dY(y, iso.bottom, iso.top).value;
      std::int64_t need = (chiP * dTopBottom + kFlipProgress - 1) / kFlipProgress;
      out.add(comparisonRecord("pocket-size" + tag, "main-inequality",
                               y.describe() + "; pocket height " + std::to_string(dTopBottom) +
                                   ", chi' " + std::to_string(chiP),
                               need, static_cast<std::int64_t>(iso.cells.size()),
                               kDistanceSlack));
      out.add(comparisonRecord("main-count" + tag, "main-inequality",
                               y.describe() + "; lamination distance " +
                                   std::to_string(iso.gateMeasured) + ", chi' " +
                                   std::to_string(chiP),
                               chiP * (iso.gateMeasured - kCountOffset),
                               kFlipProgress * static_cast<std::int64_t>(iso.cells.size()),
                               kDistanceSlack));
      embeddingRows(out, "translate-embedding-isolated", tag, y, iso);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::HypothesisUnmet || e.code() == ErrorCode::NoT0InBand)
        out.add(skippedRecord("isolated-pocket" + tag, "main-inequality", y.describe(),
                              e.what()));
      else
        throw;
    }
  } else {
    out.add(skippedRecord("isolated-pocket" + tag, "main-inequality", y.describe(),
                          "the construction needs the exact annular model"));
  }
  return out;
}

} // namespace

CheckReport theoremChecks(const VeeringComplex& cx, const std::vector<SubsurfaceSpec>& specs,
                          std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  CheckReport rep;
  rep.seed = seed;
  rep.toolVersion = kToolVersion;

  // The counting inequality at every pivot annulus of one period, straight
  // from the annular distance: chi' * (distance - 240) <= 30 * cells.
  if (cx.torusModel()) {
    const std::int64_t m = cx.period();
    const EigenSlopes& eig = cx.eigen();
    AnnularClass lm = AnnularClass::ofEigen(eig.minus);
    AnnularClass lp = AnnularClass::ofEigen(eig.plus);
    std::set<Slope> slate;
    for (std::int64_t e = -3; e < m; ++e) slate.insert(cx.slopeOf(cx.refOfEvent(e)));
    for (const Slope& s : slate) {
      std::int64_t d = annularDistance(s, lm, lp);
      rep.add(comparisonRecord("main-count@pivot " + s.str(), "main-inequality",
                               "pivot annulus at " + s.str() + "; lamination distance " +
                                   std::to_string(d) + ", cells per period " +
                                   std::to_string(m),
                               d - kCountOffset, kFlipProgress * m, kDistanceSlack));
    }
  }

  std::vector<std::future<CheckReport>> futures;
  futures.reserve(specs.size());
  for (const SubsurfaceSpec& spec : specs) {
    std::uint64_t ySeed = seed ^ fnv64(spec.str());
    futures.push_back(std::async(std::launch::async, [&cx, spec, ySeed] {
      return checksForSubsurface(cx, spec, ySeed);
    }));
  }
  for (auto& f : futures) rep.merge(f.get());

  rep.wallMillis = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  rep.sortById();
  return rep;
}

} // namespace veerlat
