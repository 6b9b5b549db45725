#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "veerlat/annular.hpp"
#include "veerlat/bounds.hpp"
#include "veerlat/report.hpp"
#include "veerlat/section.hpp"
#include "veerlat/subsurface.hpp"

namespace veerlat {

// The projection of a surface (a section boundary, or a plain edge set) into
// a subsurface.  Annular subsurfaces on torus fibers receive exact annular
// classes; the whole once-punctured-torus fiber receives the arc classes of
// the embedded-graph model.  Other subsurfaces have no exact projection
// model and are served by diameter bounds instead.
struct Projection {
  bool annular = false;
  std::vector<AnnularClass> annularClasses;
  std::vector<ArcClass> arcClasses;
  // Source graph for the arc model, kept so diameter bounds can be taken on
  // unions of projections.
  std::optional<ProperGraph> graph;

  bool empty() const { return annularClasses.empty() && arcClasses.empty(); }
};

Projection projTau(const Subsurface& y, const std::vector<std::int64_t>& edgeEvents);
Projection projTau(const Subsurface& y, const Section& s);

// The stable/unstable laminations seen from an annular subsurface.
struct LambdaProjection {
  AnnularClass minus;
  AnnularClass plus;
};
LambdaProjection lambdaProjection(const Subsurface& y);

// Distance/diameter statements in the subsurface: exact for annuli on torus
// fibers, upper bounds through the graph model for the whole fiber.
DistanceBound dY(const Subsurface& y, const Projection& a, const Projection& b);
DistanceBound dY(const Subsurface& y, const Section& a, const Section& b);
DistanceBound dYToLambda(const Subsurface& y, const Section& s, bool plusSide);
DistanceBound dYLambdaMinusPlus(const Subsurface& y);

// A pocket of the section lattice at a subsurface: the block of tetrahedra
// between a bottom and a top section through the boundary.  `cells` is the
// whole interval; `region` keeps the cells lying over the closure of the
// subsurface interior.
struct Pocket {
  enum class Kind { Maximal, Pinched, Isolated };
  Kind kind = Kind::Maximal;
  Section bottom;
  Section top;
  std::vector<std::int64_t> cells;
  std::vector<std::int64_t> region;
  // Isolated pockets only; 0 elsewhere.
  std::int64_t overlapIndex = 0;
  std::optional<Section> start;
  std::int64_t startDistancePlus = -1;
  std::int64_t certTopPlus = -1;
  std::int64_t certBottomMinus = -1;
  bool gateMet = false;
  std::int64_t gateMeasured = -1;
};

// The maximal pocket: everything between the extreme sections through the
// boundary.
Pocket maximalPocket(const Subsurface& y);

// Clamp a section into the maximal pocket.  The two standard formulas
// bottom v (top ^ T) and top ^ (bottom v T) are both evaluated and must
// agree.
Section retractToPocket(const Section& t, const Subsurface& y);

// The pocket pinched between the retractions of two sections.
Pocket pinchedPocket(const Subsurface& y, const Section& t1, const Section& t2);

// The smallest positive deck power whose translate of the subsurface meets
// it again: the first power putting a boundary instance back into the fiber
// component of one of the original boundary instances.  A subsurface with
// empty boundary overlaps itself immediately.
std::int64_t overlapIndex(const Subsurface& y);

// The isolated pocket construction: requires the spectral gate (stable to
// unstable distance at the subsurface at least 150) unless overridden,
// seeds at a base section in the middle band, and spans from the
// overlap-index translate of the seed up to the seed.
Pocket isolatedPocket(const Subsurface& y, bool overrideGate = false);

// Run the full check battery: the main counting inequality at every pivot
// annulus of the sweep, and the per-subsurface rows (projection diameters,
// closed-section distances, single-flip progress, retraction stability,
// interior identity, translate embedding, the isolated-pocket certificates,
// and the iterate-ordering lemma).  Subsurfaces are processed concurrently;
// each one draws from its own deterministic seed derived from `seed`.
CheckReport theoremChecks(const VeeringComplex& cx,
                          const std::vector<SubsurfaceSpec>& specs, std::uint64_t seed);

} // namespace veerlat
