#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "veerlat/complex.hpp"
#include "veerlat/section.hpp"
#include "veerlat/slope.hpp"

namespace veerlat {

// How a compatible subsurface of the fiber is requested: an annulus about a
// core slope (torus models, where slopes are exact), or an explicit set of
// boundary edge instances with pairwise disjoint interiors.
struct SubsurfaceSpec {
  enum class Kind { Annulus, ExplicitBoundary };
  Kind kind = Kind::Annulus;
  Slope core;                        // Annulus
  std::vector<TauEdgeRef> boundary;  // ExplicitBoundary

  static SubsurfaceSpec annulus(Slope coreSlope);
  static SubsurfaceSpec explicitBoundary(std::vector<TauEdgeRef> edges);
  std::string str() const;
};

// Whether the compatibility threshold was verified exactly (annuli on torus
// models, where the stable/unstable distance at the annulus is computable) or
// taken as an assumption (everything else; the threshold has no exact route
// there and checks that depend on it are marked accordingly).
enum class GuardStatus { Verified, Assumed };

// A subsurface resolved against a complex: its boundary edges, Euler
// characteristic, compatibility guard, and the membership machinery for the
// closure of its interior (which pocket regions live over).
//
// Membership model: the closure R of the subsurface interior contains the
// boundary edges, every non-crossing edge whose cut-component is the interior
// side, and every crossing edge all of whose crossed boundary edges have the
// interior on both local sides.  A tetrahedron lies over R exactly when all
// six edges of its quadrilateral do.  One boundary arc on a connected
// once-punctured-torus fiber cuts it into a single annulus, so R is the whole
// fiber there and membership is constant true.
class Subsurface {
 public:
  Subsurface(const VeeringComplex& cx, SubsurfaceSpec spec);

  const VeeringComplex& complex() const { return *cx_; }
  const SubsurfaceSpec& spec() const { return spec_; }
  bool annular() const { return annular_; }
  // Core slope of an annulus (torus models).
  const Slope& core() const;
  // The resolved boundary edge instances, sorted.
  const std::vector<TauEdgeRef>& tauBoundary() const { return boundary_; }
  std::int64_t chi() const { return chi_; }
  std::int64_t chiPrimeOf() const { return chiPrime_; }
  GuardStatus guard() const { return guard_; }
  // Exact stable/unstable distance at the subsurface when the guard is
  // Verified (annuli on torus models).
  std::int64_t guardDistance() const;
  // Short description for report rows.
  std::string describe() const;

  // True when the instance created at `event` lies in the closure R.
  bool edgeOverClosure(std::int64_t edgeEvent) const;
  // True when the tetrahedron of `event` lies over R (all six quad edges do).
  bool cellOverInterior(std::int64_t event) const;
  // The fiber component of an edge instance under an uncut face walk; two
  // instances are connected iff chains of shared triangles join them.  Used
  // by the overlap index.
  bool sameFiberComponent(std::int64_t eventA, std::int64_t eventB) const;

  // The edge set anchoring the pocket lattice: the boundary, plus one
  // reference layer in every fiber component the boundary misses.  The
  // extra pins keep the section family bounded without adding or removing
  // any cell over the subsurface, which lies in the boundary's components.
  const std::vector<TauEdgeRef>& pocketAnchor() const;
  // Cached lattice extrema of the sections through the pocket anchor.
  const SectionExtrema& extrema() const;

 private:
  struct CutComponents;
  void resolveAnnulus();
  void validateExplicit();
  void computeChi();
  const CutComponents& cut() const;              // cut along the boundary
  const CutComponents& uncut() const;            // no cut: fiber components
  CutComponents buildComponents(bool cutAlongBoundary) const;

  const VeeringComplex* cx_;
  SubsurfaceSpec spec_;
  std::vector<TauEdgeRef> boundary_;
  bool annular_ = false;
  bool wholeFiberClosure_ = false;  // single boundary arc on a connected torus fiber
  std::int64_t chi_ = 0;
  std::int64_t chiPrime_ = 1;
  GuardStatus guard_ = GuardStatus::Assumed;
  std::int64_t guardDistance_ = -1;

  mutable std::optional<std::vector<TauEdgeRef>> anchor_;
  mutable std::optional<SectionExtrema> extrema_;
  mutable std::shared_ptr<CutComponents> cut_;
  mutable std::shared_ptr<CutComponents> uncut_;
};

// max(|chi|, 1) of the resolved subsurface (the complexity weight).
std::int64_t chiPrime(const Subsurface& y);

} // namespace veerlat
