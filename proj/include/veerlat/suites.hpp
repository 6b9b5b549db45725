#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "veerlat/complex.hpp"
#include "veerlat/report.hpp"
#include "veerlat/section.hpp"
#include "veerlat/subsurface.hpp"

namespace veerlat {

// ---------------------------------------------------------------------------
// Seeded randomized property suites.  Each suite replays a family of laws on
// seeded samples and returns a report; identical (complex, seed) inputs give
// identical reports.  The suites are what the `verify` command runs.
// ---------------------------------------------------------------------------

// Random walk from `s`: each step picks a legal move (upward when upOnly,
// downward when downOnly, a coin toss otherwise) uniformly at random.
Section randomWalk(Section s, std::mt19937_64& rng, int steps, bool upOnly, bool downOnly);

// A random section: a base section within one period of level zero, stirred
// by a short mixed walk.
Section randomSection(const VeeringComplex& cx, std::mt19937_64& rng);

// The default subsurface slate of a complex: the whole fiber, plus an
// annulus at every distinct pivot slope of one period (torus models) or a
// single-arc boundary (script models).
std::vector<SubsurfaceSpec> defaultSpecs(const VeeringComplex& cx);

// Lattice laws of sections: commutativity, associativity, absorption,
// idempotence, order consistency, antisymmetry, and invariance of the
// interval under meet/join normalization.
CheckReport latticeSuite(const VeeringComplex& cx, std::uint64_t seed);

// Edge-order laws: antisymmetry on all instance pairs of a four-period
// window, transitivity on its pairwise-crossing triples, and agreement of
// ideal membership with the crossing characterization on sampled
// (event, section) pairs.
CheckReport orderSuite(const VeeringComplex& cx, std::uint64_t seed);

// Projection diameters: annular projections of sampled sections stay within
// 3; the whole-fiber graph route stays within the universal bound 15.
CheckReport projectionSuite(const VeeringComplex& cx, std::uint64_t seed);

// Pocket mechanics per compatible subsurface: construction, retraction
// idempotence, retraction displacement, and the interior identity.
CheckReport pocketSuite(const VeeringComplex& cx, std::uint64_t seed);

// The full theorem battery over the default subsurface slate.
CheckReport theoremSuite(const VeeringComplex& cx, std::uint64_t seed);

// Dispatch by selector: lattice | order | projections | pockets | theorems |
// all.  BadScript on an unknown selector.
CheckReport runSuites(const VeeringComplex& cx, const std::string& selector, std::uint64_t seed);

} // namespace veerlat
