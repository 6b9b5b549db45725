#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "veerlat/complex.hpp"

namespace veerlat {

// A section of the layered complex: a downward-closed set of tetrahedron
// events (an order ideal under the face relation), stored as a floor level
// plus the sporadic members at or above it. The floor is canonical: it is
// the smallest event outside the ideal, so equal ideals compare equal
// structurally. Sections are immutable values; every operation returns a
// fresh one. The referenced complex must outlive the section.
class Section {
 public:
  static Section base(const VeeringComplex& cx, std::int64_t level);

  const VeeringComplex& complex() const { return *cx_; }
  bool contains(std::int64_t tetra) const;
  // Every event below floorLevel() is inside the ideal.
  std::int64_t floorLevel() const { return floor_; }
  // Every event at or above ceilLevel() is outside the ideal.
  std::int64_t ceilLevel() const;
  const std::set<std::int64_t>& sporadic() const { return extra_; }
  // True when the stored set really is downward closed (diagnostic).
  bool isIdeal() const;

  bool operator==(const Section& o) const;
  bool operator!=(const Section& o) const { return !(*this == o); }

  // Tetrahedron moves. moveUp needs both bottom faces of the tetrahedron on
  // the section; moveDown needs both top faces free.
  Section moveUp(std::int64_t tetra) const;
  Section moveDown(std::int64_t tetra) const;
  std::vector<std::int64_t> legalUps() const;
  std::vector<std::int64_t> legalDowns() const;

  // The deck translation: power 1 pushes the section one period down.
  Section applyDeck(std::int64_t power) const;
  bool isPhiSection() const;

  // The boundary surface: edge e lies on the section exactly when its
  // creating event is inside the ideal and its killing event is not.
  std::vector<std::int64_t> boundaryEdges() const;
  const IdealTriangulation& boundary() const;
  bool boundaryContains(TauEdgeRef e) const;

  friend Section join(const Section& a, const Section& b);
  friend Section meet(const Section& a, const Section& b);
  friend bool leq(const Section& a, const Section& b);

 private:
  Section(const VeeringComplex& cx, std::int64_t floor, std::set<std::int64_t> extra);
  void normalize();

  const VeeringComplex* cx_;
  std::int64_t floor_;
  std::set<std::int64_t> extra_;
  mutable std::shared_ptr<const IdealTriangulation> boundary_;
};

Section join(const Section& a, const Section& b);
Section meet(const Section& a, const Section& b);
bool leq(const Section& a, const Section& b);

// The block of tetrahedra between two sections; for incomparable inputs it
// is taken between their meet and join, which spans the same cells.
struct SectionInterval {
  Section bottom;
  Section top;
  std::vector<std::int64_t> cells;
  std::int64_t count() const { return static_cast<std::int64_t>(cells.size()); }
};
SectionInterval interval(const Section& a, const Section& b);

// A section whose boundary carries every requested edge. The edges must be
// pairwise disjoint (temporally incomparable); crossing pairs are rejected.
Section extendToSection(const VeeringComplex& cx, const std::vector<TauEdgeRef>& edges);

// Extremes of the family of sections through the given edges, reached by
// greedy moves that never flip a constrained edge and cross-checked from
// two different starting sections.
struct SectionExtrema {
  Section bottom;
  Section top;
};
SectionExtrema extremaOf(const VeeringComplex& cx, const std::vector<TauEdgeRef>& edges);
Section topOf(const VeeringComplex& cx, const std::vector<TauEdgeRef>& edges);
Section bottomOf(const VeeringComplex& cx, const std::vector<TauEdgeRef>& edges);

// The ascending sequence of tetrahedra whose upward moves carry `from` to
// `to` while every intermediate section still holds the given edges.
std::vector<std::int64_t> monotonePath(const Section& from, const Section& to,
                                       const std::vector<TauEdgeRef>& edges);

} // namespace veerlat
