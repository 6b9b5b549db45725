#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "veerlat/complex.hpp"
#include "veerlat/monodromy.hpp"
#include "veerlat/report.hpp"
#include "veerlat/slope.hpp"

namespace veerlat {

// ---------------------------------------------------------------------------
// On-disk artifacts.  The bundle and the verification report both serialize
// to one self-describing JSON dialect, documented in docs/formats.md.  A
// bundle carries the monodromy presentation plus cached per-orbit tables of
// the built complex, sealed by a content hash over the canonical
// serialization.  Loading verifies the seal, and rebuild() cross-checks every
// cached row against a freshly built complex, so a reloaded bundle is
// guaranteed to describe exactly the complex it was written from.
// ---------------------------------------------------------------------------

struct BundleFile {
  // Cached data of one edge orbit: the kill event of its level-zero
  // instance, its veering color, and (torus models) the created slope.
  struct OrbitRow {
    std::int64_t kill = 0;
    Color color = Color::Red;
    std::optional<Slope> slope;

    bool operator==(const OrbitRow&) const = default;
  };

  int version = 1;
  MonodromySpec spec;
  std::int64_t period = 0;
  std::int64_t layerEdges = 0;
  std::int64_t fiberChi = 0;
  std::vector<OrbitRow> orbits;
  // 64-bit FNV-1a of the canonical serialization minus this field, in hex.
  std::string hash;

  // Assembles the cache tables from a complex built for `spec`.
  static BundleFile ofComplex(const MonodromySpec& spec, const VeeringComplex& cx);

  // Canonical serialization: sorted keys, two-space indent, trailing
  // newline, hash field filled in.
  std::string serialize() const;

  // Parses serialized text and verifies the seal.  Malformed content or a
  // wrong hash is HashMismatch: the text is not a sealed bundle.
  static BundleFile parse(const std::string& text);

  void save(const std::string& path) const;
  static BundleFile load(const std::string& path);

  // Rebuilds the complex from the presentation and compares every cached
  // table entry with the rebuilt values; any disagreement is HashMismatch
  // (the file does not describe the complex it claims to).
  VeeringComplex rebuild() const;
};

// The report in the same dialect.  Wall-clock emission is optional so that
// fixed-seed reports can be compared byte for byte.
std::string reportJson(const CheckReport& rep, bool includeWallClock = true);

// Parses a monodromy presentation from its JSON form (the `monodromy` object
// of the bundle schema); a bare {initial, flips, relabel} object is accepted
// as a script.  Malformed input is BadScript.
MonodromySpec parseMonodromyJson(const std::string& text);

} // namespace veerlat
