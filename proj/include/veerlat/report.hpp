#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace veerlat {

// Version string stamped into reports and bundles.
inline constexpr const char* kToolVersion = "veerlat 0.1.0";

// Verdict of one instance check.  BoundOnly marks a row whose value is a
// certified bound rather than an exact quantity; Skipped rows always carry a
// reason.  Only Fail rows make a report unsuccessful.
enum class CheckStatus { Pass, Fail, BoundOnly, Skipped };

const char* status_name(CheckStatus s);

// One instance-check row.  `id` is the stable sort key ("suite.check[.case]");
// `anchor` names the verified statement by role (neutral, self-describing);
// `slack` carries convention annotations such as the +-1 of the annular lift
// convention.
struct CheckRecord {
  std::string id;
  std::string anchor;
  std::string inputs;
  std::string lhs;
  std::string rhs;
  std::string slack;
  CheckStatus status = CheckStatus::Pass;
  std::string reason;
};

// A deterministic report: records sorted by id, plus run metadata.  The text
// rendering is the committed `report v1` format (see docs/formats.md); all
// fields are stable for a fixed (input, seed) pair except wallMillis, which
// renderText can omit so byte-identical comparisons are possible.
struct CheckReport {
  std::uint64_t seed = 0;
  std::string toolVersion = kToolVersion;
  std::int64_t wallMillis = 0;
  std::vector<CheckRecord> records;

  void add(CheckRecord r) { records.push_back(std::move(r)); }
  void merge(CheckReport other);
  // Stable sort by record id; ties keep insertion order (distinct cases of
  // one check append .N suffixes instead of relying on ties).
  void sortById();
  bool allPassed() const;
  std::int64_t countOf(CheckStatus s) const;
  std::string renderText(bool includeWallClock) const;
};

// Convenience builders.
CheckRecord passRecord(std::string id, std::string anchor, std::string inputs, std::string lhs,
                       std::string rhs, std::string slack = "");
CheckRecord failRecord(std::string id, std::string anchor, std::string inputs, std::string lhs,
                       std::string rhs, std::string reason, std::string slack = "");
CheckRecord comparisonRecord(std::string id, std::string anchor, std::string inputs,
                             std::int64_t lhs, std::int64_t rhs, std::string slack = "");
CheckRecord skippedRecord(std::string id, std::string anchor, std::string inputs,
                          std::string reason);
CheckRecord boundOnlyRecord(std::string id, std::string anchor, std::string inputs,
                            std::string lhs, std::string rhs, std::string slack = "");

} // namespace veerlat
