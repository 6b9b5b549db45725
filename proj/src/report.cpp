#include "veerlat/report.hpp"

#include <algorithm>
#include <sstream>

namespace veerlat {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::BoundOnly: return "bound-only";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

void CheckReport::merge(CheckReport other) {
  for (auto& r : other.records) records.push_back(std::move(r));
  wallMillis += other.wallMillis;
}

void CheckReport::sortById() {
  std::stable_sort(records.begin(), records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
}

bool CheckReport::allPassed() const {
  for (const auto& r : records)
    if (r.status == CheckStatus::Fail) return false;
  return true;
}

std::int64_t CheckReport::countOf(CheckStatus s) const {
  std::int64_t n = 0;
  for (const auto& r : records)
    if (r.status == s) ++n;
  return n;
}

namespace {
// One logical value per line, "key: value"; no escaping is needed because
// every producer keeps values single-line (asserted here).
void emit(std::ostringstream& out, const char* key, const std::string& value) {
  std::string v = value;
  for (char& c : v)
    if (c == '\n') c = ' ';
  out << key << ": " << v << "\n";
}
} // namespace

std::string CheckReport::renderText(bool includeWallClock) const {
  std::ostringstream out;
  out << "veerlat-report v1\n";
  emit(out, "seed", std::to_string(seed));
  emit(out, "tool-version", toolVersion);
  if (includeWallClock) emit(out, "wall-ms", std::to_string(wallMillis));
  emit(out, "records", std::to_string(records.size()));
  emit(out, "failures", std::to_string(countOf(CheckStatus::Fail)));
  for (const auto& r : records) {
    out << "\n";
    emit(out, "check", r.id);
    emit(out, "anchor", r.anchor);
    if (!r.inputs.empty()) emit(out, "inputs", r.inputs);
    if (!r.lhs.empty()) emit(out, "lhs", r.lhs);
    if (!r.rhs.empty()) emit(out, "rhs", r.rhs);
    if (!r.slack.empty()) emit(out, "slack", r.slack);
    emit(out, "status", status_name(r.status));
    if (!r.reason.empty()) emit(out, "reason", r.reason);
  }
  return out.str();
}

CheckRecord passRecord(std::string id, std::string anchor, std::string inputs, std::string lhs,
                       std::string rhs, std::string slack) {
  return {std::move(id), std::move(anchor), std::move(inputs), std::move(lhs),
          std::move(rhs), std::move(slack), CheckStatus::Pass, ""};
}

CheckRecord failRecord(std::string id, std::string anchor, std::string inputs, std::string lhs,
                       std::string rhs, std::string reason, std::string slack) {
  return {std::move(id), std::move(anchor), std::move(inputs), std::move(lhs),
          std::move(rhs), std::move(slack), CheckStatus::Fail, std::move(reason)};
}

CheckRecord comparisonRecord(std::string id, std::string anchor, std::string inputs,
                             std::int64_t lhs, std::int64_t rhs, std::string slack) {
  CheckRecord r;
  r.id = std::move(id);
  r.anchor = std::move(anchor);
  r.inputs = std::move(inputs);
  r.lhs = std::to_string(lhs);
  r.rhs = std::to_string(rhs);
  r.slack = std::move(slack);
  if (lhs <= rhs) {
    r.status = CheckStatus::Pass;
  } else {
    r.status = CheckStatus::Fail;
    r.reason = "left side exceeds right side by " + std::to_string(lhs - rhs);
  }
  return r;
}

CheckRecord skippedRecord(std::string id, std::string anchor, std::string inputs,
                          std::string reason) {
  return {std::move(id), std::move(anchor), std::move(inputs), "", "", "",
          CheckStatus::Skipped, std::move(reason)};
}

CheckRecord boundOnlyRecord(std::string id, std::string anchor, std::string inputs,
                            std::string lhs, std::string rhs, std::string slack) {
  return {std::move(id), std::move(anchor), std::move(inputs), std::move(lhs),
          std::move(rhs), std::move(slack), CheckStatus::BoundOnly, ""};
}

} // namespace veerlat
