#include "veerlat/bundle.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "veerlat/errors.hpp"

namespace veerlat {

namespace {

using nlohmann::json;

constexpr const char* kBundleFormat = "veerlat-bundle";
constexpr const char* kReportFormat = "veerlat-report";

std::uint64_t fnv64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

[[noreturn]] void badBundle(const std::string& why) {
  fail(ErrorCode::HashMismatch, "not a sealed bundle: " + why);
}

Int intFromJson(const json& j, const char* what) {
  if (!j.is_string()) fail(ErrorCode::BadScript, std::string(what) + " must be a decimal string");
  try {
    return Int(j.get<std::string>());
  } catch (const std::exception&) {
    fail(ErrorCode::BadScript, std::string(what) + " is not a valid integer: " + j.dump());
  }
}

json monodromyToJson(const MonodromySpec& spec) {
  json j;
  switch (spec.kind) {
    case MonodromySpec::Kind::Word:
      j["kind"] = "word";
      j["word"] = spec.word;
      break;
    case MonodromySpec::Kind::Matrix:
      j["kind"] = "matrix";
      j["matrix"] = {spec.matrix.a.str(), spec.matrix.b.str(), spec.matrix.c.str(),
                     spec.matrix.d.str()};
      break;
    case MonodromySpec::Kind::Script: {
      j["kind"] = "script";
      json initial = json::array();
      for (const auto& tri : spec.script.initial)
        initial.push_back({tri[0], tri[1], tri[2]});
      j["initial"] = std::move(initial);
      j["flips"] = spec.script.flips;
      json relabel = json::array();
      for (const auto& [finalId, initialId] : spec.script.relabel)
        relabel.push_back({finalId, initialId});
      j["relabel"] = std::move(relabel);
      break;
    }
  }
  return j;
}

FlipScript scriptFromJson(const json& j) {
  FlipScript s;
  if (!j.contains("initial") || !j["initial"].is_array())
    fail(ErrorCode::BadScript, "script is missing the initial triangle list");
  for (const json& tri : j["initial"]) {
    if (!tri.is_array() || tri.size() != 3)
      fail(ErrorCode::BadScript, "each initial triangle must list exactly three edge ids");
    s.initial.push_back({tri[0].get<EdgeId>(), tri[1].get<EdgeId>(), tri[2].get<EdgeId>()});
  }
  if (!j.contains("flips") || !j["flips"].is_array())
    fail(ErrorCode::BadScript, "script is missing the flip list");
  for (const json& f : j["flips"]) s.flips.push_back(f.get<EdgeId>());
  if (!j.contains("relabel") || !j["relabel"].is_array())
    fail(ErrorCode::BadScript, "script is missing the relabel list");
  for (const json& pair : j["relabel"]) {
    if (!pair.is_array() || pair.size() != 2)
      fail(ErrorCode::BadScript, "each relabel entry must be a [final, initial] pair");
    s.relabel[pair[0].get<EdgeId>()] = pair[1].get<EdgeId>();
  }
  return s;
}

MonodromySpec monodromyFromJson(const json& j) {
  if (!j.is_object()) fail(ErrorCode::BadScript, "monodromy must be an object");
  // A bare script object is accepted without the kind tag.
  std::string kind = j.contains("kind") ? j["kind"].get<std::string>() : "script";
  if (kind == "word") {
    if (!j.contains("word") || !j["word"].is_string())
      fail(ErrorCode::BadScript, "word monodromy must carry a word string");
    return MonodromySpec::ofWord(j["word"].get<std::string>());
  }
  if (kind == "matrix") {
    if (!j.contains("matrix") || !j["matrix"].is_array() || j["matrix"].size() != 4)
      fail(ErrorCode::BadScript, "matrix monodromy must carry four entries");
    const json& m = j["matrix"];
    return MonodromySpec::ofMatrix({intFromJson(m[0], "matrix entry"),
                                    intFromJson(m[1], "matrix entry"),
                                    intFromJson(m[2], "matrix entry"),
                                    intFromJson(m[3], "matrix entry")});
  }
  if (kind == "script") return MonodromySpec::ofScript(scriptFromJson(j));
  fail(ErrorCode::BadScript, "unknown monodromy kind: " + kind);
}

json bundleBody(const BundleFile& b) {
  json j;
  j["format"] = kBundleFormat;
  j["version"] = b.version;
  j["monodromy"] = monodromyToJson(b.spec);
  json cx;
  cx["period"] = b.period;
  cx["layer_edges"] = b.layerEdges;
  cx["fiber_chi"] = b.fiberChi;
  json orbits = json::array();
  for (const auto& row : b.orbits) {
    json r;
    r["kill"] = row.kill;
    r["color"] = row.color == Color::Red ? "red" : "blue";
    if (row.slope) r["slope"] = row.slope->str();
    orbits.push_back(std::move(r));
  }
  cx["orbits"] = std::move(orbits);
  j["complex"] = std::move(cx);
  return j;
}

std::string hashOf(const json& body) { return hex64(fnv64(body.dump())); }

Slope slopeFromString(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == s.size())
    badBundle("slope must be written p/q: " + s);
  try {
    return Slope(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::exception&) {
    badBundle("slope must be written p/q: " + s);
  }
}

} // namespace

MonodromySpec parseMonodromyJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::BadScript, std::string("monodromy file is not valid JSON: ") + e.what());
  }
  return monodromyFromJson(j);
}

BundleFile BundleFile::ofComplex(const MonodromySpec& spec, const VeeringComplex& cx) {
  BundleFile b;
  b.spec = spec;
  b.period = cx.period();
  b.layerEdges = cx.layerEdgeCount();
  b.fiberChi = cx.fiberChi();
  cx.validateVeering();
  for (std::int64_t o = 0; o < cx.period(); ++o) {
    OrbitRow row;
    row.kill = cx.killOfEvent(o);
    row.color = cx.colorOf(o);
    if (cx.torusModel()) row.slope = cx.slopeOf({o, 0});
    b.orbits.push_back(std::move(row));
  }
  json body = bundleBody(b);
  b.hash = hashOf(body);
  return b;
}

std::string BundleFile::serialize() const {
  json body = bundleBody(*this);
  body["hash"] = hash.empty() ? hashOf(body) : hash;
  return body.dump(2) + "\n";
}

BundleFile BundleFile::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    badBundle(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("format", "") != std::string(kBundleFormat))
      badBundle("missing or wrong format tag");
    if (j.value("version", 0) != 1) badBundle("unsupported version");
    if (!j.contains("hash") || !j["hash"].is_string()) badBundle("missing hash");

    BundleFile b;
    b.version = j["version"].get<int>();
    b.hash = j["hash"].get<std::string>();
    b.spec = monodromyFromJson(j.at("monodromy"));
    const json& cx = j.at("complex");
    b.period = cx.at("period").get<std::int64_t>();
    b.layerEdges = cx.at("layer_edges").get<std::int64_t>();
    b.fiberChi = cx.at("fiber_chi").get<std::int64_t>();
    for (const json& r : cx.at("orbits")) {
      OrbitRow row;
      row.kill = r.at("kill").get<std::int64_t>();
      std::string color = r.at("color").get<std::string>();
      if (color != "red" && color != "blue") badBundle("unknown color: " + color);
      row.color = color == "red" ? Color::Red : Color::Blue;
      if (r.contains("slope")) row.slope = slopeFromString(r["slope"].get<std::string>());
      b.orbits.push_back(std::move(row));
    }

    json hashless = j;
    hashless.erase("hash");
    std::string expected = hashOf(hashless);
    if (expected != b.hash)
      fail(ErrorCode::HashMismatch, "bundle content hash mismatch: stored " + b.hash +
                                        ", computed " + expected);
    return b;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    badBundle(std::string("malformed field: ") + e.what());
  }
}

void BundleFile::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << serialize();
  if (!f) throw std::runtime_error("write failed: " + path);
}

BundleFile BundleFile::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open bundle: " + path);
  std::ostringstream text;
  text << f.rdbuf();
  return parse(text.str());
}

VeeringComplex BundleFile::rebuild() const {
  VeeringComplex cx = VeeringComplex::fromMonodromy(spec);
  auto mismatch = [](const std::string& what) {
    fail(ErrorCode::HashMismatch,
         "cached tables do not match the rebuilt complex: " + what);
  };
  if (cx.period() != period) mismatch("period");
  if (cx.layerEdgeCount() != layerEdges) mismatch("layer edge count");
  if (cx.fiberChi() != fiberChi) mismatch("fiber chi");
  if (static_cast<std::int64_t>(orbits.size()) != period) mismatch("orbit row count");
  cx.validateVeering();
  for (std::int64_t o = 0; o < period; ++o) {
    const OrbitRow& row = orbits[static_cast<std::size_t>(o)];
    if (cx.killOfEvent(o) != row.kill)
      mismatch("kill of orbit " + std::to_string(o));
    if (cx.colorOf(o) != row.color)
      mismatch("color of orbit " + std::to_string(o));
    if (cx.torusModel() != row.slope.has_value())
      mismatch("slope presence of orbit " + std::to_string(o));
    if (row.slope && cx.slopeOf({o, 0}) != *row.slope)
      mismatch("slope of orbit " + std::to_string(o));
  }
  return cx;
}

std::string reportJson(const CheckReport& rep, bool includeWallClock) {
  json j;
  j["format"] = kReportFormat;
  j["version"] = 1;
  j["seed"] = rep.seed;
  j["tool"] = rep.toolVersion;
  if (includeWallClock) j["wall_ms"] = rep.wallMillis;
  json counts;
  counts["pass"] = rep.countOf(CheckStatus::Pass);
  counts["fail"] = rep.countOf(CheckStatus::Fail);
  counts["bound_only"] = rep.countOf(CheckStatus::BoundOnly);
  counts["skipped"] = rep.countOf(CheckStatus::Skipped);
  j["counts"] = std::move(counts);
  json checks = json::array();
  for (const CheckRecord& r : rep.records) {
    json c;
    c["id"] = r.id;
    c["anchor"] = r.anchor;
    if (!r.inputs.empty()) c["inputs"] = r.inputs;
    if (!r.lhs.empty()) c["lhs"] = r.lhs;
    if (!r.rhs.empty()) c["rhs"] = r.rhs;
    if (!r.slack.empty()) c["slack"] = r.slack;
    c["status"] = status_name(r.status);
    if (!r.reason.empty()) c["reason"] = r.reason;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

} // namespace veerlat
