#pragma once

#include <stdexcept>
#include <string>

namespace veerlat {

// Error taxonomy shared across the library.  Each condition the CLI maps to a
// distinct exit code gets its own code here; everything else is Internal.
enum class ErrorCode {
  NotPseudoAnosov,   // monodromy is not pseudo-Anosov (single-letter word, |trace| <= 2, ...)
  Unveerable,        // no consistent edge 2-coloring with quadrilateral alternation
  BadScript,         // malformed flip script / illegal flip / broken relabeling
  HashMismatch,      // bundle file content hash does not match its payload
  NotCompatible,     // subsurface fails the compatibility guard (e.g. core is not a sweep slope)
  FlipIllegal,       // flip attempted across a self-glued edge
  NotDisjoint,       // edge-set constraint contains crossing (or coinciding) arcs
  EmptyConstraint,   // top/bottom requested for an empty edge set
  EmptyProjection,   // class has empty projection to the requested annulus
  IncompatibleReference, // coordinates reference different triangulations
  WindowExceeded,    // a search left the current unrolled window
  WindowExhausted,   // adaptive window hit its cap without completing
  InessentialGraph,  // graph carries no essential arc or curve
  HypothesisUnmet,   // a check's standing hypothesis fails on this input
  NoBoundApplicable, // no distance bound rule applies
  ModelUnsupported,  // exact computation not available for this fiber model
  MoveIllegal,       // section move precondition fails (tetrahedron not movable there)
  NotOrdered,        // path requested between sections that are not comparable
  NotContaining,     // requested waypoint is not between the path endpoints
  NoOverlapFound,    // no deck translate of the subsurface overlaps it in the window
  NoT0InBand,        // no starting section lies in the required distance band
  Internal,          // invariant violation inside the library
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotPseudoAnosov: return "NotPseudoAnosov";
    case ErrorCode::Unveerable: return "Unveerable";
    case ErrorCode::BadScript: return "BadScript";
    case ErrorCode::HashMismatch: return "HashMismatch";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::FlipIllegal: return "FlipIllegal";
    case ErrorCode::NotDisjoint: return "NotDisjoint";
    case ErrorCode::EmptyConstraint: return "EmptyConstraint";
    case ErrorCode::EmptyProjection: return "EmptyProjection";
    case ErrorCode::IncompatibleReference: return "IncompatibleReference";
    case ErrorCode::WindowExceeded: return "WindowExceeded";
    case ErrorCode::WindowExhausted: return "WindowExhausted";
    case ErrorCode::InessentialGraph: return "InessentialGraph";
    case ErrorCode::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorCode::NoBoundApplicable: return "NoBoundApplicable";
    case ErrorCode::ModelUnsupported: return "ModelUnsupported";
    case ErrorCode::MoveIllegal: return "MoveIllegal";
    case ErrorCode::NotOrdered: return "NotOrdered";
    case ErrorCode::NotContaining: return "NotContaining";
    case ErrorCode::NoOverlapFound: return "NoOverlapFound";
    case ErrorCode::NoT0InBand: return "NoT0InBand";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

} // namespace veerlat
