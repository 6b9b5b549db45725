#pragma once

#include <cstdlib>
#include <string>

#include "veerlat/errors.hpp"

namespace veerlat {

// Adaptive unrolling window, measured in periods on each side of level 0.
// Computations that need "enough" of the Z-periodic complex run under
// withWindow: they start small and double on WindowExceeded until the cap.
// The cap defaults to 48 and can be overridden via the VEERLAT_WINDOW
// environment variable.
inline int windowCap() {
  if (const char* env = std::getenv("VEERLAT_WINDOW")) {
    try {
      int v = std::stoi(env);
      if (v >= 3) return v;
    } catch (...) {
      // fall through to the default on unparsable input
    }
  }
  return 48;
}

inline int windowStart() { return 3; }

template <typename Fn>
auto withWindow(Fn&& fn) -> decltype(fn(3)) {
  int cap = windowCap();
  int w = windowStart();
  for (;;) {
    try {
      return fn(w);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WindowExceeded || w >= cap) throw;
      w = (2 * w > cap) ? cap : 2 * w;
    }
  }
}

[[noreturn]] inline void windowOverrun(const std::string& what) {
  fail(ErrorCode::WindowExceeded, "level window too small for " + what);
}

} // namespace veerlat
