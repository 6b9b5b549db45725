#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "veerlat/errors.hpp"

namespace veerlat {

using Int = boost::multiprecision::cpp_int;

// A slope p/q on the square torus, stored as a reduced pair with q > 0, or
// (1,0) for the vertical slope 1/0.  Values are unbounded: slopes deep in the
// sweep grow like powers of the monodromy's dilatation.
struct Slope {
  Int p; // numerator ("rise")
  Int q; // denominator ("run")

  Slope() : p(0), q(1) {}
  Slope(Int pp, Int qq) : p(std::move(pp)), q(std::move(qq)) { normalize(); }
  Slope(long pp, long qq) : p(pp), q(qq) { normalize(); }

  void normalize() {
    if (p == 0 && q == 0) fail(ErrorCode::Internal, "slope 0/0");
    Int g = gcd(abs(p), abs(q));
    if (g > 1) { p /= g; q /= g; }
    if (q < 0 || (q == 0 && p < 0)) { p = -p; q = -q; }
  }

  bool operator==(const Slope& o) const { return p == o.p && q == o.q; }
  bool operator!=(const Slope& o) const { return !(*this == o); }
  // Lexicographic key for use in ordered containers; not the circle order.
  bool operator<(const Slope& o) const {
    if (p != o.p) return p < o.p;
    return q < o.q;
  }

  bool is_infinity() const { return q == 0; }

  std::string str() const {
    return p.str() + "/" + q.str();
  }
};

// det of the pair as column vectors: p1*q2 - q1*p2.
inline Int det(const Slope& a, const Slope& b) { return a.p * b.q - a.q * b.p; }

inline bool farey_neighbors(const Slope& a, const Slope& b) { return abs(det(a, b)) == 1; }

// Geometric intersection number of the closed curves of two slopes.
inline Int intersection_closed(const Slope& a, const Slope& b) { return abs(det(a, b)); }

// Geometric intersection number (interior crossings) of the ideal arcs of two
// slopes on the once-punctured torus: |det| - 1 for distinct slopes, else 0.
inline Int intersection_arcs(const Slope& a, const Slope& b) {
  Int d = abs(det(a, b));
  return d == 0 ? Int(0) : Int(d - 1);
}

// Crossings of an ideal arc with a closed curve: |det|.
inline Int intersection_arc_closed(const Slope& arc, const Slope& curve) {
  return abs(det(arc, curve));
}

// 2x2 integer matrix acting on slope pairs as column vectors (p, q)^T.
struct Mat2 {
  Int a, b, c, d; // [[a, b], [c, d]]

  static Mat2 identity() { return {1, 0, 0, 1}; }
  static Mat2 letterR() { return {1, 1, 0, 1}; } // p -> p + q (slope value x -> x + 1)
  static Mat2 letterL() { return {1, 0, 1, 1}; } // q -> p + q (slope value x -> x/(x+1))

  Int trace() const { return a + d; }
  Int det() const { return a * d - b * c; }

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }

  Slope apply(const Slope& s) const { return Slope(a * s.p + b * s.q, c * s.p + d * s.q); }

  Mat2 inverse() const {
    Int dt = det();
    if (dt != 1 && dt != -1) fail(ErrorCode::Internal, "inverse of non-unimodular matrix");
    // adj / det; 1/det = det for det = +-1.
    return {d * dt, -b * dt, -c * dt, a * dt};
  }

  Mat2 pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    Mat2 r = identity(), base = *this;
    while (n > 0) {
      if (n & 1) r = r * base;
      base = base * base;
      n >>= 1;
    }
    return r;
  }

  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

// True when the two unordered slope pairs {u, v} and {a, b} are linked on the
// circle of slopes (each pair separates the other).  The product of four dets
// is invariant under all representative sign flips because each vector occurs
// twice.
inline bool pairs_linked(const Slope& u, const Slope& v, const Slope& a, const Slope& b) {
  Int prod = det(u, a) * det(u, b) * det(v, a) * det(v, b);
  return prod < 0;
}

struct SlopeHash {
  size_t operator()(const Slope& s) const {
    std::hash<std::string> h;
    return h(s.str());
  }
};

} // namespace veerlat
