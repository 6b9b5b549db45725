#pragma once

#include <utility>

#include "veerlat/slope.hpp"

namespace veerlat {

// Exact element of Q(sqrt(disc)): (a + b*sqrt(disc)) / c with c > 0, reduced.
// disc is a fixed positive non-square per value; purely rational values carry
// disc = 0 and mix freely with any field.  Used for eigen-slope values of the
// monodromy and for twisting coordinates, so that every comparison in the
// distance machinery is a decision procedure rather than a float test.
struct QuadVal {
  Int a{0};
  Int b{0};
  Int c{1};
  Int disc{0};

  QuadVal() = default;
  QuadVal(Int a_, Int b_, Int c_, Int disc_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), disc(std::move(disc_)) {
    normalize();
  }

  static QuadVal rational(Int num, Int den) { return QuadVal(std::move(num), 0, std::move(den), 0); }
  static QuadVal integer(Int n) { return rational(std::move(n), 1); }

  void normalize() {
    if (c == 0) fail(ErrorCode::Internal, "QuadVal with zero denominator");
    if (c < 0) { a = -a; b = -b; c = -c; }
    if (b == 0) disc = 0;
    Int g = gcd(gcd(abs(a), abs(b)), c);
    if (g > 1) { a /= g; b /= g; c /= g; }
  }

  bool is_rational() const { return b == 0; }

  // -1 / 0 / +1 of the value.
  int sign() const {
    int sa = a == 0 ? 0 : (a > 0 ? 1 : -1);
    if (b == 0) return sa;
    int sb = b > 0 ? 1 : -1;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // |a| vs |b| sqrt(disc)
    Int lhs = a * a, rhs = b * b * disc;
    if (lhs == rhs) fail(ErrorCode::Internal, "QuadVal discriminant is a perfect square");
    return (lhs > rhs) ? sa : sb;
  }
};

namespace detail {
inline Int common_disc(const QuadVal& x, const QuadVal& y) {
  if (x.disc == 0) return y.disc;
  if (y.disc == 0 || x.disc == y.disc) return x.disc;
  fail(ErrorCode::Internal, "mixing distinct quadratic fields");
}

inline Int floor_div(const Int& n, const Int& d) {
  Int q = n / d, r = n % d;
  if (r != 0 && ((r < 0) != (d < 0))) --q;
  return q;
}
} // namespace detail

inline QuadVal operator+(const QuadVal& x, const QuadVal& y) {
  Int D = detail::common_disc(x, y);
  return QuadVal(x.a * y.c + y.a * x.c, x.b * y.c + y.b * x.c, x.c * y.c, D);
}

inline QuadVal operator-(const QuadVal& x) { return QuadVal(-x.a, -x.b, x.c, x.disc); }
inline QuadVal operator-(const QuadVal& x, const QuadVal& y) { return x + (-y); }

inline QuadVal operator*(const QuadVal& x, const QuadVal& y) {
  Int D = detail::common_disc(x, y);
  return QuadVal(x.a * y.a + x.b * y.b * D, x.a * y.b + x.b * y.a, x.c * y.c, D);
}

inline QuadVal operator/(const QuadVal& x, const QuadVal& y) {
  Int D = detail::common_disc(x, y);
  // 1/((a + b sqrt(D))/c) = c (a - b sqrt(D)) / (a^2 - b^2 D)
  Int norm = y.a * y.a - y.b * y.b * D;
  if (norm == 0) fail(ErrorCode::Internal, "division by zero QuadVal");
  QuadVal inv(y.c * y.a, -y.c * y.b, norm, D);
  return x * inv;
}

inline int compare(const QuadVal& x, const QuadVal& y) { return (x - y).sign(); }
inline bool operator<(const QuadVal& x, const QuadVal& y) { return compare(x, y) < 0; }
inline bool operator>(const QuadVal& x, const QuadVal& y) { return compare(x, y) > 0; }
inline bool operator<=(const QuadVal& x, const QuadVal& y) { return compare(x, y) <= 0; }
inline bool operator>=(const QuadVal& x, const QuadVal& y) { return compare(x, y) >= 0; }
inline bool operator==(const QuadVal& x, const QuadVal& y) { return compare(x, y) == 0; }

inline Int floor(const QuadVal& x) {
  using boost::multiprecision::sqrt;
  if (x.b == 0) return detail::floor_div(x.a, x.c);
  // b*sqrt(D) lies strictly between consecutive integers lo and lo+1.
  Int sq = x.b * x.b * x.disc;
  Int s = sqrt(sq);
  Int lo = (x.b > 0) ? s : -s - 1;
  // a + b sqrt(D) in the open interval (a + lo, a + lo + 1); no multiple of c
  // sits strictly inside an open unit interval with integer endpoints, so the
  // floor is constant there.
  return detail::floor_div(x.a + lo, x.c);
}

// Nearest integer; for an exact half (possible only for rational values) the
// tie goes to the candidate of smaller absolute value.
inline Int round_nearest(const QuadVal& x) {
  Int f = floor(x);
  QuadVal frac = x - QuadVal::integer(f);
  int cmp = compare(frac, QuadVal::rational(1, 2));
  if (cmp < 0) return f;
  if (cmp > 0) return f + 1;
  return (abs(f) <= abs(f + 1)) ? f : f + 1;
}

inline double approx(const QuadVal& x) {
  double sd = x.disc == 0 ? 0.0 : std::sqrt(static_cast<double>(x.disc));
  return (static_cast<double>(x.a) + static_cast<double>(x.b) * sd) / static_cast<double>(x.c);
}

// Mobius action of an integer matrix on a slope value.
inline QuadVal mobius(const Mat2& m, const QuadVal& x) {
  QuadVal num = QuadVal(m.a, 0, 1, 0) * x + QuadVal::integer(m.b);
  QuadVal den = QuadVal(m.c, 0, 1, 0) * x + QuadVal::integer(m.d);
  return num / den;
}

inline std::string str(const QuadVal& x) {
  if (x.b == 0) return "(" + x.a.str() + ")/" + x.c.str();
  Int ab = abs(x.b);
  return "(" + x.a.str() + (x.b >= 0 ? "+" : "-") + ab.str() + "*sqrt(" + x.disc.str() + "))/" +
         x.c.str();
}

} // namespace veerlat
