#include "veerlat/farey.hpp"

#include <cstddef>
#include <deque>
#include <vector>

#include "veerlat/errors.hpp"

namespace veerlat {
namespace {

// Unimodular matrix sending the reduced slope a to 1/0.
Mat2 sendToInfinity(const Slope& a) {
  // Extended gcd: find r, s with a.p * s - a.q * r = 1.
  Int old_r = a.p, r = a.q;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int qq = old_r / r;
    Int tmp = old_r - qq * r; old_r = r; r = tmp;
    tmp = old_s - qq * s; old_s = s; s = tmp;
    tmp = old_t - qq * t; old_t = t; t = tmp;
  }
  // old_r = gcd = ±1 = a.p*old_s + a.q*old_t
  Int u = old_s, v = old_t;
  if (old_r < 0) { u = -u; v = -v; }
  // u*a.p + v*a.q = 1; rows chosen so the matrix has determinant 1.
  return Mat2{u, v, -a.q, a.p};
}

// Vertices of the triangle ladder crossed by the geodesic from 1/0 to x,
// generated from the continued-fraction expansion of x (all intermediate
// fractions of every step).
std::vector<Slope> ladderVertices(const Slope& x) {
  std::vector<Slope> verts;
  verts.push_back(Slope{1, 0});
  // x is finite here (q > 0).
  Int p = x.p, q = x.q;
  // Continued fraction with floor division so negative values work.
  Int pm1 = 1, qm1 = 0;  // previous convergent (starts at 1/0)
  Int pm2 = 0, qm2 = 1;  // one before that (starts at 0/1)
  bool first = true;
  while (q != 0) {
    Int a = p / q, r = p % q;
    if (r != 0 && ((r < 0) != (q < 0))) { a -= 1; r += q; }
    if (first) {
      // The geodesic leaves the fan of 1/0 through the triangle
      // {1/0, floor(x), floor(x)+1}; seed the convergent recurrence with
      // conv_{-1} = 1/0 and conv_0 = floor(x)/1.
      verts.push_back(Slope{a, 1});
      verts.push_back(Slope{a + 1, 1});
      pm2 = 1; qm2 = 0;
      pm1 = a; qm1 = 1;
      first = false;
    } else {
      // Intermediate fractions j*prev + prevprev for j = 1..a; j = a is the
      // next convergent.  These are the rungs of the fan pivoting at the
      // previous convergent.
      if (a <= 0) fail(ErrorCode::Internal, "continued fraction step not positive");
      Int np = 0, nq = 0;
      for (Int j = 1; j <= a; ++j) {
        np = j * pm1 + pm2;
        nq = j * qm1 + qm2;
        verts.push_back(Slope{np, nq});
      }
      pm2 = pm1; qm2 = qm1;
      pm1 = np; qm1 = nq;
    }
    p = q; q = r;
  }
  return verts;
}

} // namespace

std::int64_t fareyDistance(const Slope& a, const Slope& b) {
  if (a == b) return 0;
  if (farey_neighbors(a, b)) return 1;
  Mat2 g = sendToInfinity(a);
  Slope x = g.apply(b);
  if (x.q == 0) fail(ErrorCode::Internal, "distinct slopes mapped together");
  std::vector<Slope> verts = ladderVertices(x);
  // Deduplicate.
  std::vector<Slope> uniq;
  for (const Slope& v : verts) {
    bool seen = false;
    for (const Slope& u : uniq)
      if (u == v) { seen = true; break; }
    if (!seen) uniq.push_back(v);
  }
  // Ensure source and target are present.
  std::size_t src = uniq.size(), dst = uniq.size();
  Slope inf{1, 0};
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    if (uniq[i] == inf) src = i;
    if (uniq[i] == x) dst = i;
  }
  if (src == uniq.size() || dst == uniq.size())
    fail(ErrorCode::Internal, "ladder missing an endpoint");
  // Breadth-first search over the ladder with determinant-+-1 adjacency.
  std::vector<std::int64_t> dist(uniq.size(), -1);
  std::deque<std::size_t> queue;
  dist[src] = 0;
  queue.push_back(src);
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    if (cur == dst) return dist[cur];
    for (std::size_t next = 0; next < uniq.size(); ++next) {
      if (dist[next] >= 0) continue;
      if (farey_neighbors(uniq[cur], uniq[next])) {
        dist[next] = dist[cur] + 1;
        queue.push_back(next);
      }
    }
  }
  fail(ErrorCode::Internal, "ladder breadth-first search did not reach target");
}

} // namespace veerlat
