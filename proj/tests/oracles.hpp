#pragma once

// Test-side reference computations. None of these call into the library's
// elimination code: they work from first principles on tiny inputs, so a
// shared bug cannot make both sides agree.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "ppdiv/number.hpp"

namespace oracle {

using ppdiv::Integer;
using ppdiv::Rational;
using IVec = std::vector<Integer>;
using RVec = std::vector<Rational>;
using IMat = std::vector<IVec>;

/// Extended Euclid on machine-size values; returns (g, x, y) with a*x + b*y == g.
struct Bezout {
  std::int64_t g, x, y;
};

inline Bezout euclid(std::int64_t a, std::int64_t b) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

inline Integer gcd(Integer a, Integer b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Cofactor expansion; fine up to 4x4.
inline Integer det(const IMat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IMat minor;
    for (std::size_t i = 1; i < n; ++i) {
      IVec row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(row);
    }
    Integer term = m[0][j] * det(minor);
    s += (j % 2 == 0) ? term : Integer(-term);
  }
  return s;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// k-th determinantal divisor: gcd of all k x k minors (0 if all vanish).
inline Integer determinantal_divisor(const IMat& a, std::size_t k) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(rows, k, 0, cur, rs);
  subsets(cols, k, 0, cur, cs);
  Integer g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      IMat m;
      for (auto i : r) {
        IVec row;
        for (auto j : c) row.push_back(a[i][j]);
        m.push_back(row);
      }
      g = gcd(g, det(m));
    }
  return g;
}

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}.
inline std::vector<Integer> invariant_factors(const IMat& a) {
  std::vector<Integer> out;
  const std::size_t n = std::min(a.size(), a.empty() ? std::size_t(0) : a[0].size());
  Integer prev = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Integer dk = determinantal_divisor(a, k);
    if (dk == 0) break;
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

inline Rational dot(const RVec& a, const RVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational cross(const RVec& o, const RVec& a, const RVec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Vertices of the convex hull of planar points (Andrew's monotone chain),
/// collinear points dropped.
inline std::vector<RVec> hull_2d(std::vector<RVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<RVec> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  std::sort(h.begin(), h.end());
  return h;
}

/// Vertices of {x in Q^2 : <a_i, x> >= b_i} by intersecting every pair of
/// boundary lines and keeping the feasible intersection points.
inline std::vector<RVec> vertices_from_inequalities(const std::vector<RVec>& a, const std::vector<Rational>& b) {
  std::vector<RVec> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      Rational d = a[i][0] * a[j][1] - a[i][1] * a[j][0];
      if (d == 0) continue;
      RVec x{(b[i] * a[j][1] - a[i][1] * b[j]) / d, (a[i][0] * b[j] - b[i] * a[j][0]) / d};
      bool feasible = true;
      for (std::size_t t = 0; t < a.size() && feasible; ++t) feasible = dot(a[t], x) >= b[t];
      if (feasible) out.push_back(x);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Rational min_over(const std::vector<RVec>& pts, const RVec& u) {
  Rational best = dot(pts.front(), u);
  for (const auto& p : pts) best = std::min(best, dot(p, u));
  return best;
}

/// Lattice points u with |u| <= radius and <u, g> >= 0 for every generator g.
inline std::vector<RVec> dual_lattice_points(const std::vector<RVec>& generators, long radius) {
  std::vector<RVec> out;
  for (long x = -radius; x <= radius; ++x)
    for (long y = -radius; y <= radius; ++y) {
      if (x * x + y * y > radius * radius) continue;
      RVec u{Rational(x), Rational(y)};
      bool ok = true;
      for (const auto& g : generators) ok = ok && dot(u, g) >= 0;
      if (ok) out.push_back(u);
    }
  return out;
}

/// Small random values for generators; fixed seeds are chosen by the callers.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  Rational rational(long range, long max_den) {
    long den = integer(1, max_den);
    return Rational(integer(-range * den, range * den), den);
  }
  bool coin() { return integer(0, 1) == 1; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<long>(v.size()) - 1))];
  }
};

}  // namespace oracle
