#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ppdiv/cone.hpp"

namespace ppdiv {

/// min over a polyhedron of a linear form; empty optional means minus infinity.
struct SupportValue {
  std::optional<Rational> value;

  static SupportValue minus_infinity() { return {}; }
  bool is_minus_infinity() const noexcept { return !value.has_value(); }
  friend bool operator==(const SupportValue&, const SupportValue&) = default;
};

/// <normal, x> >= offset
struct Halfspace {
  IntVector normal;
  Rational offset;
};

namespace detail {

inline bool lex_less_rat(const RatVector& a, const RatVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline IntVector homogenize(const RatVector& point) {
  RatVector h(point);
  h.push_back(1);
  return primitive_vector(h);
}

// Clears denominators of <a, x> >= c into an integer row (a', -c') of the
// homogenized cone.
inline IntVector homogenize(const RatVector& normal, const Rational& offset) {
  RatVector h(normal);
  h.push_back(-offset);
  Integer l = 1;
  for (const auto& x : h) l = lcm(l, denominator(x));
  IntVector row(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) row[i] = numerator(Rational(h[i] * l));
  return row;
}

}  // namespace detail

/// Convex polyhedron conv(vertices) + tail in Q^n with a pointed tail cone.
/// The vertex list is irredundant and sorted lexicographically.
class Polyhedron {
 public:
  Polyhedron() = default;

  /// conv(points) + tail; redundant points are discarded.
  static Polyhedron make(const std::vector<RatVector>& points, const Cone& tail) {
    if (points.empty()) fail(ErrorKind::EmptyPolyhedron, "a polyhedron needs at least one point");
    if (!tail.is_pointed()) fail(ErrorKind::NotPointed, "tail cone " + tail.to_string() + " is not pointed");
    for (const auto& p : points)
      if (p.size() != tail.rank()) fail(ErrorKind::RankMismatch, "point rank differs from tail rank");
    Polyhedron d;
    d.tail_ = tail;
    d.canonicalize(points);
    return d;
  }

  static Polyhedron point(const RatVector& p, const Cone& tail) { return make({p}, tail); }

  static Polyhedron point(const RatVector& p) { return make({p}, Cone::zero(p.size())); }

  /// [a, b] in rank one with trivial tail.
  static Polyhedron interval(const Rational& a, const Rational& b) {
    if (b < a) fail(ErrorKind::EmptyInterval, "interval [" + format(a) + "," + format(b) + "]");
    return make({RatVector{a}, RatVector{b}}, Cone::zero(1));
  }

  /// {0} + tail, the neutral element of Minkowski addition.
  static Polyhedron trivial(const Cone& tail) { return point(RatVector(tail.rank(), Rational(0)), tail); }

  /// {x : <a_i, x> >= b_i}. Throws EmptyPolyhedron or NotPointed.
  static Polyhedron from_inequalities(std::size_t rank, const std::vector<RatVector>& normals,
                                      const std::vector<Rational>& offsets) {
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < normals.size(); ++i) {
      if (normals[i].size() != rank) fail(ErrorKind::RankMismatch, "inequality has wrong rank");
      rows.push_back(detail::homogenize(normals[i], offsets[i]));
    }
    IntVector t_nonneg(rank + 1, Integer(0));
    t_nonneg[rank] = 1;
    rows.push_back(t_nonneg);
    auto gens = detail::cone_generators(rank + 1, rows);
    std::vector<RatVector> points;
    std::vector<IntVector> rays;
    for (const auto& g : gens) {
      if (g[rank] > 0) {
        RatVector p(rank);
        for (std::size_t i = 0; i < rank; ++i) p[i] = Rational(g[i], g[rank]);
        points.push_back(p);
      } else {
        rays.emplace_back(g.begin(), g.end() - 1);
      }
    }
    if (points.empty()) fail(ErrorKind::EmptyPolyhedron, "inequality system is infeasible");
    Cone tail = Cone::from_generators(rank, rays);
    if (!tail.is_pointed()) fail(ErrorKind::NotPointed, "polyhedron contains a line");
    return make(points, tail);
  }

  std::size_t rank() const noexcept { return tail_.rank(); }
  const std::vector<RatVector>& vertices() const noexcept { return vertices_; }
  const Cone& tail() const noexcept { return tail_; }
  const std::vector<Halfspace>& halfspaces() const noexcept { return halfspaces_; }

  bool is_point() const noexcept { return vertices_.size() == 1; }
  bool is_trivial() const { return is_point() && is_zero(vertices_.front()); }

  SupportValue support_min(const RatVector& u) const {
    if (u.size() != rank()) fail(ErrorKind::RankMismatch, "support_min: functional has wrong rank");
    for (const auto& r : tail_.generators())
      if (dot(u, r) < 0) return SupportValue::minus_infinity();
    Rational best = dot(u, vertices_.front());
    for (const auto& v : vertices_) best = std::min(best, dot(u, v));
    return SupportValue{best};
  }

  bool contains(const RatVector& x) const {
    if (x.size() != rank()) fail(ErrorKind::RankMismatch, "membership: wrong rank");
    return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                       [&](const Halfspace& h) { return dot(x, h.normal) >= h.offset; });
  }

  bool contains(const Polyhedron& inner) const {
    if (inner.rank() != rank()) fail(ErrorKind::RankMismatch, "containment: rank mismatch");
    return std::all_of(inner.vertices_.begin(), inner.vertices_.end(),
                       [&](const RatVector& v) { return contains(v); }) &&
           tail_.contains(inner.tail_);
  }

  Polyhedron translate(const RatVector& t) const {
    if (t.size() != rank()) fail(ErrorKind::RankMismatch, "translate: wrong rank");
    std::vector<RatVector> pts = vertices_;
    for (auto& p : pts)
      for (std::size_t i = 0; i < p.size(); ++i) p[i] += t[i];
    return make(pts, tail_);
  }

  Polyhedron scale(const Rational& r) const {
    if (r <= 0) fail(ErrorKind::InvalidArgument, "scale factor must be positive");
    std::vector<RatVector> pts = vertices_;
    for (auto& p : pts)
      for (auto& x : p) x *= r;
    return make(pts, tail_);
  }

  /// f(this) + target_tail, for f given as a (rank' x rank) integer matrix.
  Polyhedron image(const IntMatrix& f, const Cone& target_tail) const {
    if (f.cols() != rank() || f.rows() != target_tail.rank())
      fail(ErrorKind::RankMismatch, "image: map shape does not match the ranks");
    std::vector<RatVector> pts;
    for (const auto& v : vertices_) pts.push_back(apply(f, v));
    return make(pts, target_tail);
  }

  /// Same polyhedron with a larger tail: this + tail.
  Polyhedron with_tail(const Cone& tail) const { return make(vertices_, tail); }

  /// Lexicographically smallest vertex.
  const RatVector& lex_min_vertex() const { return vertices_.front(); }

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
    return a.tail_ == b.tail_ && a.vertices_ == b.vertices_;
  }

 private:
  void canonicalize(const std::vector<RatVector>& points) {
    const std::size_t n = rank();
    if (n == 1) {
      canonicalize_rank_one(points);
      return;
    }
    // Extreme rays of cone{(p, 1), (r, 0)}: those at height 1 are the vertices.
    std::vector<IntVector> gens;
    for (const auto& p : points) gens.push_back(detail::homogenize(p));
    for (const auto& r : tail_.generators()) {
      IntVector g(r);
      g.push_back(0);
      gens.push_back(g);
    }
    Cone lifted = Cone::from_generators(n + 1, gens);
    vertices_.clear();
    for (const auto& g : lifted.generators()) {
      if (g[n] == 0) continue;
      RatVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = Rational(g[i], g[n]);
      vertices_.push_back(v);
    }
    std::sort(vertices_.begin(), vertices_.end(), detail::lex_less_rat);
    halfspaces_.clear();
    for (const auto& h : lifted.halfspaces()) {
      IntVector normal(h.begin(), h.end() - 1);
      if (ppdiv::is_zero(normal)) continue;  // the t >= 0 facet
      halfspaces_.push_back({normal, Rational(-h[n])});
    }
  }

  void canonicalize_rank_one(const std::vector<RatVector>& points) {
    Rational lo = points.front()[0], hi = points.front()[0];
    for (const auto& p : points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    const bool up = tail_.contains(IntVector{1}), down = tail_.contains(IntVector{-1});
    vertices_.clear();
    halfspaces_.clear();
    if (!down) {
      vertices_.push_back({lo});
      halfspaces_.push_back({IntVector{1}, lo});
    }
    if (!up) {
      if (down || hi != lo) vertices_.push_back({hi});
      halfspaces_.push_back({IntVector{-1}, Rational(-hi)});
    }
  }

  Cone tail_;
  std::vector<RatVector> vertices_;
  std::vector<Halfspace> halfspaces_;
};

inline Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) {
  if (a.rank() != b.rank()) fail(ErrorKind::RankMismatch, "minkowski_sum: rank mismatch");
  if (!(a.tail() == b.tail())) fail(ErrorKind::TailMismatch, "minkowski_sum: tails differ");
  std::vector<RatVector> pts;
  for (const auto& v : a.vertices())
    for (const auto& w : b.vertices()) {
      RatVector s(v);
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += w[i];
      pts.push_back(s);
    }
  return Polyhedron::make(pts, a.tail());
}

/// {x : x + b ⊆ a}. Throws EmptyPolyhedron when no such x exists.
inline Polyhedron minkowski_difference(const Polyhedron& a, const Polyhedron& b) {
  if (a.rank() != b.rank()) fail(ErrorKind::RankMismatch, "minkowski_difference: rank mismatch");
  if (!(a.tail() == b.tail())) fail(ErrorKind::TailMismatch, "minkowski_difference: tails differ");
  std::vector<RatVector> normals;
  std::vector<Rational> offsets;
  for (const auto& h : a.halfspaces()) {
    Rational m = dot(b.vertices().front(), h.normal);
    for (const auto& v : b.vertices()) m = std::min(m, dot(v, h.normal));
    normals.push_back(to_rational(h.normal));
    offsets.push_back(h.offset - m);
  }
  Polyhedron d = Polyhedron::from_inequalities(a.rank(), normals, offsets);
  return d.with_tail(a.tail());
}

inline SupportValue support_min(const Polyhedron& d, const RatVector& u) { return d.support_min(u); }

inline bool contains(const Polyhedron& outer, const Polyhedron& inner) { return outer.contains(inner); }

inline Polyhedron scale(const Polyhedron& d, const Rational& r) { return d.scale(r); }

inline Polyhedron translate(const Polyhedron& d, const RatVector& t) { return d.translate(t); }

/// Rank one prints as {a} or [a,b]; higher rank as {(..)} or conv(...).
/// The tail is not printed.
inline std::string format_coefficient(const Polyhedron& d) {
  const auto& vs = d.vertices();
  if (d.rank() == 1) {
    if (vs.size() == 1) return "{" + format(vs[0][0]) + "}";
    return "[" + format(vs[0][0]) + "," + format(vs[1][0]) + "]";
  }
  if (vs.size() == 1) return "{" + format_tuple(vs[0]) + "}";
  std::string s = "conv(";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ",";
    s += format_tuple(vs[i]);
  }
  return s + ")";
}

}  // namespace ppdiv
