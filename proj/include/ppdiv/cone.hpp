#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ppdiv/matrix.hpp"
#include "ppdiv/smith.hpp"

namespace ppdiv {

namespace detail {

inline bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline IntVector negated(const IntVector& v) {
  IntVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
  return w;
}

/// Canonical generating set of {x in Q^n : <a, x> >= 0 for every row a}.
///
/// Output: for each Hermite basis vector b of the lineality lattice, b and -b;
/// then the primitive extreme rays of the pointed part, taken inside the
/// orthogonal complement of the lineality space. Every list is sorted, so the
/// result depends only on the cone, not on the inequalities describing it.
/// Rays are found by brute force over (d-1)-subsets of tight rows (naive double
/// description), adequate for the small ranks used here.
inline std::vector<IntVector> cone_generators(std::size_t n, const std::vector<IntVector>& rows) {
  std::vector<IntVector> out;
  if (n == 0) return out;
  IntMatrix a = IntMatrix::from_rows(rows, n);

  IntMatrix kernel = integer_kernel(a);  // columns span the lineality lattice
  IntMatrix lineality = kernel.cols() ? hermite_normal_form(kernel.transpose()) : IntMatrix(0, n);
  const std::size_t lin_dim = lineality.rows();
  for (std::size_t i = 0; i < lin_dim; ++i) {
    IntVector b = lineality.row_vector(i);
    out.push_back(negated(b));
    out.push_back(b);
  }
  const std::size_t d = n - lin_dim;
  if (d == 0) return out;

  std::set<IntVector, decltype(&lex_less)> rays(&lex_less);
  auto subsets = subsets_last_first(rows.size(), d - 1);
  for (const auto& subset : subsets) {
    RatMatrix m(subset.size() + lin_dim, n);
    for (std::size_t i = 0; i < subset.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[subset[i]][j];
    for (std::size_t i = 0; i < lin_dim; ++i)
      for (std::size_t j = 0; j < n; ++j) m(subset.size() + i, j) = lineality(i, j);
    auto null = nullspace(m);
    if (null.size() != 1) continue;
    IntVector r = primitive_vector(null.front());
    bool pos = true, neg = true;
    for (const auto& row : rows) {
      Integer v = dot(row, r);
      if (v < 0) pos = false;
      if (v > 0) neg = false;
    }
    if (pos && !neg) rays.insert(r);
    if (neg && !pos) rays.insert(negated(r));
  }
  out.insert(out.end(), rays.begin(), rays.end());
  return out;
}

}  // namespace detail

/// Rational polyhedral cone in Q^n, kept in both V- and H-representation.
/// Generators are canonical (see detail::cone_generators), so structural
/// equality of two cones is equality of the sets.
class Cone {
 public:
  Cone() = default;

  static Cone from_generators(std::size_t rank, const std::vector<IntVector>& generators) {
    std::vector<IntVector> gens;
    for (const auto& g : generators) {
      if (g.size() != rank) fail(ErrorKind::RankMismatch, "cone generator has wrong rank");
      if (!ppdiv::is_zero(g)) gens.push_back(primitive_vector(g));
    }
    Cone c;
    c.rank_ = rank;
    c.halfspaces_ = detail::cone_generators(rank, gens);
    c.generators_ = detail::cone_generators(rank, c.halfspaces_);
    c.count_lineality();
    return c;
  }

  static Cone from_generators(std::size_t rank, const std::vector<RatVector>& generators) {
    std::vector<IntVector> gens;
    for (const auto& g : generators)
      if (!ppdiv::is_zero(g)) gens.push_back(primitive_vector(g));
    return from_generators(rank, gens);
  }

  /// {x : <a, x> >= 0 for all a in halfspaces}.
  static Cone from_inequalities(std::size_t rank, const std::vector<IntVector>& halfspaces) {
    for (const auto& h : halfspaces)
      if (h.size() != rank) fail(ErrorKind::RankMismatch, "cone inequality has wrong rank");
    Cone c;
    c.rank_ = rank;
    c.generators_ = detail::cone_generators(rank, halfspaces);
    c.halfspaces_ = detail::cone_generators(rank, c.generators_);
    c.count_lineality();
    return c;
  }

  static Cone zero(std::size_t rank) { return from_generators(rank, std::vector<IntVector>{}); }

  static Cone orthant(std::size_t rank) {
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < rank; ++i) {
      IntVector e(rank, Integer(0));
      e[i] = 1;
      gens.push_back(e);
    }
    return from_generators(rank, gens);
  }

  static Cone whole_space(std::size_t rank) { return from_inequalities(rank, {}); }

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<IntVector>& generators() const noexcept { return generators_; }
  /// Inward normals; an equality shows up as a +/- pair.
  const std::vector<IntVector>& halfspaces() const noexcept { return halfspaces_; }

  bool is_pointed() const noexcept { return lineality_dim_ == 0; }
  bool is_zero() const noexcept { return generators_.empty(); }
  std::size_t lineality_dimension() const noexcept { return lineality_dim_; }

  template <typename Vec>
  bool contains(const Vec& x) const {
    if (x.size() != rank_) fail(ErrorKind::RankMismatch, "cone membership: wrong rank");
    return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                       [&](const IntVector& h) { return dot_mixed(h, x) >= 0; });
  }

  bool contains(const Cone& other) const {
    if (other.rank_ != rank_) fail(ErrorKind::RankMismatch, "cone containment: rank mismatch");
    return std::all_of(other.generators_.begin(), other.generators_.end(),
                       [&](const IntVector& g) { return contains(g); });
  }

  /// {v : <u, v> >= 0 for all u in this cone}.
  Cone dual() const {
    Cone c;
    c.rank_ = rank_;
    c.generators_ = halfspaces_;
    c.halfspaces_ = generators_;
    c.count_lineality();
    return c;
  }

  /// Image under a linear map given as a (rank' x rank) matrix.
  Cone image(const IntMatrix& f) const {
    if (f.cols() != rank_) fail(ErrorKind::RankMismatch, "cone image: map has wrong source rank");
    std::vector<IntVector> gens;
    for (const auto& g : generators_) gens.push_back(f.apply(g));
    return from_generators(f.rows(), gens);
  }

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.rank_ == b.rank_ && a.generators_ == b.generators_;
  }

  std::string to_string() const {
    std::string s = "cone(";
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (i) s += ",";
      s += format_tuple(generators_[i]);
    }
    return s + ")";
  }

 private:
  static Rational dot_mixed(const IntVector& h, const RatVector& x) { return dot(x, h); }
  static Integer dot_mixed(const IntVector& h, const IntVector& x) { return dot(h, x); }

  void count_lineality() {
    lineality_dim_ = 0;
    for (const auto& g : generators_) {
      auto neg = detail::negated(g);
      if (std::find(generators_.begin(), generators_.end(), neg) != generators_.end())
        ++lineality_dim_;
    }
    lineality_dim_ /= 2;
  }

  std::size_t rank_ = 0;
  std::vector<IntVector> generators_;
  std::vector<IntVector> halfspaces_;
  std::size_t lineality_dim_ = 0;
};

inline Cone dual_cone(const Cone& c) { return c.dual(); }

}  // namespace ppdiv
