#pragma once

// Integer normal forms and the exact sequence 0 -> Z^k -F-> Z^m -P-> Z^(m-k) -> 0
// used by the toric downgrade.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "ppdiv/matrix.hpp"

namespace ppdiv {

struct SNFResult {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal, d1 | d2 | ...
  IntMatrix V;  // cols x cols, unimodular
  std::size_t rank = 0;
};

namespace detail {

struct Pivot {
  std::size_t row, col;
};

// Smallest |a_ij| != 0 in the block starting at (t, t); ties go to the leftmost
// column, then the topmost row.
inline std::optional<Pivot> smallest_entry(const IntMatrix& d, std::size_t t) {
  std::optional<Pivot> best;
  Integer best_abs;
  for (std::size_t j = t; j < d.cols(); ++j)
    for (std::size_t i = t; i < d.rows(); ++i) {
      if (d(i, j) == 0) continue;
      Integer a = abs(d(i, j));
      if (!best || a < best_abs) {
        best = Pivot{i, j};
        best_abs = a;
      }
    }
  return best;
}

// Same rule restricted to column t (scanned first, being leftmost) and row t.
inline Pivot smallest_in_cross(const IntMatrix& d, std::size_t t) {
  std::optional<Pivot> best;
  Integer best_abs;
  auto consider = [&](std::size_t i, std::size_t j) {
    if (d(i, j) == 0) return;
    Integer a = abs(d(i, j));
    if (!best || a < best_abs) {
      best = Pivot{i, j};
      best_abs = a;
    }
  };
  for (std::size_t i = t; i < d.rows(); ++i) consider(i, t);
  for (std::size_t j = t + 1; j < d.cols(); ++j) consider(t, j);
  return *best;
}

}  // namespace detail

/// Smith normal form with U*A*V == D. Pivots are chosen as the smallest nonzero
/// absolute value, leftmost column first, then topmost row, so U and V are
/// deterministic functions of A.
inline SNFResult smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SNFResult r{IntMatrix::identity(m), a, IntMatrix::identity(n), 0};
  IntMatrix& d = r.D;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    auto first = detail::smallest_entry(d, t);
    if (!first) break;
    d.swap_rows(t, first->row);
    r.U.swap_rows(t, first->row);
    d.swap_columns(t, first->col);
    r.V.swap_columns(t, first->col);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        d.add_row(i, t, -q);
        r.U.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        d.add_column(j, t, -q);
        r.V.add_column(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        auto p = detail::smallest_in_cross(d, t);
        d.swap_rows(t, p.row);
        r.U.swap_rows(t, p.row);
        d.swap_columns(t, p.col);
        r.V.swap_columns(t, p.col);
        continue;
      }
      // Divisibility chain: pull a non-divisible entry into row t and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.add_row(t, i, Integer(1));
            r.U.add_row(t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      r.U.negate_row(t);
    }
    r.rank = t + 1;
  }
  return r;
}

inline std::vector<Integer> smith_diagonal(const SNFResult& r) {
  std::vector<Integer> diag;
  for (std::size_t i = 0; i < std::min(r.D.rows(), r.D.cols()); ++i) diag.push_back(r.D(i, i));
  return diag;
}

/// Integer solution of A x == b, if one exists.
inline std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) fail(ErrorKind::RankMismatch, "solve_integer: right-hand side size");
  SNFResult s = smith_normal_form(a);
  IntVector ub = s.U.apply(b);
  IntVector y(a.cols(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < s.rank) {
      if (ub[i] % s.D(i, i) != 0) return std::nullopt;
      y[i] = ub[i] / s.D(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V.apply(y);
}

/// Basis (as columns) of the integer kernel {x in Z^n : A x == 0}.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  SNFResult s = smith_normal_form(a);
  return s.V.column_block(s.rank, a.cols() - s.rank);
}

/// Row-style Hermite normal form: the nonzero rows of the result are a basis of
/// the row lattice of `a`, upper triangular with positive pivots and entries
/// above each pivot reduced into [0, pivot).
inline IntMatrix hermite_normal_form(const IntMatrix& a) {
  IntMatrix h = a;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (;;) {
      std::optional<std::size_t> p;
      for (std::size_t i = r; i < h.rows(); ++i)
        if (h(i, c) != 0 && (!p || abs(h(i, c)) < abs(h(*p, c)))) p = i;
      if (!p) break;
      h.swap_rows(r, *p);
      bool done = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        Integer q = h(i, c) / h(r, c);
        h.add_row(i, r, -q);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) h.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h(i, c), h(r, c));
      if (q != 0) h.add_row(i, r, -q);
    }
    ++r;
  }
  return h.row_block(0, r);
}

/// 0 -> Z^k -F-> Z^m -P-> Z^(m-k) -> 0 together with a left inverse `s` of F.
struct ExactSequence {
  IntMatrix F;  // m x k
  IntMatrix P;  // (m-k) x m
  RatMatrix s;  // k x m, s*F == id
};

namespace detail {

inline void check_embedding(const IntMatrix& f, const SNFResult& snf) {
  if (snf.rank < f.cols())
    fail(ErrorKind::NotInjective, "weight matrix has rank " + std::to_string(snf.rank) + " < " +
                                      std::to_string(f.cols()));
  for (std::size_t i = 0; i < f.cols(); ++i)
    if (snf.D(i, i) != 1)
      fail(ErrorKind::TorsionCokernel,
           "image of the weight matrix is not saturated (elementary divisor " + snf.D(i, i).str() +
               ")");
}

// All index subsets of {0..m-1} of the given size, ordered so that subsets using
// later coordinates come first.
inline std::vector<std::vector<std::size_t>> subsets_last_first(std::size_t m, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  if (size > m) return out;
  for (;;) {
    out.push_back(idx);
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == m - size + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(b.rbegin(), b.rend(), a.rbegin(), a.rend());
  });
  return out;
}

}  // namespace detail

/// Integral left inverse of F supported on as few coordinates as possible.
/// Among supports of minimal size, the one using the latest coordinates wins;
/// for rank one with two-coordinate support the Bezout pair minimizing |x|,
/// then |y|, is taken. Requires F injective with saturated image.
inline IntMatrix normalized_section(const IntMatrix& f) {
  const std::size_t m = f.rows(), k = f.cols();
  detail::check_embedding(f, smith_normal_form(f));
  for (std::size_t size = k; size <= m; ++size) {
    for (const auto& support : detail::subsets_last_first(m, size)) {
      IntMatrix sub(size, k);
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = f(support[i], j);
      SNFResult snf = smith_normal_form(sub);
      if (snf.rank < k) continue;
      bool unimodular = true;
      for (std::size_t i = 0; i < k; ++i) unimodular = unimodular && snf.D(i, i) == 1;
      if (!unimodular) continue;
      IntMatrix local = snf.V * snf.U.row_block(0, k);  // k x size
      if (k == 1 && size == 2 && sub(1, 0) != 0) {
        // x*f0 + y*f1 == 1 has solutions (x + t*f1, y - t*f0).
        const Integer f0 = sub(0, 0), f1 = sub(1, 0);
        const Integer x0 = local(0, 0), y0 = local(0, 1);
        const Integer t0 = floor_div(-x0, f1);
        Integer best_x = x0 + t0 * f1, best_y = y0 - t0 * f0;
        for (Integer t = t0 - 1; t <= t0 + 1; ++t) {
          Integer x = x0 + t * f1, y = y0 - t * f0;
          if (abs(x) < abs(best_x) || (abs(x) == abs(best_x) && abs(y) < abs(best_y))) {
            best_x = x;
            best_y = y;
          }
        }
        local(0, 0) = best_x;
        local(0, 1) = best_y;
      }
      IntMatrix s(k, m);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < size; ++j) s(i, support[j]) = local(i, j);
      return s;
    }
  }
  fail(ErrorKind::TorsionCokernel, "no integral section exists");
}

/// Cokernel presentation of an injective weight matrix F with saturated image.
/// P is the lower block of the Smith transform U (so P is surjective and P*F == 0);
/// s is `normalized_section(F)` unless an explicit section is supplied.
inline ExactSequence cokernel_presentation(const IntMatrix& f,
                                           const std::optional<RatMatrix>& section = std::nullopt) {
  const std::size_t m = f.rows(), k = f.cols();
  SNFResult snf = smith_normal_form(f);
  detail::check_embedding(f, snf);
  ExactSequence seq{f, snf.U.row_block(k, m - k), RatMatrix()};
  if (section) {
    if (section->rows() != k || section->cols() != m)
      fail(ErrorKind::RankMismatch, "section must be k x m");
    if (!(*section * to_rational(f)).is_identity())
      fail(ErrorKind::InvalidArgument, "supplied section is not a left inverse of F");
    seq.s = *section;
  } else {
    seq.s = to_rational(normalized_section(f));
  }
  return seq;
}

}  // namespace ppdiv
