#pragma once

// Downgrade of a linear (C*)^k action on A^m with weight matrix F:
//   sigma = s(Q_{>=0}^m  ∩ F(Q^k)),   Pi_i = s(Q_{>=0}^m ∩ P^{-1}(v_i)).
// Since s*F == id, sigma = {l : F l >= 0}. For Pi_i pick the particular
// solution x0 = e_i / c_i of P x = v_i (c_i the content of column i); every
// other solution is x0 + F l, so Pi_i = s*x0 + {l : F l >= -x0}.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ppdiv/ppdivisor.hpp"
#include "ppdiv/smith.hpp"

namespace ppdiv {

struct WeightData {
  IntMatrix F;                                   // m x k
  std::map<std::size_t, PrimeLabel> ray_labels;  // ambient coordinate (1-based) -> prime
  std::optional<RatMatrix> section;              // overrides the normalized section

  std::size_t k() const { return F.cols(); }
  std::size_t m() const { return F.rows(); }
};

struct DowngradeRay {
  IntVector v;                       // primitive, in Z^(m-k)
  std::vector<std::size_t> columns;  // ambient coordinates (1-based) mapping onto v
  Polyhedron polytope;               // Pi, tail sigma
};

struct DowngradeResult {
  ExactSequence seq;
  Cone sigma;
  std::vector<DowngradeRay> rays;  // in column order of P, proportional columns merged
};

inline Polyhedron ray_polytope(const ExactSequence& seq, const Cone& sigma, std::size_t column) {
  const std::size_t m = seq.F.rows(), k = seq.F.cols();
  Integer c = content(seq.P.column_vector(column));
  RatVector x0(m, Rational(0));
  x0[column] = Rational(1, c);
  std::vector<RatVector> normals;
  std::vector<Rational> offsets;
  for (std::size_t i = 0; i < m; ++i) {
    normals.push_back(to_rational(seq.F.row_vector(i)));
    offsets.push_back(-x0[i]);
  }
  Polyhedron lambda = Polyhedron::from_inequalities(k, normals, offsets);
  return lambda.translate(seq.s.apply(x0)).with_tail(sigma);
}

inline DowngradeResult downgrade(const WeightData& w) {
  DowngradeResult r;
  r.seq = cokernel_presentation(w.F, w.section);
  const auto& seq = r.seq;
  if (!(seq.P * seq.F == IntMatrix(seq.P.rows(), seq.F.cols())))
    fail(ErrorKind::InvalidArgument, "internal: P*F != 0");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < w.m(); ++i) rows.push_back(w.F.row_vector(i));
  r.sigma = Cone::from_inequalities(w.k(), rows);
  if (seq.P.rows() == 0) return r;
  for (std::size_t j = 0; j < w.m(); ++j) {
    IntVector col = seq.P.column_vector(j);
    if (ppdiv::is_zero(col)) continue;  // coordinate with no ray in the quotient fan
    IntVector v = primitive_vector(col);
    auto same = std::find_if(r.rays.begin(), r.rays.end(), [&](const DowngradeRay& x) { return x.v == v; });
    if (same != r.rays.end()) {
      same->columns.push_back(j + 1);
      continue;
    }
    r.rays.push_back(DowngradeRay{v, {j + 1}, ray_polytope(seq, r.sigma, j)});
  }
  return r;
}

/// PPDivisor with the term (Pi_i, label of v_i) for every nontrivial Pi_i.
inline PPDivisor assemble(const DowngradeResult& r, const std::map<std::size_t, PrimeLabel>& labels,
                          ModelRef model) {
  std::vector<PPDivisor::Term> terms;
  for (const auto& ray : r.rays) {
    std::optional<PrimeLabel> label;
    for (auto c : ray.columns) {
      auto it = labels.find(c);
      if (it == labels.end()) continue;
      if (label && *label != it->second)
        fail(ErrorKind::InvalidArgument, "ray " + format_tuple(ray.v) + " carries two labels");
      label = it->second;
    }
    if (ray.polytope.is_trivial()) continue;
    if (!label)
      fail(ErrorKind::MissingLabel, "ray " + format_tuple(ray.v) + " (coordinate " +
                                        std::to_string(ray.columns.front()) + ") has polytope " +
                                        format_coefficient(ray.polytope) + " but no label");
    terms.emplace_back(*label, ray.polytope);
  }
  return PPDivisor::make(std::move(model), r.sigma, terms);
}

/// C*-surface data (D+, D-) as the rank-one pp-divisor sum [a_i, b_i] D_i with
/// a_i the coefficient in D+ and b_i minus the coefficient in D-.
inline PPDivisor from_pm_divisors(const QDivisor& plus, const QDivisor& minus, ModelRef model) {
  model->check_labels(plus);
  model->check_labels(minus);
  std::set<PrimeLabel> primes;
  for (const auto& [p, c] : plus.terms()) primes.insert(p);
  for (const auto& [p, c] : minus.terms()) primes.insert(p);
  std::vector<PPDivisor::Term> terms;
  for (const auto& p : primes) {
    Rational a = plus.coefficient(p), b = -minus.coefficient(p);
    if (b < a)
      fail(ErrorKind::EmptyInterval, "D+ + D- is positive along " + p.name + ": [" + format(a) + "," +
                                         format(b) + "] is empty");
    terms.emplace_back(p, Polyhedron::interval(a, b));
  }
  return PPDivisor::make(std::move(model), Cone::zero(1), terms);
}

}  // namespace ppdiv
