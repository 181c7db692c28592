#pragma once

// Quotients of pp-divisor presentations by finite abelian groups, in the two
// basic cases: a subgroup of the torus (the lattice shrinks, Y is unchanged)
// and an action that is effective on Y (the polyhedra descend along a cover).

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ppdiv/ppdivisor.hpp"
#include "ppdiv/smith.hpp"

namespace ppdiv {

/// Basis (as columns) of M' = {u in Z^k : <u, weight> == 0 mod order}.
inline IntMatrix sublattice_basis(const Integer& order, const IntVector& weight) {
  if (order < 1) fail(ErrorKind::InvalidArgument, "group order must be positive");
  const std::size_t k = weight.size();
  IntMatrix row(1, k + 1);
  for (std::size_t i = 0; i < k; ++i) row(0, i) = weight[i];
  row(0, k) = -order;
  IntMatrix kernel = integer_kernel(row);  // (k+1) x k
  IntMatrix proj = kernel.row_block(0, k);
  return hermite_normal_form(proj.transpose()).transpose();
}

/// Lattice map F: N -> N' dual to the inclusion M' -> M.
inline IntMatrix torus_subgroup_map(const Integer& order, const IntVector& weight) {
  return sublattice_basis(order, weight).transpose();
}

inline PPDivisor quotient_torus_subgroup(const PPDivisor& d, const Integer& order, const IntVector& weight) {
  if (weight.size() != d.rank()) fail(ErrorKind::RankMismatch, "character weight has the wrong rank");
  IntMatrix f = torus_subgroup_map(order, weight);
  return pushforward(f, d, d.tail().image(f));
}

/// Descends D_G along the cover: every fiber must carry one polyhedron Delta
/// and one ramification index r; the target coefficient is Delta / r.
inline PPDivisor quotient_effective(const PPDivisor& dg, const CoverData& c) {
  if (!same_model(c.source(), dg.model()))
    fail(ErrorKind::ChainMismatch, "descend: pp-divisor lives on '" + dg.model()->name() + "', cover starts at '" +
                                       c.source()->name() + "'");
  std::vector<PPDivisor::Term> terms;
  for (const auto& [t, fiber] : c.prime_map()) {
    if (fiber.empty()) continue;
    const Polyhedron delta = dg.coefficient(fiber.front().source);
    const Integer r = fiber.front().ramification;
    for (const auto& e : fiber) {
      if (!(dg.coefficient(e.source) == delta))
        fail(ErrorKind::NotInvariant, "fiber over " + t.name + " carries " + format_coefficient(delta) + " on " +
                                          fiber.front().source.name + " but " +
                                          format_coefficient(dg.coefficient(e.source)) + " on " + e.source.name);
      if (e.ramification != r)
        fail(ErrorKind::MixedRamification, "fiber over " + t.name + " mixes ramification indices");
    }
    terms.emplace_back(t, delta.scale(Rational(1, r)));
  }
  return PPDivisor::make(c.target(), dg.tail(), terms);
}

/// sum c_j D_j, with negative coefficients realized as Minkowski differences
/// after all positive parts are summed. Throws EmptyPolyhedron when some
/// difference does not exist.
inline PPDivisor combine(const std::vector<std::pair<Integer, PPDivisor>>& parts) {
  if (parts.empty()) fail(ErrorKind::InvalidArgument, "combine: no summands");
  const PPDivisor& first = parts.front().second;
  for (const auto& [c, d] : parts) require_same_frame(first, d, "combine");
  std::set<PrimeLabel> primes;
  for (const auto& [c, d] : parts)
    for (const auto& [p, poly] : d.terms()) primes.insert(p);
  std::vector<PPDivisor::Term> terms;
  for (const auto& p : primes) {
    Polyhedron acc = Polyhedron::trivial(first.tail());
    for (const auto& [c, d] : parts)
      if (c > 0) acc = minkowski_sum(acc, d.coefficient(p).scale(Rational(c)));
    for (const auto& [c, d] : parts)
      if (c < 0) acc = minkowski_difference(acc, d.coefficient(p).scale(Rational(-c)));
    terms.emplace_back(p, acc);
  }
  return PPDivisor::make(first.model(), first.tail(), terms);
}

struct TorusSubgroupStage {
  Integer order;
  IntVector weight;
};

struct EffectiveStage {
  CoverData cover;
};

using QuotientStage = std::variant<TorusSubgroupStage, EffectiveStage>;

struct StageRecord {
  std::string kind;  // "torus-subgroup" or "effective"
  std::string description;
  PPDivisor input;
  PPDivisor output;
  PPMap map;  // (cover, F, 1) from input to output
  bool valid = false;
};

struct PipelineResult {
  PPDivisor result;
  std::vector<StageRecord> stages;

  bool all_valid() const {
    return std::all_of(stages.begin(), stages.end(), [](const StageRecord& s) { return s.valid; });
  }
};

inline StageRecord apply_stage(const PPDivisor& d, const QuotientStage& stage) {
  StageRecord rec;
  rec.input = d;
  if (const auto* t = std::get_if<TorusSubgroupStage>(&stage)) {
    rec.kind = "torus-subgroup";
    rec.description = "mu_" + t->order.str() + " acting through weight " + format_tuple(t->weight);
    rec.output = quotient_torus_subgroup(d, t->order, t->weight);
    IntMatrix f = torus_subgroup_map(t->order, t->weight);
    rec.map = PPMap{std::nullopt, f, Plurifunction::one(f.rows())};
  } else {
    const auto& e = std::get<EffectiveStage>(stage);
    rec.kind = "effective";
    rec.description = "quotient '" + e.cover.source()->name() + "' -> '" + e.cover.target()->name() +
                      "' of order " + e.cover.group_order().str();
    rec.output = quotient_effective(d, e.cover);
    rec.map = PPMap{e.cover, IntMatrix::identity(d.rank()), Plurifunction::one(d.rank())};
  }
  rec.valid = is_valid_map(rec.map, rec.input, rec.output);
  return rec;
}

inline PipelineResult run_pipeline(const PPDivisor& d, const std::vector<QuotientStage>& stages) {
  PipelineResult r{d, {}};
  for (const auto& stage : stages) {
    r.stages.push_back(apply_stage(r.result, stage));
    r.result = r.stages.back().output;
  }
  return r;
}

/// The map triple realizing the whole pipeline, composed stage by stage.
inline PPMap pipeline_map(const PipelineResult& r) {
  PPMap m = PPMap::identity(r.stages.empty() ? r.result.rank() : r.stages.front().input.rank());
  for (const auto& s : r.stages) m = compose(s.map, m);
  return m;
}

}  // namespace ppdiv
