#pragma once

// Koras-Russell threefolds as executable fixtures.
//
// Each family is assembled the same way: two building blocks
// X_{2,x1,p} (weights (p,p,-p,1), downgraded) are combined with a Bezout pair
// a*alpha3 + b*alpha2 == 1 into the pp-divisor of a cyclic cover V, which is
// then descended along explicit covers of Y. Labels:
//   D_a3, D_a2   strict transforms named after the exponent they come from
//   E            exceptional divisor of the blow-up
//   D_v          strict transform of {v = 0}, carried so that v is a function

#include <string>
#include <vector>

#include "ppdiv/downgrade.hpp"
#include "ppdiv/quotients.hpp"
#include "ppdiv/session.hpp"

namespace ppdiv::kr {

struct BezoutPair {
  Integer a, b;
};

/// a*alpha3 + b*alpha2 == 1 with divisor | a, minimal |a| then minimal |b|.
/// Searches |a| <= divisor * alpha2 * alpha3, which contains a solution
/// whenever gcd(alpha2, alpha3) == gcd(alpha2, divisor) == 1.
inline BezoutPair bezout_pair(const Integer& alpha3, const Integer& alpha2, const Integer& divisor = 1) {
  const Integer window = divisor * alpha2 * alpha3;
  for (Integer m = 0; m <= window; ++m)
    for (Integer a : {m, Integer(-m)}) {
      if (a % divisor != 0) continue;
      Integer rest = 1 - a * alpha3;
      if (rest % alpha2 != 0) continue;
      return {a, rest / alpha2};
    }
  fail(ErrorKind::NoBezoutWithDivisibility,
       "no (a,b) with a*" + alpha3.str() + " + b*" + alpha2.str() + " == 1 and " + divisor.str() +
           " | a in the window |a| <= " + window.str());
}

/// Weights (p,p,-p,1) on (x1, x2, y, t).
inline WeightData building_block_weights(const Integer& p, const PrimeLabel& point_label, const PrimeLabel& e_label) {
  WeightData w;
  w.F = IntMatrix{{p}, {p}, {Integer(-p)}, {1}};
  w.ray_labels = {{3, e_label}, {4, point_label}};
  return w;
}

/// {1/p}D + [0,1/p]E from the downgrade of X_{2,x1,p}.
inline PPDivisor building_block(const Integer& p, const PrimeLabel& point_label, const ModelRef& model,
                                const PrimeLabel& e_label = PrimeLabel{"E"}) {
  WeightData w = building_block_weights(p, point_label, e_label);
  return assemble(downgrade(w), w.ray_labels, model);
}

inline std::string point_term(const Rational& q, const std::string& label) { return "{" + format(q) + "}" + label; }

inline std::string interval_term(const Rational& hi, const std::string& label) {
  return "[0," + format(hi) + "]" + label;
}

inline ModelRef make_model(const std::string& name, ModelKind kind, std::vector<PrimeInfo> primes,
                           std::vector<KnownFunction> functions) {
  return std::make_shared<const YModel>(YModel::make(name, kind, std::move(primes), std::move(functions)));
}

inline PrimeInfo prime(const std::string& label, const Rational& weight) { return {PrimeLabel{label}, weight, false}; }
inline PrimeInfo exceptional(const std::string& label) { return {PrimeLabel{label}, 0, true}; }

// ---------------------------------------------------------------------------
// Russell cubic {x + x^2 y + z^2 + t^3 = 0}

/// Blow-up of A^2_(u,v) with D3, D2 the strict transforms of {g = 0} and
/// {u = 0}; g = u + v + v^2.
inline ModelRef russell_model() {
  return make_model("russell", ModelKind::BlowupA2,
                    {prime("D3", 1), prime("D2", 1), exceptional("E"), prime("Dv", 1)},
                    {{"u", parse_qdivisor("D2 + E")}, {"g", parse_qdivisor("D3 + E")}, {"v", parse_qdivisor("Dv + E")}});
}

struct RussellCubic {
  ModelRef model;
  PPDivisor expected;      // reference value, parsed from text
  PPDivisor d2, d3;        // X/mu_2 and X/mu_3 from their building blocks
  PPDivisor reconstructed; // d3 minus d2
  PipelineResult mu2, mu3; // torus-subgroup quotients of the reconstruction
  Equivalence eq2, eq3;    // mu_l result against d_l
};

inline RussellCubic russell_cubic(ModelRef model = russell_model()) {
  RussellCubic r;
  r.model = model;
  r.expected = parse_ppdivisor("{1/2}D3 + {-1/3}D2 + [0,1/6]E", model);
  r.d2 = building_block(3, PrimeLabel{"D2"}, model);
  r.d3 = building_block(2, PrimeLabel{"D3"}, model);
  BezoutPair ab = bezout_pair(3, 2);  // 3a + 2b == 1 -> (1, -1)
  r.reconstructed = combine({{ab.a, r.d3}, {ab.b, r.d2}});
  r.mu2 = run_pipeline(r.reconstructed, {TorusSubgroupStage{2, {1}}});
  r.mu3 = run_pipeline(r.reconstructed, {TorusSubgroupStage{3, {1}}});
  r.eq2 = linearly_equivalent(r.mu2.result, r.d2);
  r.eq3 = linearly_equivalent(r.mu3.result, r.d3);
  return r;
}

/// {a/2}D3 + {b/3}D2 + [0,1/6]E for 3a + 2b == 1.
inline PPDivisor russell_alternate(const Integer& a, const Integer& b, const ModelRef& model) {
  if (3 * a + 2 * b != 1) fail(ErrorKind::InvalidParameters, "need 3a + 2b == 1");
  return parse_ppdivisor(point_term(Rational(a, 2), "D3") + " + " + point_term(Rational(b, 3), "D2") + " + " +
                             interval_term(Rational(1, 6), "E"),
                         model);
}

// ---------------------------------------------------------------------------
// First kind {x + x^d y + z^alpha2 + t^alpha3 = 0}

struct FirstKindParams {
  Integer d, alpha2, alpha3;
};

inline void validate(const FirstKindParams& p) {
  if (p.d < 2) fail(ErrorKind::InvalidParameters, "first kind needs d >= 2");
  if (p.alpha2 < 2) fail(ErrorKind::InvalidParameters, "first kind needs alpha2 >= 2");
  if (p.alpha3 <= p.alpha2) fail(ErrorKind::InvalidParameters, "first kind needs alpha3 > alpha2");
  if (gcd(p.alpha2, p.alpha3) != 1) fail(ErrorKind::InvalidParameters, "alpha2 and alpha3 must be coprime");
}

/// Y(V): blow-up of A^2_(u,v); D_a2 = {u = 0}, D_a3 = {u + v + v^d = 0}.
inline ModelRef first_kind_cover_model() {
  return make_model("first_up", ModelKind::BlowupA2,
                    {prime("D_a3", 1), prime("D_a2", 1), exceptional("E"), prime("D_v", 1)},
                    {{"u", parse_qdivisor("D_a2 + E")},
                     {"h", parse_qdivisor("D_a3 + E")},
                     {"v", parse_qdivisor("D_v + E")}});
}

/// Y(V)//mu_{d-1}, mu_{d-1} acting by scalars: E' is fixed pointwise, so it
/// pulls back to (d-1)E, and each weight is 1/(d-1).
inline ModelRef first_kind_quotient_model(const Integer& d) {
  const Rational w(1, d - 1);
  const std::string n = Integer(d - 1).str();
  return make_model("first_down_" + d.str(), ModelKind::QuotBlowup,
                    {prime("D'_a3", w), prime("D'_a2", w), exceptional("E'"), prime("D'_v", w)},
                    {{"u_pow", parse_qdivisor(n + "*D'_a2 + E'")},
                     {"h_pow", parse_qdivisor(n + "*D'_a3 + E'")},
                     {"u_by_h", parse_qdivisor("D'_a2 - D'_a3")},
                     {"u_by_v", parse_qdivisor("D'_a2 - D'_v")}});
}

inline CoverData first_kind_cover(const Integer& d, const ModelRef& up, const ModelRef& down) {
  return CoverData::make(up, down,
                         {{PrimeLabel{"D'_a3"}, {{PrimeLabel{"D_a3"}, 1}}},
                          {PrimeLabel{"D'_a2"}, {{PrimeLabel{"D_a2"}, 1}}},
                          {PrimeLabel{"E'"}, {{PrimeLabel{"E"}, d - 1}}},
                          {PrimeLabel{"D'_v"}, {{PrimeLabel{"D_v"}, 1}}}},
                         d - 1);
}

struct FirstKind {
  FirstKindParams params;
  BezoutPair ab;
  ModelRef up, down;
  CoverData cover;
  PPDivisor block_a3, block_a2;  // V/mu_alpha3 and V/mu_alpha2
  PPDivisor cover_divisor;       // pp-divisor of V on Y(V)
  PipelineResult pipeline;       // descent along the mu_{d-1} cover
  PPDivisor expected_cover, expected_descended;
  bool round_trip = false;       // pullback of the descended divisor == cover_divisor
};

inline FirstKind first_kind(const FirstKindParams& p) {
  validate(p);
  FirstKind r;
  r.params = p;
  r.ab = bezout_pair(p.alpha3, p.alpha2);
  r.up = first_kind_cover_model();
  r.down = first_kind_quotient_model(p.d);
  r.cover = first_kind_cover(p.d, r.up, r.down);
  r.block_a3 = building_block(p.alpha2, PrimeLabel{"D_a3"}, r.up);
  r.block_a2 = building_block(p.alpha3, PrimeLabel{"D_a2"}, r.up);
  r.cover_divisor = combine({{r.ab.a, r.block_a3}, {r.ab.b, r.block_a2}});
  r.pipeline = run_pipeline(r.cover_divisor, {EffectiveStage{r.cover}});
  const Rational pa(r.ab.a, p.alpha2), pb(r.ab.b, p.alpha3);
  r.expected_cover = parse_ppdivisor(point_term(pa, "D_a3") + " + " + point_term(pb, "D_a2") + " + " +
                                         interval_term(Rational(1, p.alpha2 * p.alpha3), "E"),
                                     r.up);
  r.expected_descended =
      parse_ppdivisor(point_term(pa, "D'_a3") + " + " + point_term(pb, "D'_a2") + " + " +
                          interval_term(Rational(Integer(1), (p.d - 1) * p.alpha2 * p.alpha3), "E'"),
                      r.down);
  r.round_trip = pullback(r.cover, r.pipeline.result) == r.cover_divisor;
  return r;
}

// ---------------------------------------------------------------------------
// Second kind {x + y(x^d + z^alpha2)^l + t^alpha3 = 0}

struct SecondKindParams {
  Integer d, l, alpha2, alpha3;
};

inline void validate(const SecondKindParams& p) {
  if (p.d < 2) fail(ErrorKind::InvalidParameters, "second kind needs d >= 2");
  if (p.l < 1) fail(ErrorKind::InvalidParameters, "second kind needs l >= 1");
  if (p.alpha2 < 2 || p.alpha3 < 2) fail(ErrorKind::InvalidParameters, "second kind needs alpha2, alpha3 >= 2");
  if (gcd(p.alpha2, p.d) != 1) fail(ErrorKind::InvalidParameters, "alpha2 and d must be coprime");
  if (gcd(p.alpha2, p.alpha3) != 1) fail(ErrorKind::InvalidParameters, "alpha2 and alpha3 must be coprime");
}

/// Y(V): blow-up of A^2_(u,v); D_a3 = {u = 0}, D_a2 = {v + (v^d + u^d)^l = 0}.
inline ModelRef second_kind_cover_model() {
  return make_model("second_up", ModelKind::BlowupA2,
                    {prime("D_a3", 1), prime("D_a2", 1), exceptional("E"), prime("D_v", 1)},
                    {{"u", parse_qdivisor("D_a3 + E")},
                     {"f", parse_qdivisor("D_a2 + E")},
                     {"v", parse_qdivisor("D_v + E")}});
}

/// Y(V)//mu_d with mu_d acting on u only: blow-up of (u', v^d), u' = u^d.
/// {u' = 0} pulls back to d*D_a3 and u' vanishes to order d along E_d.
inline ModelRef second_kind_middle_model(const Integer& d) {
  return make_model("second_mid_" + d.str(), ModelKind::QuotBlowup,
                    {prime("Dd_a3", Rational(d)), prime("Dd_a2", 1), exceptional("Ed"), prime("Dd_v", 1)},
                    {{"u1", parse_qdivisor("Dd_a3 + " + d.str() + "*Ed")},
                     {"f1", parse_qdivisor("Dd_a2 + Ed")},
                     {"v1", parse_qdivisor("Dd_v + Ed")}});
}

/// Quotient by mu_{dl-1} acting with weights (d, 1) on (u', v): Ed is fixed
/// pointwise and pulls back with index dl-1.
inline ModelRef second_kind_final_model(const Integer& d, const Integer& l) {
  const Integer n = d * l - 1;
  return make_model("second_down_" + d.str() + "_" + l.str(), ModelKind::QuotBlowup,
                    {prime("Dq_a3", Rational(d, n)), prime("Dq_a2", Rational(1, n)), exceptional("Eq"),
                     prime("Dq_v", Rational(1, n))},
                    {{"f_pow", parse_qdivisor(n.str() + "*Dq_a2 + Eq")},
                     {"u_by_f", parse_qdivisor("Dq_a3 - " + d.str() + "*Dq_a2")},
                     {"f_by_v", parse_qdivisor("Dq_a2 - Dq_v")}});
}

inline CoverData second_kind_mu_d(const Integer& d, const ModelRef& up, const ModelRef& mid) {
  return CoverData::make(up, mid,
                         {{PrimeLabel{"Dd_a3"}, {{PrimeLabel{"D_a3"}, d}}},
                          {PrimeLabel{"Dd_a2"}, {{PrimeLabel{"D_a2"}, 1}}},
                          {PrimeLabel{"Ed"}, {{PrimeLabel{"E"}, 1}}},
                          {PrimeLabel{"Dd_v"}, {{PrimeLabel{"D_v"}, 1}}}},
                         d);
}

inline CoverData second_kind_mu_dl(const Integer& d, const Integer& l, const ModelRef& mid, const ModelRef& down) {
  const Integer n = d * l - 1;
  return CoverData::make(mid, down,
                         {{PrimeLabel{"Dq_a3"}, {{PrimeLabel{"Dd_a3"}, 1}}},
                          {PrimeLabel{"Dq_a2"}, {{PrimeLabel{"Dd_a2"}, 1}}},
                          {PrimeLabel{"Eq"}, {{PrimeLabel{"Ed"}, n}}},
                          {PrimeLabel{"Dq_v"}, {{PrimeLabel{"Dd_v"}, 1}}}},
                         n);
}

struct SecondKind {
  SecondKindParams params;
  BezoutPair ab;           // d | a
  Integer a_prime, b_prime;
  ModelRef up, mid, down;
  CoverData mu_d, mu_dl;
  PPDivisor cover_divisor; // on Y(V)
  PipelineResult pipeline; // mu_d then mu_{dl-1}
  PPDivisor expected_cover, expected_middle, expected_final;
  bool round_trip_middle = false, round_trip_final = false;

  const PPDivisor& middle() const { return pipeline.stages.at(0).output; }
  const PPDivisor& final_divisor() const { return pipeline.result; }
};

inline SecondKind second_kind(const SecondKindParams& p) {
  validate(p);
  SecondKind r;
  r.params = p;
  r.ab = bezout_pair(p.alpha3, p.alpha2, p.d);
  r.a_prime = r.ab.a / p.d;
  r.b_prime = r.ab.b;
  r.up = second_kind_cover_model();
  r.mid = second_kind_middle_model(p.d);
  r.down = second_kind_final_model(p.d, p.l);
  r.mu_d = second_kind_mu_d(p.d, r.up, r.mid);
  r.mu_dl = second_kind_mu_dl(p.d, p.l, r.mid, r.down);
  PPDivisor block_a3 = building_block(p.alpha2, PrimeLabel{"D_a3"}, r.up);
  PPDivisor block_a2 = building_block(p.alpha3, PrimeLabel{"D_a2"}, r.up);
  r.cover_divisor = combine({{r.ab.a, block_a3}, {r.ab.b, block_a2}});
  r.pipeline = run_pipeline(r.cover_divisor, {EffectiveStage{r.mu_d}, EffectiveStage{r.mu_dl}});
  const Integer a23 = p.alpha2 * p.alpha3;
  r.expected_cover = parse_ppdivisor(point_term(Rational(r.ab.a, p.alpha2), "D_a3") + " + " +
                                         point_term(Rational(r.ab.b, p.alpha3), "D_a2") + " + " +
                                         interval_term(Rational(Integer(1), a23), "E"),
                                     r.up);
  r.expected_middle = parse_ppdivisor(point_term(Rational(r.a_prime, p.alpha2), "Dd_a3") + " + " +
                                          point_term(Rational(r.b_prime, p.alpha3), "Dd_a2") + " + " +
                                          interval_term(Rational(Integer(1), a23), "Ed"),
                                      r.mid);
  r.expected_final = parse_ppdivisor(point_term(Rational(r.a_prime, p.alpha2), "Dq_a3") + " + " +
                                         point_term(Rational(r.b_prime, p.alpha3), "Dq_a2") + " + " +
                                         interval_term(Rational(Integer(1), (p.d * p.l - 1) * a23), "Eq"),
                                     r.down);
  r.round_trip_middle = pullback(r.mu_d, r.middle()) == r.cover_divisor;
  r.round_trip_final = pullback(r.mu_dl, r.final_divisor()) == r.middle();
  return r;
}

}  // namespace ppdiv::kr
