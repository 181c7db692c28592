#include <gtest/gtest.h>

#include "models.hpp"
#include "ppdiv/session.hpp"

using namespace ppdiv;

namespace {

PPDivisor cubic(const ModelRef& m) { return parse_ppdivisor("{1/2}D3 + {-1/3}D2 + [0,1/6]E", m); }

Polyhedron pt(const Rational& q) { return Polyhedron::point(RatVector{q}); }

}  // namespace

TEST(PPDivisor, MakeMergesAndDropsTrivial) {
  auto m = kr::russell_model();
  auto d = PPDivisor::make(m, Cone::zero(1),
                           {{PrimeLabel{"E"}, Polyhedron::interval(0, Rational(1, 6))},
                            {PrimeLabel{"E"}, pt(Rational(1, 3))},
                            {PrimeLabel{"Dv"}, pt(0)}});
  EXPECT_EQ(d.terms().size(), 1u);
  EXPECT_EQ(d.coefficient(PrimeLabel{"E"}), Polyhedron::interval(Rational(1, 3), Rational(1, 2)));
  EXPECT_EQ(d.coefficient(PrimeLabel{"D3"}), Polyhedron::trivial(Cone::zero(1)));
  EXPECT_EQ(format(PPDivisor::zero(m, Cone::zero(1))), "0");
}

TEST(PPDivisor, MakeErrors) {
  auto m = kr::russell_model();
  auto kind = [](auto f) {
    try {
      f();
    } catch (const DomainError& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(kind([&] { PPDivisor::make(m, Cone::whole_space(1), {}); }), ErrorKind::NotPointed);
  EXPECT_EQ(kind([&] { PPDivisor::make(m, Cone::zero(1), {{PrimeLabel{"Q"}, pt(1)}}); }), ErrorKind::UnknownLabel);
  EXPECT_EQ(kind([&] { PPDivisor::make(m, Cone::orthant(1), {{PrimeLabel{"E"}, pt(1)}}); }), ErrorKind::TailMismatch);
  EXPECT_EQ(kind([&] {
              PPDivisor::make(m, Cone::zero(1), {{PrimeLabel{"E"}, Polyhedron::point(RatVector{1, 1})}});
            }),
            ErrorKind::RankMismatch);
}

TEST(PPDivisor, FormatUsesModelOrder) {
  auto m = kr::russell_model();
  EXPECT_EQ(format(cubic(m)), "{1/2}D3 + {-1/3}D2 + [0,1/6]E");
}

TEST(PPDivisor, EvaluateCubic) {
  auto d = cubic(kr::russell_model());
  const YModel* m = d.model().get();
  EXPECT_EQ(format(evaluate(d, RatVector{-6}), m), "-3*D3 + 2*D2 - E");
  EXPECT_EQ(format(evaluate(d, RatVector{6}), m), "3*D3 - 2*D2");
  EXPECT_TRUE(evaluate(d, RatVector{0}).is_zero());
  EXPECT_THROW(evaluate(d, RatVector{1, 2}), DomainError);
}

TEST(PPDivisor, EvaluateOutsideWeightCone) {
  auto m = kr::russell_model();
  auto d = PPDivisor::make(m, Cone::orthant(1), {{PrimeLabel{"E"}, Polyhedron::point(RatVector{1}, Cone::orthant(1))}});
  EXPECT_EQ(evaluate(d, RatVector{2}), (QDivisor{{"E", 2}}));
  try {
    evaluate(d, RatVector{-1});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutsideWeightCone);
  }
}

TEST(PPDivisor, PushforwardByTwo) {
  auto d = cubic(kr::russell_model());
  auto p = pushforward(IntMatrix{{2}}, d, Cone::zero(1));
  EXPECT_EQ(format(p), "{1}D3 + {-2/3}D2 + [0,1/3]E");
  EXPECT_THROW(pushforward(IntMatrix{{2, 1}}, d, Cone::zero(1)), DomainError);
  auto tailed = PPDivisor::make(d.model(), Cone::orthant(1), {});
  EXPECT_THROW(pushforward(IntMatrix{{-1}}, tailed, Cone::orthant(1)), DomainError);
}

TEST(PPDivisor, PullbackAlongCover) {
  auto up = kr::first_kind_cover_model();
  auto down = kr::first_kind_quotient_model(3);
  auto c = kr::first_kind_cover(3, up, down);
  auto d = parse_ppdivisor("{1/2}D'_a3 + [0,1/12]E'", down);
  EXPECT_EQ(format(pullback(c, d)), "{1/2}D_a3 + [0,1/6]E");
  EXPECT_THROW(pullback(c, cubic(kr::russell_model())), DomainError);
}

TEST(PPDivisor, PullbackEmptyFiber) {
  auto up = testing_models::plane_blowup();
  auto down = kr::make_model("down", ModelKind::BlowupA2, {kr::prime("D", 1), kr::prime("F", 1), kr::exceptional("E")},
                             {});
  auto c = CoverData::make(up, down, {{PrimeLabel{"D"}, {{PrimeLabel{"D"}, 1}}}, {PrimeLabel{"E"}, {{PrimeLabel{"E"}, 1}}}},
                           1);
  auto d = parse_ppdivisor("{1}F", down);
  try {
    pullback(c, d);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyFiber);
  }
}

TEST(Plurifunction, DivisorsProductsAndFormat) {
  auto m = kr::russell_model();
  auto f = Plurifunction::from_model(*m, {{{"u", 1}, {"g", -1}}});
  EXPECT_EQ(f.divisor(0), (QDivisor{{"D2", 1}, {"D3", -1}}));
  EXPECT_EQ(format(f), "u * g^-1");
  auto g = Plurifunction::from_model(*m, {{{"g", 1}}});
  EXPECT_EQ(format(f * g), "u");
  EXPECT_EQ(format(Plurifunction::one(2)), "(1, 1)");
  EXPECT_EQ(f.pushforward(IntMatrix{{3}, {-1}}).divisor(1), (QDivisor{{"D2", -1}, {"D3", 1}}));
  EXPECT_THROW(Plurifunction::from_divisors({}, {{{"w", 1}}}), DomainError);
}

TEST(Plurifunction, PullbackRenamesButKeepsDivisors) {
  auto up = kr::first_kind_cover_model();
  auto down = kr::first_kind_quotient_model(3);
  auto c = kr::first_kind_cover(3, up, down);
  auto f = Plurifunction::from_model(*down, {{{"u_pow", 1}}});
  auto pulled = f.pullback(c);
  EXPECT_EQ(format(pulled), "phi*(u_pow)");
  EXPECT_EQ(pulled.divisor(0), (QDivisor{{"D_a2", 2}, {"E", 2}}));
  EXPECT_EQ(f.pullback(CoverData::identity(down)), f);
}

TEST(Equivalence, BlowupExample) {
  auto m = testing_models::plane_blowup();
  auto d1 = parse_ppdivisor("{1}D + [0,1]E", m);
  auto d2 = parse_ppdivisor("[-1,0]E", m);
  Equivalence e = linearly_equivalent(d1, d2);
  ASSERT_TRUE(e.equivalent);
  ASSERT_TRUE(e.witness.has_value());
  EXPECT_EQ(translate_by_div(d1, *e.witness), d2);
  EXPECT_EQ(format(*e.witness), "u^-1");
  EXPECT_FALSE(e.principality_supplied);
}

TEST(Equivalence, Rejections) {
  auto m = kr::russell_model();
  auto d = cubic(m);
  EXPECT_FALSE(linearly_equivalent(d, parse_ppdivisor("{1/2}D3 + {-1/3}D2 + [0,1/3]E", m)).equivalent);
  Equivalence frac = linearly_equivalent(d, parse_ppdivisor("{1}D3 + {-1/3}D2 + [0,1/6]E", m));
  EXPECT_FALSE(frac.equivalent);
  EXPECT_NE(frac.reason.find("not integral"), std::string::npos);
  Equivalence np = linearly_equivalent(d, parse_ppdivisor("{3/2}D3 + {-1/3}D2 + [0,1/6]E", m));
  EXPECT_FALSE(np.equivalent);
  EXPECT_NE(np.reason.find("not principal"), std::string::npos);
  // A second, equal instance of the model is the same model.
  EXPECT_TRUE(linearly_equivalent(d, cubic(kr::russell_model())).equivalent);
}

TEST(Equivalence, PrincipalWithoutRegisteredWitness) {
  auto m = kr::make_model("bare", ModelKind::BlowupA2, {kr::prime("D", 1), kr::exceptional("E")}, {});
  auto d1 = parse_ppdivisor("{1}D + [0,1]E", m);
  auto d2 = parse_ppdivisor("[-1,0]E", m);
  Equivalence e = linearly_equivalent(d1, d2);
  EXPECT_TRUE(e.equivalent);
  EXPECT_FALSE(e.witness.has_value());
}

TEST(Equivalence, SuppliedWeightsAreFlagged) {
  auto m = kr::first_kind_quotient_model(3);
  auto d1 = parse_ppdivisor("[0,1/12]E'", m);
  auto d2 = parse_ppdivisor("{2}D'_a2 + [1,13/12]E'", m);
  Equivalence e = linearly_equivalent(d1, d2);
  EXPECT_TRUE(e.equivalent);
  EXPECT_TRUE(e.principality_supplied);
  ASSERT_TRUE(e.witness.has_value());
  EXPECT_EQ(translate_by_div(d1, *e.witness), d2);
}

TEST(PPMap, ValidityOfPushforwardAndTranslation) {
  auto d = cubic(kr::russell_model());
  PPMap push{std::nullopt, IntMatrix{{2}}, Plurifunction::one(1)};
  auto target = pushforward(IntMatrix{{2}}, d, Cone::zero(1));
  EXPECT_TRUE(is_valid_map(push, d, target));
  // Shrinking the interval of the target breaks D' <= F_*D.
  auto wider = parse_ppdivisor("{1}D3 + {-2/3}D2 + [0,1/2]E", d.model());
  EXPECT_TRUE(is_valid_map(push, d, wider));
  auto narrower = parse_ppdivisor("{1}D3 + {-2/3}D2 + [0,1/6]E", d.model());
  EXPECT_FALSE(is_valid_map(push, d, narrower));
  auto f = Plurifunction::from_model(*d.model(), {{{"u", 1}, {"g", -1}}});
  auto d2 = kr::building_block(3, PrimeLabel{"D2"}, d.model());
  EXPECT_TRUE(is_valid_map(PPMap{std::nullopt, IntMatrix{{2}}, f}, d, d2));
  EXPECT_FALSE(is_valid_map(push, d, d2));
}

TEST(PPMap, ComposeChainsCoversAndLattices) {
  kr::SecondKindParams p{2, 2, 3, 5};
  auto s = kr::second_kind(p);
  PPMap first{s.mu_d, IntMatrix::identity(1), Plurifunction::one(1)};
  PPMap second{s.mu_dl, IntMatrix::identity(1), Plurifunction::one(1)};
  PPMap both = compose(second, first);
  EXPECT_EQ(both.cover->group_order(), 6);
  EXPECT_TRUE(is_valid_map(both, s.cover_divisor, s.final_divisor()));
  EXPECT_EQ(compose(PPMap::identity(1), first), first);
  EXPECT_THROW(compose(PPMap::identity(2), first), DomainError);
}

TEST(Validity, ReportFlags) {
  auto d = cubic(kr::russell_model());
  ValidityReport r = validity_report(d);
  EXPECT_TRUE(r.structurally_valid());
  EXPECT_EQ(r.semiample, Tri::Unknown);
  EXPECT_EQ(to_string(r.big), "UNKNOWN");
  auto a = testing_models::affine();
  ValidityReport ra = validity_report(*a, Cone::zero(1), {{PrimeLabel{"X"}, pt(1)}, {PrimeLabel{"Q"}, pt(1)}});
  EXPECT_FALSE(ra.labels_known);
  EXPECT_EQ(ra.semiample, Tri::True);
  ValidityReport rt = validity_report(*a, Cone::whole_space(1), {{PrimeLabel{"X"}, pt(1)}});
  EXPECT_FALSE(rt.pointed);
  EXPECT_FALSE(rt.shared_tail);
}
