#include <gtest/gtest.h>

#include <functional>

#include "models.hpp"

using namespace ppdiv;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const DomainError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no DomainError thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(QDivisor, ArithmeticDropsZeros) {
  QDivisor a{{"D2", 1}, {"E", Rational(1, 2)}};
  QDivisor b{{"D2", -1}, {"D3", 2}};
  QDivisor s = a + b;
  EXPECT_EQ(s.terms().size(), 2u);
  EXPECT_EQ(s.coefficient(PrimeLabel{"D2"}), 0);
  EXPECT_EQ(a - a, QDivisor{});
  EXPECT_EQ(Rational(2) * a, (QDivisor{{"D2", 2}, {"E", 1}}));
  EXPECT_FALSE(a.is_integral());
  EXPECT_TRUE(b.is_integral());
  EXPECT_TRUE(QDivisor{} <= (QDivisor{{"E", 1}}));
  EXPECT_FALSE((QDivisor{{"E", 1}}) <= QDivisor{});
}

TEST(QDivisor, FormatsInModelOrder) {
  auto m = kr::russell_model();
  QDivisor d{{"E", -1}, {"D2", -2}, {"D3", 3}};
  EXPECT_EQ(format(d, m.get()), "3*D3 - 2*D2 - E");
  EXPECT_EQ(format(QDivisor{}, m.get()), "0");
  EXPECT_EQ(format(QDivisor{{"E", Rational(-1, 2)}}), "-1/2*E");
}

TEST(YModel, BlowupPrincipality) {
  auto m = kr::russell_model();
  EXPECT_TRUE(m->is_principal(QDivisor{{"D2", 1}, {"E", 1}}));
  EXPECT_TRUE(m->is_principal(QDivisor{{"D2", 1}, {"D3", -1}}));
  EXPECT_FALSE(m->is_principal(QDivisor{{"D2", 1}}));
  EXPECT_FALSE(m->is_principal(QDivisor{{"E", 1}}));
  EXPECT_EQ(kind_of([&] { m->is_principal(QDivisor{{"E", Rational(1, 2)}}); }), ErrorKind::NonIntegral);
  EXPECT_EQ(kind_of([&] { m->is_principal(QDivisor{{"Q", 1}}); }), ErrorKind::UnknownLabel);
  EXPECT_FALSE(m->principality_supplied());
}

TEST(YModel, AffineEverythingPrincipal) {
  auto m = testing_models::affine();
  EXPECT_TRUE(m->is_principal(QDivisor{{"X", 5}, {"L", -2}}));
  EXPECT_FALSE(m->exceptional().has_value());
}

TEST(YModel, QuotientWeightsAreSupplied) {
  auto m = kr::first_kind_quotient_model(3);
  EXPECT_TRUE(m->principality_supplied());
  EXPECT_TRUE(m->is_principal(QDivisor{{"D'_a2", 2}, {"E'", 1}}));
  EXPECT_FALSE(m->is_principal(QDivisor{{"D'_a2", 1}, {"E'", 1}}));
}

TEST(YModel, Validation) {
  using kr::exceptional;
  using kr::prime;
  EXPECT_EQ(kind_of([] { YModel::make("m", ModelKind::BlowupA2, {prime("D", 1), prime("D", 1), exceptional("E")}); }),
            ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { YModel::make("m", ModelKind::BlowupA2, {prime("D", 1)}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { YModel::make("m", ModelKind::AffinePlane, {exceptional("E")}); }),
            ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { YModel::make("m", ModelKind::BlowupA2, {prime("D", Rational(1, 2)), exceptional("E")}); }),
            ErrorKind::NonIntegral);
  EXPECT_EQ(kind_of([] {
              YModel::make("m", ModelKind::BlowupA2, {prime("D", 1), exceptional("E")}, {{"f", QDivisor{{"D", 1}}}});
            }),
            ErrorKind::InvalidArgument);
  auto m = kr::russell_model();
  EXPECT_EQ(kind_of([&] { m->function("w"); }), ErrorKind::UnknownFunction);
  EXPECT_EQ(m->function("u"), (QDivisor{{"D2", 1}, {"E", 1}}));
}

TEST(Cover, PullbackMultipliesByRamification) {
  auto up = kr::first_kind_cover_model();
  auto down = kr::first_kind_quotient_model(4);
  auto c = kr::first_kind_cover(4, up, down);
  QDivisor d{{"E'", Rational(1, 2)}, {"D'_a2", -1}};
  EXPECT_EQ(pullback_qdivisor(c, d), (QDivisor{{"E", Rational(3, 2)}, {"D_a2", -1}}));
  EXPECT_FALSE(c.is_identity());
  EXPECT_TRUE(CoverData::identity(up).is_identity());
}

TEST(Cover, PrincipalDivisorsPullBackToPrincipal) {
  auto up = kr::first_kind_cover_model();
  auto down = kr::first_kind_quotient_model(3);
  auto c = kr::first_kind_cover(3, up, down);
  for (const auto& f : down->functions()) EXPECT_TRUE(up->is_principal(pullback_qdivisor(c, f.divisor))) << f.name;
}

TEST(Cover, CompositionMultipliesIndices) {
  kr::SecondKindParams p{2, 2, 3, 5};
  auto up = kr::second_kind_cover_model();
  auto mid = kr::second_kind_middle_model(p.d);
  auto down = kr::second_kind_final_model(p.d, p.l);
  auto first = kr::second_kind_mu_d(p.d, up, mid);
  auto second = kr::second_kind_mu_dl(p.d, p.l, mid, down);
  CoverData both = compose(second, first);
  EXPECT_EQ(both.group_order(), 6);
  EXPECT_EQ(both.fiber(PrimeLabel{"Dq_a3"}), (std::vector<FiberEntry>{{PrimeLabel{"D_a3"}, 2}}));
  EXPECT_EQ(both.fiber(PrimeLabel{"Eq"}), (std::vector<FiberEntry>{{PrimeLabel{"E"}, 3}}));
  QDivisor d{{"Dq_a3", 1}, {"Eq", 1}};
  EXPECT_EQ(pullback_qdivisor(both, d), pullback_qdivisor(first, pullback_qdivisor(second, d)));
  EXPECT_EQ(kind_of([&] { compose(first, second); }), ErrorKind::ChainMismatch);
}

TEST(Cover, Validation) {
  auto up = kr::first_kind_cover_model();
  auto down = kr::first_kind_quotient_model(3);
  std::map<PrimeLabel, std::vector<FiberEntry>> missing{{PrimeLabel{"E'"}, {{PrimeLabel{"E"}, 2}}}};
  EXPECT_EQ(kind_of([&] { CoverData::make(up, down, missing, 2); }), ErrorKind::InvalidArgument);
  std::map<PrimeLabel, std::vector<FiberEntry>> bad{{PrimeLabel{"Z"}, {{PrimeLabel{"E"}, 2}}}};
  EXPECT_EQ(kind_of([&] { CoverData::make(up, down, bad, 2); }), ErrorKind::UnknownLabel);
  EXPECT_EQ(kind_of([&] { CoverData::make(up, down, {}, 0); }), ErrorKind::InvalidArgument);
}
