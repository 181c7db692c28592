#include <gtest/gtest.h>

#include <numeric>

#include "ppdiv/fixtures_kr.hpp"
#include "ppdiv/session.hpp"

using namespace ppdiv;

namespace {

const Session& fixtures() {
  static const Session s = [] {
    Session out;
    load_session_dir(PPDIV_FIXTURE_DIR, out);
    return out;
  }();
  return s;
}

}  // namespace

TEST(Bezout, MinimalPairs) {
  auto ab = kr::bezout_pair(3, 2);
  EXPECT_EQ(ab.a, 1);
  EXPECT_EQ(ab.b, -1);
  auto cd = kr::bezout_pair(5, 3, 2);
  EXPECT_EQ(cd.a, 2);
  EXPECT_EQ(cd.b, -3);
  for (int a3 = 2; a3 <= 9; ++a3)
    for (int a2 = 2; a2 <= 9; ++a2) {
      if (std::gcd(a2, a3) != 1) continue;
      auto p = kr::bezout_pair(a3, a2);
      EXPECT_EQ(p.a * a3 + p.b * a2, 1);
      // No pair with smaller |a| exists.
      for (int a = -abs(static_cast<int>(p.a)) + 1; a < abs(static_cast<int>(p.a)); ++a)
        EXPECT_NE((1 - a * a3) % a2, 0) << a3 << "," << a2 << " a=" << a;
    }
  try {
    kr::bezout_pair(4, 2, 2);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoBezoutWithDivisibility);
  }
}

TEST(Russell, ReconstructionAndWitnesses) {
  kr::RussellCubic r = kr::russell_cubic();
  EXPECT_EQ(r.reconstructed, r.expected);
  EXPECT_EQ(add(r.d2, r.reconstructed), r.d3);
  ASSERT_TRUE(r.eq2.witness.has_value());
  ASSERT_TRUE(r.eq3.witness.has_value());
  EXPECT_EQ(translate_by_div(r.mu2.result, *r.eq2.witness), r.d2);
  EXPECT_EQ(translate_by_div(r.mu3.result, *r.eq3.witness), r.d3);
  EXPECT_TRUE(r.mu2.all_valid());
  EXPECT_TRUE(r.mu3.all_valid());
}

TEST(Russell, AlternatePair) {
  auto m = kr::russell_model();
  auto alt = kr::russell_alternate(-1, 2, m);
  EXPECT_EQ(format(alt), "{-1/2}D3 + {2/3}D2 + [0,1/6]E");
  EXPECT_TRUE(linearly_equivalent(alt, kr::russell_cubic(m).expected).equivalent);
  EXPECT_THROW(kr::russell_alternate(1, 1, m), DomainError);
}

TEST(Russell, EvaluateAtZero) { EXPECT_TRUE(evaluate(kr::russell_cubic().expected, RatVector{0}).is_zero()); }

TEST(FirstKind, GoldenInstance) {
  kr::FirstKind f = kr::first_kind({3, 2, 3});
  EXPECT_EQ(f.cover_divisor, f.expected_cover);
  EXPECT_EQ(f.pipeline.result, f.expected_descended);
  EXPECT_EQ(format(f.pipeline.result), "{1/2}D'_a3 + {-1/3}D'_a2 + [0,1/12]E'");
  EXPECT_TRUE(f.round_trip);
  EXPECT_TRUE(f.pipeline.all_valid());
}

TEST(FirstKind, DegreeOneCoverMatchesRussell) {
  kr::FirstKind f = kr::first_kind({2, 2, 3});
  EXPECT_EQ(f.cover.group_order(), 1);
  EXPECT_EQ(format(f.cover_divisor), "{1/2}D_a3 + {-1/3}D_a2 + [0,1/6]E");
  EXPECT_EQ(format(f.pipeline.result), "{1/2}D'_a3 + {-1/3}D'_a2 + [0,1/6]E'");
}

TEST(FirstKind, InvalidParameters) {
  for (auto p : std::vector<kr::FirstKindParams>{{3, 3, 3}, {1, 2, 3}, {3, 2, 4}, {3, 1, 2}}) {
    try {
      kr::first_kind(p);
      FAIL();
    } catch (const DomainError& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidParameters);
    }
  }
}

TEST(SecondKind, GoldenInstance) {
  kr::SecondKind s = kr::second_kind({2, 2, 3, 5});
  EXPECT_EQ(s.ab.a, 2);
  EXPECT_EQ(s.ab.b, -3);
  EXPECT_EQ(s.a_prime, 1);
  EXPECT_EQ(s.b_prime, -3);
  EXPECT_EQ(s.middle(), s.expected_middle);
  EXPECT_EQ(s.final_divisor(), s.expected_final);
  EXPECT_EQ(format(s.final_divisor()), "{1/3}Dq_a3 + {-3/5}Dq_a2 + [0,1/45]Eq");
  EXPECT_TRUE(s.round_trip_middle);
  EXPECT_TRUE(s.round_trip_final);
  EXPECT_TRUE(s.pipeline.all_valid());
}

TEST(SecondKind, DegreeOneFinalCover) {
  // d*l - 1 == 1 needs d == 2, l == 1.
  kr::SecondKind s = kr::second_kind({2, 1, 3, 5});
  EXPECT_EQ(s.mu_dl.group_order(), 1);
  EXPECT_EQ(format(s.final_divisor()), "{1/3}Dq_a3 + {-3/5}Dq_a2 + [0,1/15]Eq");
  EXPECT_EQ(format(s.middle()), "{1/3}Dd_a3 + {-3/5}Dd_a2 + [0,1/15]Ed");
}

TEST(SecondKind, InvalidParameters) {
  try {
    kr::second_kind({3, 1, 3, 5});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidParameters);
  }
  EXPECT_THROW(kr::second_kind({2, 0, 3, 5}), DomainError);
  EXPECT_THROW(kr::second_kind({2, 1, 3, 6}), DomainError);
}

TEST(FixtureFiles, RussellMatchesCode) {
  const Session& s = fixtures();
  auto m = kr::russell_model();
  EXPECT_EQ(*s.model("russell"), *m);
  kr::RussellCubic r = kr::russell_cubic(s.model("russell"));
  EXPECT_EQ(s.divisor("cubic"), r.reconstructed);
  EXPECT_EQ(s.divisor("d2"), r.d2);
  EXPECT_EQ(s.divisor("d3"), r.d3);
  EXPECT_EQ(s.divisor("cubic_alt"), kr::russell_alternate(-1, 2, m));
  const NamedWeights& w = s.weight("russell_ambient");
  EXPECT_EQ(assemble(downgrade(w.data), w.data.ray_labels, s.model(w.model)), r.expected);
  const NamedWeights& bb3 = s.weight("bb3");
  EXPECT_EQ(assemble(downgrade(bb3.data), bb3.data.ray_labels, m), r.d2);
}

TEST(FixtureFiles, FirstKindMatchesCode) {
  const Session& s = fixtures();
  kr::FirstKind f = kr::first_kind({3, 2, 3});
  EXPECT_EQ(*s.model("first_up"), *f.up);
  EXPECT_EQ(*s.model("first_down_3"), *f.down);
  EXPECT_EQ(s.cover("first_mu2"), f.cover);
  EXPECT_EQ(s.divisor("first_3_2_3_cover"), f.cover_divisor);
  EXPECT_EQ(s.divisor("first_3_2_3"), f.pipeline.result);
}

TEST(FixtureFiles, SecondKindMatchesCode) {
  const Session& s = fixtures();
  kr::SecondKind k = kr::second_kind({2, 2, 3, 5});
  EXPECT_EQ(*s.model("second_up"), *k.up);
  EXPECT_EQ(*s.model("second_mid_2"), *k.mid);
  EXPECT_EQ(*s.model("second_down_2_2"), *k.down);
  EXPECT_EQ(s.cover("second_mu2"), k.mu_d);
  EXPECT_EQ(s.cover("second_mu3"), k.mu_dl);
  EXPECT_EQ(s.divisor("second_2_2_3_5_cover"), k.cover_divisor);
  EXPECT_EQ(s.divisor("second_2_2_3_5_middle"), k.middle());
  EXPECT_EQ(s.divisor("second_2_2_3_5"), k.final_divisor());
}

TEST(FixtureFiles, BlowupExample) {
  const Session& s = fixtures();
  Equivalence e = linearly_equivalent(s.divisor("line_plus"), s.divisor("shifted"));
  EXPECT_TRUE(e.equivalent);
  EXPECT_TRUE(e.witness.has_value());
}
