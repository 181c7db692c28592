#include <gtest/gtest.h>

#include "properties.hpp"

namespace {

void expect_property(const props::Check& check, std::uint64_t seed) {
  props::Outcome o = props::run(check, seed, props::kPropertyCases);
  EXPECT_EQ(o.cases, props::kPropertyCases);
  EXPECT_EQ(o.failures, 0) << o.first_failure;
}

TEST(Properties, DualConeInvolution) { expect_property(props::dual_involution, 101); }
TEST(Properties, SupportMinAdditivity) { expect_property(props::support_additivity, 102); }
TEST(Properties, PushforwardAdjunction) { expect_property(props::pushforward_adjunction, 103); }
TEST(Properties, PullbackCommutesWithEvaluation) { expect_property(props::pullback_evaluate, 104); }
TEST(Properties, DescendThenPullbackRoundTrip) { expect_property(props::descend_round_trip, 105); }
TEST(Properties, SmithCertificatesMatchMinors) { expect_property(props::snf_certificate, 106); }
TEST(Properties, MapTripleCompositionAssociative) { expect_property(props::compose_associative, 107); }

TEST(Properties, EvaluationMatchesBruteForce) {
  props::Outcome o = props::run(props::evaluate_matches_oracle, 108, 60);
  EXPECT_EQ(o.failures, 0) << o.first_failure;
}

TEST(Properties, SuiteSeedsAreDistinct) {
  std::set<std::uint64_t> seeds;
  for (const auto& p : props::property_suite()) seeds.insert(p.seed);
  EXPECT_EQ(seeds.size(), props::property_suite().size());
}

}  // namespace
