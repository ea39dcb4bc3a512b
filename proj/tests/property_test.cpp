#include <gtest/gtest.h>

#include "property_suite.hpp"

using namespace reembed::testing;

namespace {

void expect_ok(const PropertyOutcome& o, std::size_t cases) {
  EXPECT_EQ(o.cases, cases);
  EXPECT_TRUE(o.ok()) << o.failures << " failures, first: " << o.first_failure;
  if (!o.note.empty()) std::cout << "  " << o.note << "\n";
}

}  // namespace

TEST(Property, MatroidBasesMatchMinors) { expect_ok(property_matroid_bases(), 200); }

TEST(Property, BinomialFanMatchesMatroidFan) { expect_ok(property_binomial_fan(), 100); }

TEST(Property, SeparatingTuplesAreCandidates) { expect_ok(property_candidate_containment(), 50); }

TEST(Property, BorderStructureOnRandomOrderIdeals) { expect_ok(property_border_structure(), 30); }

TEST(Property, OtherSeedsAgree) {
  EXPECT_TRUE(property_matroid_bases(11, 60).ok());
  EXPECT_TRUE(property_binomial_fan(13, 60).ok());
  EXPECT_TRUE(property_border_structure(17, 10).ok());
}
