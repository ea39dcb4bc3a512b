#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "reembed/cotangent.hpp"
#include "reembed/linear_gfan.hpp"
#include "support.hpp"

using namespace reembed;
using namespace reembed::testing;

namespace {

// Random binomial linear forms: x_i, or x_i - c x_j.
std::vector<Poly<Q>> random_binomial_forms(Rng& rng, std::size_t n, std::size_t count) {
  std::vector<Poly<Q>> out;
  for (std::size_t k = 0; k < count; ++k) {
    Indet i = rng.index(n);
    auto f = Poly<Q>::indet(n, i);
    if (rng.coin(0.7)) {
      Indet j = rng.index(n);
      if (j != i) f -= Poly<Q>::indet(n, j, rng.nonzero(3, 2));
    }
    out.push_back(std::move(f));
  }
  return out;
}

TermOrdering random_ordering(Rng& rng, std::size_t n) {
  std::vector<TermOrdering::Row> rows{TermOrdering::Row(n)};
  for (auto& w : rows[0]) w = rng.between(1, 9);
  auto tie = TermOrdering::degrevlex(n);
  rows.insert(rows.end(), tie.rows().begin(), tie.rows().end());
  return TermOrdering::custom(std::move(rows));
}

std::vector<Indet> all_members(const CotangentClasses& c) {
  std::vector<Indet> v = c.trivial;
  v.insert(v.end(), c.basic.begin(), c.basic.end());
  for (const auto& e : c.proper) v.insert(v.end(), e.begin(), e.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Cotangent, ClassesOfSmallCurve) {
  Ring r({"x", "y", "z", "w"});
  auto c = cotangent_classes(PL(r, "z + w, x, y"), 4);
  EXPECT_EQ(c.trivial, (std::vector<Indet>{0, 1}));
  EXPECT_TRUE(c.basic.empty());
  EXPECT_EQ(c.proper, (std::vector<std::vector<Indet>>{{2, 3}}));
  EXPECT_EQ(ltgfan_size(c), 2U);
  EXPECT_EQ(enumerate_ltgfan_binomial(c), (std::vector<LeadingTermSet>{{0, 1, 3}, {0, 1, 2}}));
}

TEST(Cotangent, NonBinomialUsesResidues) {
  Ring r({"x", "y", "z"});
  auto c = cotangent_classes(PL(r, "x - y + z"), 3);
  EXPECT_TRUE(c.trivial.empty());
  EXPECT_EQ(c.basic, (std::vector<Indet>{0, 1, 2}));
  c = cotangent_classes(PL(r, "x - 2*y + 2*z, y - z"), 3);
  EXPECT_EQ(c.trivial, (std::vector<Indet>{0}));
  EXPECT_EQ(c.proper, (std::vector<std::vector<Indet>>{{1, 2}}));
}

TEST(Cotangent, PartitionAndResidueAgreement) {
  Rng rng(201);
  for (int k = 0; k < 100; ++k) {
    std::size_t n = static_cast<std::size_t>(rng.between(2, 12));
    auto forms = random_binomial_forms(rng, n, static_cast<std::size_t>(rng.between(1, static_cast<long>(n))));
    auto c = cotangent_classes(forms, n);
    std::vector<Indet> every(n);
    std::iota(every.begin(), every.end(), Indet{0});
    EXPECT_EQ(all_members(c), every);
    EXPECT_EQ(c, cotangent_classes_by_residues<Q>(reduce_linear_forms<Q>(forms, n), n));
  }
}

TEST(Cotangent, SupportUnionIgnoresGeneratorChoice) {
  Rng rng(203);
  for (int k = 0; k < 60; ++k) {
    std::size_t n = static_cast<std::size_t>(rng.between(2, 10));
    auto forms = reduce_linear_forms<Q>(random_binomial_forms(rng, n, 4), n);
    auto mixed = forms;
    for (std::size_t i = 0; i < mixed.size(); ++i)
      for (std::size_t j = i + 1; j < mixed.size(); ++j) mixed[i] += rng.small() * forms[j];
    rng.shuffle(mixed);
    EXPECT_EQ(support_union(forms, n), support_union(mixed, n));
    auto c = cotangent_classes(forms, n);
    auto u = support_union(forms, n);
    for (Indet b : c.basic) EXPECT_FALSE(std::binary_search(u.begin(), u.end(), b));
  }
}

TEST(Cotangent, LeadingSetShapeUnderRandomOrderings) {
  Rng rng(207);
  for (int k = 0; k < 100; ++k) {
    std::size_t n = static_cast<std::size_t>(rng.between(2, 10));
    auto lin = reduce_linear_forms<Q>(random_binomial_forms(rng, n, 5), n);
    auto c = cotangent_classes(lin, n);
    auto o = random_ordering(rng, n);
    auto s = sigma_leading_S(c, o);
    EXPECT_EQ(s, leading_indets(lin, n, o));
    std::size_t expect = c.trivial.size();
    for (const auto& e : c.proper) expect += e.size() - 1;
    EXPECT_EQ(s.size(), expect);
  }
}

TEST(Cotangent, BasicNeverLeadingTrivialAlways) {
  Rng rng(211);
  for (int k = 0; k < 50; ++k) {
    std::size_t n = static_cast<std::size_t>(rng.between(2, 9));
    auto lin = reduce_linear_forms<Q>(random_binomial_forms(rng, n, 4), n);
    auto c = cotangent_classes(lin, n);
    for (const auto& lt : ltgfan_linear(lin, n)) {
      for (Indet b : c.basic) EXPECT_FALSE(std::binary_search(lt.begin(), lt.end(), b));
      for (Indet t : c.trivial) EXPECT_TRUE(std::binary_search(lt.begin(), lt.end(), t));
    }
  }
}
