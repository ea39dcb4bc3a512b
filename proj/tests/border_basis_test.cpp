#include <gtest/gtest.h>

#include <set>

#include "reembed/border_basis.hpp"
#include "reembed/cotangent.hpp"
#include "reembed/linear_gfan.hpp"
#include "support.hpp"

using namespace reembed;
using namespace reembed::testing;

namespace {

Term xy(std::uint32_t a, std::uint32_t b) { return Term({a, b}); }

// The order ideal {1, y, x, y^2, xy, x^2, y^3, xy^2} in K[x, y].
BorderBasisScheme<Q> eight_terms() { return BorderBasisScheme<Q>(order_ideal({xy(0, 3), xy(1, 2), xy(2, 0)})); }

std::vector<Indet> indets(const Ring& r, std::initializer_list<const char*> names) {
  std::vector<Indet> out;
  for (const char* s : names) out.push_back(r.index_of(s));
  std::sort(out.begin(), out.end());
  return out;
}

Poly<Q> sign_normalized(Poly<Q> f) {
  if (sgn(f.terms().front().second) < 0) f = -f;
  return f;
}

Matrix<Q> span_of(const std::vector<Poly<Q>>& forms, std::size_t n) { return rref(coefficient_matrix(forms, n)).matrix; }

OrderIdeal random_order_ideal(Rng& rng, std::size_t n, std::size_t max_mu) {
  while (true) {
    std::vector<Term> gens;
    for (int g = 0, k = static_cast<int>(rng.between(1, 3)); g < k; ++g) {
      std::vector<std::uint32_t> e(n);
      for (auto& x : e) x = static_cast<std::uint32_t>(rng.between(0, n == 2 ? 3 : 1));
      gens.emplace_back(std::move(e));
    }
    auto o = order_ideal(gens);
    if (o.size() >= 2 && o.size() <= max_mu) return o;
  }
}

}  // namespace

TEST(BorderBasis, EightTermOrderIdeal) {
  auto s = eight_terms();
  const auto& o = s.order_ideal();
  EXPECT_EQ(o.terms(), (std::vector<Term>{xy(0, 0), xy(0, 1), xy(1, 0), xy(0, 2), xy(1, 1), xy(2, 0), xy(0, 3), xy(1, 2)}));
  EXPECT_EQ(s.border(), (std::vector<Term>{xy(2, 1), xy(3, 0), xy(0, 4), xy(1, 3), xy(2, 2)}));
  EXPECT_EQ(s.mu(), 8U);
  EXPECT_EQ(s.nu(), 5U);
  EXPECT_EQ(s.ring().arity(), 40U);
  EXPECT_EQ(s.expected_dimension(), 16U);
  EXPECT_EQ(s.defining_ideal().size(), 32U);
  // c_ij with 1-based i, j sits at (i-1)*nu + (j-1).
  EXPECT_EQ(s.ring().index_of("c5_1"), Indet{20});
  EXPECT_EQ(s.c(4, 0), Indet{20});
  EXPECT_EQ(s.c_index(39), std::make_pair(std::size_t{7}, std::size_t{4}));
}

TEST(BorderBasis, LinearPartsOfGenerators) {
  auto s = eight_terms();
  const Ring& r = s.ring();
  auto listed = PL(r,
                   "c6_5, c5_1 - c8_5, c4_5, c4_4, c5_5, c4_3 - c5_4, c4_2, c4_1 - c7_5, c5_2 - c7_5, c3_5,"
                   "c3_4, c3_3, c3_1, c2_5, c2_4, c2_3, c2_2, c2_1, c3_2, c1_5, c1_4, c1_3, c1_2, c1_1");
  ASSERT_EQ(listed.size(), 24U);
  // The listed forms are the reduced echelon basis of the span, pivots on the first indeterminate.
  std::set<std::string> want, got;
  for (const auto& f : listed) want.insert(to_string(sign_normalized(f), r));
  for (const auto& f : forms_from_matrix(span_of(linear_part_of_ideal(s.defining_ideal()), 40)))
    got.insert(to_string(sign_normalized(f), r));
  EXPECT_EQ(got, want);
  EXPECT_TRUE(span_of(linear_part_of_ideal(s.defining_ideal()), 40) == span_of(listed, 40));
}

TEST(BorderBasis, CotangentClassesAndFan) {
  auto s = eight_terms();
  const Ring& r = s.ring();
  auto lin = linear_part_of_ideal(s.defining_ideal());
  auto c = cotangent_classes(lin, 40);
  auto e0 = indets(r, {"c1_1", "c1_2", "c1_3", "c1_4", "c1_5", "c2_1", "c2_2", "c2_3", "c2_4", "c2_5",
                       "c3_1", "c3_2", "c3_3", "c3_4", "c3_5", "c4_2", "c4_4", "c4_5", "c5_5", "c6_5"});
  EXPECT_EQ(c.trivial, e0);
  auto basic = indets(r, {"c5_3", "c6_1", "c6_2", "c6_3", "c6_4", "c7_1", "c7_2", "c7_3", "c7_4", "c8_1", "c8_2",
                          "c8_3", "c8_4"});
  EXPECT_EQ(c.basic, basic);
  std::set<std::vector<Indet>> proper(c.proper.begin(), c.proper.end());
  EXPECT_EQ(proper, (std::set<std::vector<Indet>>{indets(r, {"c5_1", "c8_5"}), indets(r, {"c4_3", "c5_4"}),
                                                   indets(r, {"c4_1", "c5_2", "c7_5"})}));

  auto rim = rim_interior(s.order_ideal()).rim;
  for (Indet b : c.basic) EXPECT_TRUE(std::find(rim.begin(), rim.end(), s.c_index(b).first) != rim.end());

  auto want_s = e0;
  for (auto v : indets(r, {"c5_1", "c4_3", "c4_1", "c5_2"})) want_s.push_back(v);
  std::sort(want_s.begin(), want_s.end());
  auto o = TermOrdering::degrevlex(40);
  EXPECT_EQ(sigma_leading_S(c, o), want_s);
  EXPECT_EQ(leading_indets(lin, 40, o), want_s);

  auto fan = enumerate_ltgfan_binomial(c);
  EXPECT_EQ(fan.size(), 12U);
  EXPECT_EQ(ltgfan_size(c), 12U);
  std::set<LeadingTermSet> a(fan.begin(), fan.end());
  auto lin_fan = ltgfan_linear(lin, 40);
  EXPECT_EQ(a, std::set<LeadingTermSet>(lin_fan.begin(), lin_fan.end()));
  for (const auto& z : fan)
    for (Indet b : c.basic) EXPECT_FALSE(std::binary_search(z.begin(), z.end(), b));
}

TEST(BorderBasis, StructureOfEightTermScheme) {
  auto rep = verify_structure(eight_terms());
  EXPECT_TRUE(rep.ok());
  EXPECT_TRUE(rep.failures.empty());
}

TEST(BorderBasis, ArrowHomogeneity) {
  auto s = eight_terms();
  const auto& o = s.order_ideal();
  for (const auto& g : s.defining_ideal()) {
    std::optional<std::vector<long>> deg;
    for (const auto& [t, coef] : g) {
      std::vector<long> d(2, 0);
      for (Indet v = 0; v < 40; ++v) {
        const Term& b = s.border()[v % 5];
        const Term& u = o[v / 5];
        for (int k = 0; k < 2; ++k) d[k] += static_cast<long>(t[v]) * (static_cast<long>(b[k]) - static_cast<long>(u[k]));
      }
      if (!deg) deg = d;
      EXPECT_EQ(*deg, d);
    }
  }
}

TEST(BorderBasis, BorderIsOneStepOutside) {
  Rng rng(401);
  for (int k = 0; k < 40; ++k) {
    std::size_t n = rng.coin(0.5) ? 2 : 3;
    auto o = random_order_ideal(rng, n, 12);
    std::set<Term> want;
    for (const auto& t : o.terms())
      for (Indet v = 0; v < n; ++v)
        if (!o.contains(t * Term::indet(n, v))) want.insert(t * Term::indet(n, v));
    auto b = border(o);
    EXPECT_EQ(std::set<Term>(b.begin(), b.end()), want);
    EXPECT_EQ(b.size(), want.size());
    for (const auto& t : b) {
      bool divides = false;
      for (Indet v = 0; v < n; ++v)
        if (t[v] > 0 && o.contains(t / Term::indet(n, v))) divides = true;
      EXPECT_TRUE(divides);
    }
  }
}

TEST(BorderBasis, RandomOrderIdealsSatisfyTheStructure) {
  Rng rng(409);
  for (int k = 0; k < 24; ++k) {
    std::size_t n = k % 2 == 0 ? 2 : 3;
    auto s = BorderBasisScheme<Q>(random_order_ideal(rng, n, 12));
    auto rep = verify_structure(s);
    EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? std::string() : rep.failures.front());
  }
}

TEST(BorderBasis, CommutatorsHaveTheSameLinearPart) {
  Rng rng(419);
  std::vector<BorderBasisScheme<Q>> schemes{eight_terms()};
  for (int k = 0; k < 8; ++k) schemes.emplace_back(random_order_ideal(rng, k % 2 == 0 ? 2 : 3, 8));
  for (const auto& s : schemes) {
    std::size_t nc = s.mu() * s.nu();
    EXPECT_TRUE(span_of(linear_part_of_ideal(s.defining_ideal()), nc) ==
                span_of(linear_part_of_ideal(s.commutator_generators()), nc));
  }
}

TEST(BorderBasis, RejectsEmptyGenerators) {
  EXPECT_THROW(order_ideal({}), std::invalid_argument);
  EXPECT_THROW(order_ideal({xy(1, 0), Term({1, 0, 0})}), std::invalid_argument);
}
