#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "reembed/linear_gfan.hpp"
#include "support.hpp"

using namespace reembed;
using namespace reembed::testing;

namespace {

const Ring xyzw({"x", "y", "z", "w"});

Matrix<Q> random_full_rank(Rng& rng, std::size_t r, std::size_t n) {
  while (true) {
    Matrix<Q> a(r, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.coin(0.45) ? Q(0) : rng.nonzero(4, 2);
    if (rank(a) == r) return a;
  }
}

std::string gb_text(const MarkedReducedGB<Q>& gb) {
  std::string s;
  for (const auto& p : gb.pairs)
    s += "(" + xyzw.name(p.marker) + ", " + to_string_marked(p.form, Term::indet(4, p.marker), xyzw) + ")";
  return s;
}

}  // namespace

TEST(GfanLinear, FanOfTwoFormsInFourIndeterminates) {
  auto fan = gfan_linear(PL(xyzw, "x + y - z + 4*w, x - y - z"), 4);
  std::vector<std::string> got;
  for (const auto& gb : fan.gbs) got.push_back(gb_text(gb));
  std::vector<std::string> want{
      "(x, x - z + 2*w)(y, y + 2*w)",
      "(x, x - y - z)(w, w + 1/2*y)",
      "(y, y + 2*w)(z, z - x - 2*w)",
      "(y, y - x + z)(w, w + 1/2*x - 1/2*z)",
      "(z, z - x + y)(w, w + 1/2*y)",
  };
  EXPECT_EQ(got, want);
  EXPECT_FALSE(fan.input_reduced);
}

TEST(GfanLinear, DependentFormsAreReduced) {
  auto fan = gfan_linear(PL(xyzw, "x - y, 2*x - 2*y, y - z"), 4);
  EXPECT_TRUE(fan.input_reduced);
  EXPECT_EQ(fan.gbs.size(), 3U);
}

TEST(GfanLinear, ZeroIdealHasOneEmptyBasis) {
  auto fan = gfan_linear(std::vector<Poly<Q>>{}, 4);
  ASSERT_EQ(fan.gbs.size(), 1U);
  EXPECT_TRUE(fan.gbs[0].pairs.empty());
  EXPECT_THROW(gfan_linear(PL(xyzw, "x^2"), 4), std::domain_error);
}

TEST(GfanLinear, BasesAgreeWithCofactorMinors) {
  Rng rng(101);
  for (int k = 0; k < 60; ++k) {
    std::size_t n = static_cast<std::size_t>(rng.between(2, 8));
    std::size_t r = static_cast<std::size_t>(rng.between(1, static_cast<long>(std::min<std::size_t>(4, n))));
    auto a = random_full_rank(rng, r, n);
    auto oracle = bases_by_cofactors(a);
    EXPECT_EQ(matroid_bases_exhaustive(a), oracle);
    EXPECT_EQ(matroid_bases(a), oracle);
  }
}

TEST(GfanLinear, EveryBasisGeneratesTheSameRowSpace) {
  Rng rng(103);
  for (int k = 0; k < 40; ++k) {
    std::size_t n = static_cast<std::size_t>(rng.between(3, 7));
    std::size_t r = static_cast<std::size_t>(rng.between(1, 3));
    auto a = random_full_rank(rng, r, n);
    auto forms = forms_from_matrix(a);
    auto canonical = rref(a).matrix;
    for (auto backend : {FanBackend::exhaustive, FanBackend::exchange}) {
      auto fan = gfan_linear(forms, n, backend);
      for (std::size_t b = 0; b < fan.gbs.size(); ++b) {
        std::vector<Poly<Q>> polys;
        for (const auto& p : fan.gbs[b].pairs) polys.push_back(p.form);
        auto m = coefficient_matrix(polys, n);
        EXPECT_TRUE(rref(m).matrix == canonical);
        // Reducedness: the marker columns form an identity block.
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) EXPECT_EQ(m(i, fan.gbs[b].pairs[j].marker), Q(i == j ? 1 : 0));
      }
    }
  }
}

TEST(GfanLinear, BasesSatisfyExchange) {
  Rng rng(107);
  for (int k = 0; k < 30; ++k) {
    auto a = random_full_rank(rng, 3, 7);
    auto bases = matroid_bases(a);
    std::set<IndexTuple> all(bases.begin(), bases.end());
    for (int s = 0; s < 20; ++s) {
      const auto& b1 = bases[rng.index(bases.size())];
      const auto& b2 = bases[rng.index(bases.size())];
      for (auto x : b1) {
        if (std::binary_search(b2.begin(), b2.end(), x)) continue;
        bool found = false;
        for (auto y : b2) {
          if (std::binary_search(b1.begin(), b1.end(), y)) continue;
          IndexTuple nb = b1;
          std::replace(nb.begin(), nb.end(), x, y);
          std::sort(nb.begin(), nb.end());
          found = found || all.contains(nb);
        }
        EXPECT_TRUE(found);
      }
    }
  }
}

TEST(GfanLinear, IndexTupleValidation) {
  Matrix<Q> a(1, 3);
  a(0, 0) = 1;
  EXPECT_THROW(column_submatrix_rank_ok(a, std::vector<std::size_t>{1, 0}), std::invalid_argument);
  EXPECT_THROW(column_submatrix_rank_ok(a, std::vector<std::size_t>{3}), std::out_of_range);
  EXPECT_FALSE(column_submatrix_rank_ok(a, std::vector<std::size_t>{1}));
  EXPECT_THROW(reduced_gb_for_basis(a, std::vector<std::size_t>{2}), std::domain_error);
}
