#ifndef REEMBED_TESTS_PROPERTY_SUITE_HPP
#define REEMBED_TESTS_PROPERTY_SUITE_HPP

// Randomized cross-checks shared by the property tests and the acceptance gate.

#include <chrono>
#include <set>
#include <sstream>

#include "reembed/border_basis.hpp"
#include "reembed/cotangent.hpp"
#include "reembed/linear_gfan.hpp"
#include "reembed/reembed.hpp"
#include "reembed/separating.hpp"
#include "support.hpp"

namespace reembed::testing {

struct PropertyOutcome {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  std::string note;

  bool ok() const { return failures == 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

inline Matrix<Q> random_full_rank(Rng& rng, std::size_t r, std::size_t n) {
  while (true) {
    Matrix<Q> a(r, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.coin(0.45) ? Q(0) : rng.nonzero(4, 2);
    if (rank(a) == r) return a;
  }
}

/// Linear forms x_i or x_i - c x_j.
inline std::vector<Poly<Q>> random_binomial_forms(Rng& rng, std::size_t n, std::size_t count) {
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

/// Order ideal spanned by 1..3 random terms, with 2 <= size <= max_mu.
inline OrderIdeal random_order_ideal(Rng& rng, std::size_t n, std::size_t max_mu) {
  while (true) {
    std::vector<Term> gens;
    for (long g = 0, k = rng.between(1, 3); g < k; ++g) {
      std::vector<std::uint32_t> e(n);
      for (auto& x : e) x = static_cast<std::uint32_t>(rng.between(0, n == 2 ? 3 : 1));
      gens.emplace_back(std::move(e));
    }
    auto o = order_ideal(gens);
    if (o.size() >= 2 && o.size() <= max_mu) return o;
  }
}

/// Ideal in K[x_1..x_n] whose generators have a non-trivial linear part and
/// quadratic or cubic tails.
inline std::vector<Poly<Q>> random_ideal_with_linear_part(Rng& rng, std::size_t n) {
  std::vector<Poly<Q>> gens;
  for (long g = 0, m = rng.between(1, 3); g < m; ++g) {
    auto f = random_poly(rng, n, static_cast<std::size_t>(rng.between(1, 2)), 1, 1);
    f += random_poly(rng, n, static_cast<std::size_t>(rng.between(1, 3)), 2, 3);
    if (!f.is_zero()) gens.push_back(std::move(f));
  }
  if (gens.empty()) gens.push_back(Poly<Q>::indet(n, 0));
  return gens;
}

/// (i) matroid bases agree with the non-zero maximal minors.
inline PropertyOutcome property_matroid_bases(std::uint64_t seed = 601, int count = 200) {
  PropertyOutcome out;
  Rng rng(seed);
  for (int k = 0; k < count; ++k) {
    std::size_t n = static_cast<std::size_t>(rng.between(1, 9));
    std::size_t r = static_cast<std::size_t>(rng.between(1, static_cast<long>(std::min<std::size_t>(4, n))));
    auto a = random_full_rank(rng, r, n);
    ++out.cases;
    if (matroid_bases(a) != bases_by_cofactors(a)) out.fail("case " + std::to_string(k));
  }
  return out;
}

/// (ii) closed-form fan of a binomial linear ideal versus the matroid fan.
inline PropertyOutcome property_binomial_fan(std::uint64_t seed = 607, int count = 100) {
  PropertyOutcome out;
  Rng rng(seed);
  for (int k = 0; k < count; ++k) {
    std::size_t n = static_cast<std::size_t>(rng.between(2, 12));
    auto lin = reduce_linear_forms<Q>(
        random_binomial_forms(rng, n, static_cast<std::size_t>(rng.between(1, static_cast<long>(n)))), n);
    auto c = cotangent_classes(lin, n);
    auto closed = enumerate_ltgfan_binomial(c);
    auto fan = ltgfan_linear(lin, n);
    std::size_t product = 1;
    for (const auto& e : c.proper) product *= e.size();
    ++out.cases;
    if (std::set<LeadingTermSet>(closed.begin(), closed.end()) != std::set<LeadingTermSet>(fan.begin(), fan.end()))
      out.fail("case " + std::to_string(k) + ": fans differ");
    else if (fan.size() != product || ltgfan_size(c) != product)
      out.fail("case " + std::to_string(k) + ": size differs from the class product");
  }
  return out;
}

/// (iii) every verified Z-separating tuple, found by brute force over all
/// subsets of the indeterminates, is a candidate of the fan search.
inline PropertyOutcome property_candidate_containment(std::uint64_t seed = 613, int count = 50) {
  PropertyOutcome out;
  Rng rng(seed);
  std::size_t yes = 0, undecided = 0;
  for (int k = 0; k < count; ++k) {
    std::size_t n = static_cast<std::size_t>(rng.between(2, 6));
    auto gens = random_ideal_with_linear_part(rng, n);
    auto lt = ltgfan_linear(linear_part_of_ideal(gens), n);
    ++out.cases;
    for (unsigned mask = 1; mask < (1U << n); ++mask) {
      std::vector<Indet> z;
      for (Indet i = 0; i < n; ++i)
        if (mask & (1U << i)) z.push_back(i);
      GBOptions opt;
      opt.step_limit = 20000;
      opt.deadline = std::chrono::steady_clock::now() + std::chrono::seconds(2);
      auto chk = check_Z_separating(gens, z, n, opt);
      if (chk.verdict == Verdict::inconclusive) ++undecided;
      if (chk.verdict != Verdict::yes) continue;
      ++yes;
      auto cands = gfan_candidates(lt, z.size());
      if (std::find(cands.begin(), cands.end(), z) == cands.end()) {
        std::ostringstream os;
        os << "case " << k << ": separating tuple of size " << z.size() << " missing from the candidates";
        out.fail(os.str());
      }
    }
  }
  out.note = std::to_string(yes) + " separating tuples, " + std::to_string(undecided) + " undecided checks";
  if (yes == 0) out.fail("no separating tuple was found, the check is vacuous");
  return out;
}

/// (iv) the structural statements hold for random order ideals in two indeterminates.
inline PropertyOutcome property_border_structure(std::uint64_t seed = 617, int count = 30) {
  PropertyOutcome out;
  Rng rng(seed);
  for (int k = 0; k < count; ++k) {
    auto rep = verify_structure(BorderBasisScheme<Q>(random_order_ideal(rng, 2, 12)));
    ++out.cases;
    if (!rep.ok()) out.fail("case " + std::to_string(k) + ": " + rep.failures.front());
  }
  return out;
}

}  // namespace reembed::testing

#endif  // REEMBED_TESTS_PROPERTY_SUITE_HPP
