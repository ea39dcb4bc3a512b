#ifndef REEMBED_TESTS_SUPPORT_HPP
#define REEMBED_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "reembed/field.hpp"
#include "reembed/linear.hpp"
#include "reembed/matrix.hpp"
#include "reembed/poly.hpp"
#include "reembed/ring.hpp"
#include "reembed/text.hpp"

namespace reembed::testing {

using Q = Rational;

/// Fixed-seed generator with the few draws the tests need.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long between(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(between(0, static_cast<long>(n) - 1)); }

  /// Small non-zero rational p/q with |p| <= num, 1 <= q <= den.
  Q nonzero(long num = 5, long den = 3) {
    long p = 0;
    while (p == 0) p = between(-num, num);
    return FieldTraits<Q>::from_fraction(Integer(p), Integer(between(1, den)));
  }
  Q small(long num = 3, long den = 2) { return coin(0.3) ? Q(0) : nonzero(num, den); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), gen_);
  }

 private:
  std::mt19937_64 gen_;
};

inline Ring numbered_ring(std::size_t n, const std::string& stem = "x") {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(stem + std::to_string(i + 1));
  return Ring(std::move(names));
}

inline Poly<Q> P(const Ring& r, std::string_view s) { return parse_poly<Q>(r, s); }
inline std::vector<Poly<Q>> PL(const Ring& r, std::string_view s) { return parse_poly_list<Q>(r, s); }

/// Determinant by cofactor expansion along the first row. Exponential, but
/// independent of the elimination code it is used to check.
inline Q cofactor_determinant(const std::vector<std::vector<Q>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Q(1);
  if (n == 1) return m[0][0];
  Q det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (sgn(m[0][c]) == 0) continue;
    std::vector<std::vector<Q>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Q> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    Q term = m[0][c] * cofactor_determinant(minor);
    det += c % 2 == 0 ? term : Q(-term);
  }
  return det;
}

/// Column tuples with a non-zero maximal minor, by cofactor expansion.
inline std::vector<std::vector<std::size_t>> bases_by_cofactors(const Matrix<Q>& a) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t r = a.rows(), n = a.cols();
  std::vector<std::size_t> idx(r);
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(std::min(r, n)), true);
  if (r > n) return out;
  do {
    idx.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (pick[j]) idx.push_back(j);
    std::vector<std::vector<Q>> sq(r);
    for (std::size_t i = 0; i < r; ++i)
      for (auto j : idx) sq[i].push_back(a(i, j));
    if (sgn(cofactor_determinant(sq)) != 0) out.push_back(idx);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::sort(out.begin(), out.end());
  return out;
}

/// Leading indeterminates of the reduced basis of the span of `lin` under o:
/// the pivots of the echelon form with columns listed from the o-largest
/// indeterminate down.
inline std::vector<Indet> leading_indets(const std::vector<Poly<Q>>& lin, std::size_t n, const TermOrdering& o) {
  std::vector<Indet> perm(n);
  std::iota(perm.begin(), perm.end(), Indet{0});
  std::sort(perm.begin(), perm.end(),
            [&](Indet a, Indet b) { return o.greater(Term::indet(n, a), Term::indet(n, b)); });
  auto p = rref(coefficient_matrix(lin, n).columns(perm));
  std::vector<Indet> out;
  for (auto c : p.pivots) out.push_back(perm[c]);
  std::sort(out.begin(), out.end());
  return out;
}

/// Random polynomial with `terms` terms of total degree between lo and hi.
inline Poly<Q> random_poly(Rng& rng, std::size_t n, std::size_t terms, unsigned lo, unsigned hi) {
  std::vector<Poly<Q>::Entry> e;
  for (std::size_t k = 0; k < terms; ++k) {
    std::vector<std::uint32_t> x(n, 0);
    auto d = static_cast<unsigned>(rng.between(lo, hi));
    for (unsigned s = 0; s < d; ++s) ++x[rng.index(n)];
    e.emplace_back(Term(std::move(x)), rng.nonzero());
  }
  return Poly<Q>::from_entries(n, std::move(e));
}

}  // namespace reembed::testing

#endif  // REEMBED_TESTS_SUPPORT_HPP
