#ifndef REEMBED_SEPARATING_HPP
#define REEMBED_SEPARATING_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "reembed/groebner.hpp"
#include "reembed/linear.hpp"
#include "reembed/matrix.hpp"

namespace reembed {

enum class Verdict { yes, no, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "inconclusive";
  }
}

template <Field F>
struct SeparationCheck {
  Verdict verdict;
  std::vector<Indet> z;
  GBResult<F> gb;
  /// Indeterminates that are leading terms of reduced GB elements; they
  /// minimally generate the linear part of the leading term ideal.
  std::vector<Indet> linear_leading_terms;
};

/// Decides whether <gens> is Z-separating: it is iff every z in Z is the
/// leading term of an element of the reduced GB under an elimination ordering
/// for Z (by default the block ordering built by TermOrdering::elimination).
template <Field F>
SeparationCheck<F> check_Z_separating(std::span<const Poly<F>> gens, std::span<const Indet> z, std::size_t n,
                                      const GBOptions& opt = {}, const TermOrdering* ordering = nullptr) {
  if (z.empty()) throw std::invalid_argument("Z must be non-empty");
  TermOrdering o = ordering ? *ordering : TermOrdering::elimination(z, n);
  if (!o.is_elimination_for(z)) throw std::invalid_argument("ordering is not an elimination ordering for Z");
  auto gb = buchberger(gens, o, opt);
  std::vector<Indet> lin;
  for (const auto& g : gb.basis) {
    Indet i = g.leading(o).first.as_indet();
    if (i != n) lin.push_back(i);
  }
  std::sort(lin.begin(), lin.end());
  Verdict v = Verdict::inconclusive;
  if (gb.complete())
    v = std::all_of(z.begin(), z.end(), [&](Indet i) { return std::binary_search(lin.begin(), lin.end(), i); })
            ? Verdict::yes
            : Verdict::no;
  return {v, std::vector<Indet>(z.begin(), z.end()), std::move(gb), std::move(lin)};
}

template <Field F>
SeparationCheck<F> check_Z_separating(const std::vector<Poly<F>>& gens, const std::vector<Indet>& z, std::size_t n,
                                      const GBOptions& opt = {}, const TermOrdering* ordering = nullptr) {
  return check_Z_separating(std::span<const Poly<F>>(gens), std::span<const Indet>(z), n, opt, ordering);
}

/// Polynomials f_i with leading term z_i under an elimination ordering for Z.
template <Field F>
struct SeparatingTuple {
  std::vector<Poly<F>> polys;
  std::vector<Indet> markers;
  bool coherent = false;
};

/// True iff no z_j divides a term of f_i for i != j.
template <Field F>
bool is_coherent(const SeparatingTuple<F>& t) {
  for (std::size_t i = 0; i < t.polys.size(); ++i)
    for (std::size_t j = 0; j < t.markers.size(); ++j)
      if (i != j && t.polys[i].involves(t.markers[j])) return false;
  return true;
}

/// Limits for substitution loops.
struct SubstitutionGuard {
  std::size_t max_rounds = 64;
  std::size_t max_terms = 200'000;
};

/// Rewrites the tuple so that no marker z_j occurs in f_i for i != j, by
/// repeatedly substituting z_j -> z_j - f_j / c_j, where c_j is the
/// coefficient of z_j in f_j; each f_i is scaled so z_i has coefficient 1.
/// If the guard is hit the result has coherent == false.
template <Field F>
SeparatingTuple<F> coherent_interreduce(SeparatingTuple<F> t, const SubstitutionGuard& guard = {}) {
  const std::size_t s = t.polys.size();
  if (t.markers.size() != s) throw std::invalid_argument("marker count does not match tuple size");
  if (s == 0) {
    t.coherent = true;
    return t;
  }
  const std::size_t n = t.polys.front().arity();
  auto normalize = [&](std::size_t i) {
    F c = t.polys[i].coefficient(Term::indet(n, t.markers[i]));
    if (is_zero(c)) throw std::domain_error("marker does not occur linearly in its polynomial");
    t.polys[i] *= F(F(1) / c);
  };
  for (std::size_t i = 0; i < s; ++i) normalize(i);
  for (std::size_t round = 0; round < guard.max_rounds; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < s; ++i) {
      std::map<Indet, Poly<F>> images;
      for (std::size_t j = 0; j < s; ++j)
        if (j != i && t.polys[i].involves(t.markers[j]))
          images.emplace(t.markers[j], Poly<F>::indet(n, t.markers[j]) - t.polys[j]);
      if (images.empty()) continue;
      t.polys[i] = t.polys[i].substitute(images);
      if (t.polys[i].size() > guard.max_terms) return t;
      normalize(i);
      changed = true;
    }
    if (!changed) {
      t.coherent = true;
      return t;
    }
  }
  t.coherent = is_coherent(t);
  return t;
}

/// Substitutes z_i -> z_i - f_i (that is, z_i -> h_i for f_i = z_i - h_i) in
/// every generator until no marker remains, and returns the non-zero results.
/// They generate I intersected with K[Y]; an empty result means the zero ideal.
template <Field F>
std::vector<Poly<F>> eliminate_by_substitution(std::span<const Poly<F>> gens, const SeparatingTuple<F>& coh,
                                               const SubstitutionGuard& guard = {}) {
  if (!coh.coherent) throw std::invalid_argument("elimination by substitution needs a coherent tuple");
  std::vector<Poly<F>> out;
  if (gens.empty()) return out;
  const std::size_t n = gens.front().arity();
  std::map<Indet, Poly<F>> images;
  for (std::size_t i = 0; i < coh.polys.size(); ++i) {
    F c = coh.polys[i].coefficient(Term::indet(n, coh.markers[i]));
    images.emplace(coh.markers[i], Poly<F>::indet(n, coh.markers[i]) - coh.polys[i] * F(F(1) / c));
  }
  auto involves_marker = [&](const Poly<F>& f) {
    return std::any_of(coh.markers.begin(), coh.markers.end(), [&](Indet z) { return f.involves(z); });
  };
  for (const auto& g : gens) {
    Poly<F> f = g;
    std::size_t round = 0;
    while (involves_marker(f)) {
      if (++round > guard.max_rounds) throw std::runtime_error("substitution did not reach a fixed point within the guard");
      f = f.substitute(images);
      if (f.size() > guard.max_terms) throw std::runtime_error("substitution exceeded the term limit of the guard");
    }
    if (!f.is_zero()) out.push_back(std::move(f));
  }
  return out;
}

template <Field F>
std::vector<Poly<F>> eliminate_by_substitution(const std::vector<Poly<F>>& gens, const SeparatingTuple<F>& coh,
                                               const SubstitutionGuard& guard = {}) {
  return eliminate_by_substitution(std::span<const Poly<F>>(gens), coh, guard);
}

namespace detail {

// Embeds f into a ring with `extra` new indeterminates placed first.
template <Field F>
Poly<F> shift_indets(const Poly<F>& f, std::size_t extra) {
  std::vector<typename Poly<F>::Entry> e;
  for (const auto& [t, c] : f) {
    std::vector<std::uint32_t> x(extra, 0);
    x.insert(x.end(), t.exponents().begin(), t.exponents().end());
    e.emplace_back(Term(std::move(x)), c);
  }
  return Poly<F>::from_entries(f.arity() + extra, std::move(e));
}

// Inverse of shift_indets for polynomials free of the first `extra` indeterminates.
template <Field F>
Poly<F> drop_leading_indets(const Poly<F>& f, std::size_t extra) {
  std::vector<typename Poly<F>::Entry> e;
  for (const auto& [t, c] : f) {
    for (std::size_t i = 0; i < extra; ++i)
      if (t[i]) throw std::logic_error("polynomial involves an eliminated indeterminate");
    e.emplace_back(Term(std::vector<std::uint32_t>(t.exponents().begin() + extra, t.exponents().end())), c);
  }
  return Poly<F>::from_entries(f.arity() - extra, std::move(e));
}

}  // namespace detail

/// Generators of the colon ideal <gens> : f, through <gens> intersected with
/// <f>, which is obtained by eliminating t from t<gens> + (1-t)<f>.
/// Returns nullopt when the budget runs out.
template <Field F>
std::optional<std::vector<Poly<F>>> colon_ideal(std::span<const Poly<F>> gens, const Poly<F>& f,
                                                const GBOptions& opt = {}) {
  if (f.is_zero()) throw std::invalid_argument("colon by the zero polynomial");
  const std::size_t n = f.arity();
  std::vector<Poly<F>> ext;
  Poly<F> t = Poly<F>::indet(n + 1, 0);
  for (const auto& g : gens) ext.push_back(t * detail::shift_indets(g, 1));
  ext.push_back((Poly<F>::constant(n + 1, F(1)) - t) * detail::shift_indets(f, 1));
  std::vector<Indet> z{0};
  auto gb = buchberger(ext, TermOrdering::elimination(z, n + 1), opt);
  if (!gb.complete()) return std::nullopt;
  std::vector<Poly<F>> out;
  for (const auto& g : gb.basis)
    if (!g.involves(0)) out.push_back(exact_divide(detail::drop_leading_indets(g, 1), f));
  return out;
}

/// Size limits for check_regular_sequence.
inline constexpr std::size_t regular_sequence_max_indets = 6;
inline constexpr long regular_sequence_max_degree = 8;

/// Whether (f_1, ..., f_s) is a regular sequence in P: <F> is proper and
/// <f_1..f_{i-1}> : f_i = <f_1..f_{i-1}> for every i. With `permutable` every
/// ordering of the sequence is checked. Refuses (throws) inputs beyond 6
/// indeterminates or degree 8.
template <Field F>
Verdict check_regular_sequence(std::span<const Poly<F>> seq, bool permutable = false, const GBOptions& opt = {}) {
  if (seq.empty()) throw std::invalid_argument("empty sequence");
  const std::size_t n = seq.front().arity();
  if (n > regular_sequence_max_indets) throw std::invalid_argument("regular sequence check limited to 6 indeterminates");
  for (const auto& f : seq) {
    if (f.is_zero()) throw std::invalid_argument("sequence contains the zero polynomial");
    if (f.total_degree() > regular_sequence_max_degree)
      throw std::invalid_argument("regular sequence check limited to degree 8");
  }
  auto o = TermOrdering::degrevlex(n);
  auto whole = buchberger(seq, o, opt);
  if (!whole.complete()) return Verdict::inconclusive;
  if (whole.basis.size() == 1 && whole.basis.front().total_degree() == 0) return Verdict::no;

  std::vector<std::size_t> perm(seq.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  bool saw_abort = false;
  do {
    std::vector<Poly<F>> prefix;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      const Poly<F>& f = seq[perm[i]];
      if (!prefix.empty()) {
        auto colon = colon_ideal<F>(prefix, f, opt);
        auto base = buchberger(prefix, o, opt);
        if (!colon || !base.complete()) {
          saw_abort = true;
          break;
        }
        for (const auto& q : *colon)
          if (!normal_form(q, base.basis, o).is_zero()) return Verdict::no;
      }
      prefix.push_back(f);
    }
  } while (permutable && std::next_permutation(perm.begin(), perm.end()));
  return saw_abort ? Verdict::inconclusive : Verdict::yes;
}

template <Field F>
Verdict check_regular_sequence(const std::vector<Poly<F>>& seq, bool permutable = false, const GBOptions& opt = {}) {
  return check_regular_sequence(std::span<const Poly<F>>(seq), permutable, opt);
}

}  // namespace reembed

#endif  // REEMBED_SEPARATING_HPP
