#ifndef REEMBED_REEMBED_HPP
#define REEMBED_REEMBED_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "reembed/cotangent.hpp"
#include "reembed/groebner.hpp"
#include "reembed/linear.hpp"
#include "reembed/linear_gfan.hpp"
#include "reembed/separating.hpp"

namespace reembed {

/// A verified Z-separating re-embedding P/I -> K[Y]/(I intersected with K[Y]).
template <Field F>
struct Reembedding {
  std::vector<Indet> z;
  std::vector<Indet> y;
  /// z_i -> h_i with h_i in K[Y].
  std::map<Indet, Poly<F>> substitution;
  /// Reduced GB of I intersected with K[Y]; empty for an affine cell.
  std::vector<Poly<F>> elimination_gens;
  bool optimal = false;
  /// Unset when the substitution check hit its guard.
  std::optional<bool> affine_cell;
  GBResult<F> certificate;
};

struct CandidateOutcome {
  std::vector<Indet> z;
  Verdict verdict = Verdict::inconclusive;
  std::vector<Indet> linear_leading_terms;
  std::uint64_t steps = 0;
  AbortReason reason = AbortReason::none;
};

enum class SearchStatus { found, not_found, inconclusive };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::not_found: return "not-found";
    default: return "inconclusive";
  }
}

template <Field F>
struct SearchResult {
  SearchStatus status = SearchStatus::not_found;
  std::size_t lin_dim = 0;
  std::vector<std::vector<Indet>> candidates;
  /// Outcomes in candidate order. In first-success mode candidates after the
  /// first success are omitted.
  std::vector<CandidateOutcome> trace;
  std::vector<Reembedding<F>> found;
  /// Candidates whose check aborted or never started before the wall budget ran out.
  std::vector<std::vector<Indet>> unverified;
  /// Set when the cotangent search fell back to fan candidates because the
  /// linear part is not binomial.
  bool used_fan_candidates = false;
};

struct SearchOptions {
  /// Per-candidate GB options; deadline and cancel are managed by the search.
  GBOptions gb;
  std::optional<std::chrono::steady_clock::duration> wall_budget;
  std::size_t threads = 1;
  /// Verify every candidate instead of stopping at the first success.
  bool all = false;
  std::size_t max_candidates = 1'000'000;
};

template <Field F>
std::optional<bool> certify_affine_cell(const Reembedding<F>& r, std::span<const Poly<F>> gens,
                                        const SubstitutionGuard& guard = {});

namespace detail {

template <Field F>
void check_search_input(std::span<const Poly<F>> gens, std::size_t n, std::size_t lin_dim, const GBOptions& gb) {
  if (n <= 1) throw std::invalid_argument("re-embedding search needs at least two indeterminates");
  for (const auto& g : gens) {
    if (g.arity() != n) throw std::invalid_argument("generator arity mismatch");
    if (!is_zero(g.constant_term())) throw std::invalid_argument("generators must lie in the maximal ideal at the origin");
  }
  if (lin_dim < n) return;
  // Lin(I) = P_1 leaves I = M as the only way for the quotient to be K.
  auto res = buchberger(gens, TermOrdering::degrevlex(n), gb);
  if (res.complete() && res.basis.size() == n &&
      std::all_of(res.basis.begin(), res.basis.end(), [&](const Poly<F>& f) { return f.size() == 1; }))
    throw std::invalid_argument("the ideal is the maximal ideal at the origin");
}

template <Field F>
Reembedding<F> make_reembedding(SeparationCheck<F>&& chk, std::size_t n, std::size_t lin_dim) {
  std::vector<Indet> z = chk.z, y;
  std::sort(z.begin(), z.end());
  for (Indet i = 0; i < n; ++i)
    if (!std::binary_search(z.begin(), z.end(), i)) y.push_back(i);
  std::map<Indet, Poly<F>> subst;
  std::vector<Poly<F>> rest;
  const auto& o = chk.gb.ordering;
  for (const auto& g : chk.gb.basis) {
    Indet lead = g.leading(o).first.as_indet();
    if (lead != n && std::binary_search(z.begin(), z.end(), lead)) {
      Poly<F> h = Poly<F>::indet(n, lead) - g;
      for (Indet zi : z)
        if (h.involves(zi)) throw std::logic_error("reduced GB element is not of the form z - h(Y)");
      subst.emplace(lead, std::move(h));
    } else {
      rest.push_back(g);
    }
  }
  bool optimal = z.size() == lin_dim;
  return {std::move(z), std::move(y), std::move(subst), std::move(rest), optimal, std::nullopt, std::move(chk.gb)};
}

// Verifies candidates on a pool of threads. In first-success mode every
// candidate up to the lowest-index success is decided and later ones are
// cancelled, so the outcome does not depend on the thread count.
template <Field F>
std::vector<std::optional<SeparationCheck<F>>> verify_candidates(std::span<const Poly<F>> gens, std::size_t n,
                                                                 const std::vector<std::vector<Indet>>& cands,
                                                                 const SearchOptions& opt) {
  const std::size_t count = cands.size();
  std::vector<std::optional<SeparationCheck<F>>> out(count);
  auto cancel = std::make_unique<std::atomic<bool>[]>(count);
  for (std::size_t i = 0; i < count; ++i) cancel[i] = false;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::optional<std::chrono::steady_clock::time_point> deadline = opt.gb.deadline;
  if (opt.wall_budget) {
    auto d = std::chrono::steady_clock::now() + *opt.wall_budget;
    deadline = deadline ? std::min(*deadline, d) : d;
  }
  std::mutex running_mutex;
  std::set<std::size_t> running;

  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= count || i > best.load()) return;
      if (deadline && std::chrono::steady_clock::now() >= *deadline) continue;
      {
        std::lock_guard lock(running_mutex);
        running.insert(i);
      }
      GBOptions g = opt.gb;
      g.deadline = deadline;
      g.cancel = &cancel[i];
      auto chk = check_Z_separating<F>(gens, cands[i], n, g);
      bool success = chk.verdict == Verdict::yes;
      bool cancelled = chk.gb.reason == AbortReason::cancelled;
      {
        std::lock_guard lock(running_mutex);
        running.erase(i);
        if (!cancelled) out[i] = std::move(chk);
        if (success && !opt.all) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          for (std::size_t r : running)
            if (r > best.load()) cancel[r] = true;
        }
      }
    }
  };

  std::size_t threads = std::max<std::size_t>(1, std::min(opt.threads, count));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (!opt.all && best.load() < count)
    for (std::size_t i = best.load() + 1; i < count; ++i) out[i].reset();
  return out;
}

template <Field F>
SearchResult<F> run_search(std::span<const Poly<F>> gens, std::size_t n, std::size_t lin_dim,
                           std::vector<std::vector<Indet>> cands, const SearchOptions& opt) {
  SearchResult<F> res;
  res.lin_dim = lin_dim;
  res.candidates = std::move(cands);
  auto checks = verify_candidates<F>(gens, n, res.candidates, opt);
  std::size_t stop = res.candidates.size();
  if (!opt.all)
    for (std::size_t i = 0; i < checks.size(); ++i)
      if (checks[i] && checks[i]->verdict == Verdict::yes) {
        stop = i + 1;
        break;
      }
  bool undecided = false;
  for (std::size_t i = 0; i < stop; ++i) {
    if (!checks[i]) {
      res.unverified.push_back(res.candidates[i]);
      res.trace.push_back({res.candidates[i], Verdict::inconclusive, {}, 0, AbortReason::deadline});
      undecided = true;
      continue;
    }
    auto& chk = *checks[i];
    res.trace.push_back({chk.z, chk.verdict, chk.linear_leading_terms, chk.gb.steps, chk.gb.reason});
    if (chk.verdict == Verdict::inconclusive) {
      res.unverified.push_back(res.candidates[i]);
      undecided = true;
    } else if (chk.verdict == Verdict::yes) {
      res.found.push_back(make_reembedding(std::move(chk), n, lin_dim));
      res.found.back().affine_cell = certify_affine_cell<F>(res.found.back(), gens);
    }
  }
  res.status = !res.found.empty() ? SearchStatus::found : undecided ? SearchStatus::inconclusive : SearchStatus::not_found;
  return res;
}

}  // namespace detail

/// All s-subsets of the leading-term sets, deduplicated and sorted lexicographically.
inline std::vector<std::vector<Indet>> gfan_candidates(const std::vector<LeadingTermSet>& lt_sets, std::size_t s) {
  std::set<std::vector<Indet>> out;
  for (const auto& lt : lt_sets)
    detail::for_each_subset(lt.size(), s, [&](const IndexTuple& idx) {
      std::vector<Indet> z;
      for (auto k : idx) z.push_back(lt[k]);
      out.insert(std::move(z));
    });
  return {out.begin(), out.end()};
}

/// Candidates from cotangent classes. Optimal-only yields E_0 u E_1* u ... u E_q*;
/// otherwise every non-empty Z_0 u ... u Z_q with Z_0 in E_0 and Z_i a proper
/// subset of E_i. Choices vary slowest on the first class; members by index.
inline std::vector<std::vector<Indet>> cotangent_candidates(const CotangentClasses& c, bool optimal_only,
                                                            std::size_t max_candidates = 1'000'000) {
  std::vector<std::vector<Indet>> out;
  if (optimal_only) {
    for (auto& s : enumerate_ltgfan_binomial(c))
      if (!s.empty()) out.push_back(std::move(s));
    return out;
  }
  std::vector<std::vector<Indet>> classes{c.trivial};
  classes.insert(classes.end(), c.proper.begin(), c.proper.end());
  // Per class, the admissible subsets as bitmasks over its members.
  std::vector<std::vector<std::uint64_t>> choices;
  double total = 1;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (classes[k].size() >= 63) throw std::length_error("cotangent class too large to enumerate");
    std::uint64_t full = (std::uint64_t{1} << classes[k].size()) - 1;
    std::vector<std::uint64_t> masks;
    for (std::uint64_t m = 0; m <= full; ++m)
      if (k == 0 || m != full) masks.push_back(m);
    total *= static_cast<double>(masks.size());
    choices.push_back(std::move(masks));
  }
  if (total > static_cast<double>(max_candidates)) throw std::length_error("too many cotangent candidates");
  std::vector<std::size_t> pick(classes.size(), 0);
  while (true) {
    std::vector<Indet> z;
    for (std::size_t k = 0; k < classes.size(); ++k)
      for (std::size_t b = 0; b < classes[k].size(); ++b)
        if (choices[k][pick[k]] >> b & 1) z.push_back(classes[k][b]);
    if (!z.empty()) {
      std::sort(z.begin(), z.end());
      out.push_back(std::move(z));
    }
    std::size_t k = pick.size();
    while (k > 0 && pick[k - 1] + 1 == choices[k - 1].size()) pick[--k] = 0;
    if (k == 0) break;
    ++pick[k - 1];
  }
  return out;
}

/// Searches for a Z-separating re-embedding with |Z| = s among the s-subsets
/// of the leading-term sets of the Groebner fan of <Lin(I)>. Returns the first
/// success, or all of them with opt.all. NotFound only rules out Z-separating
/// re-embeddings of this size, and only when every check completed.
template <Field F>
SearchResult<F> find_reembedding_via_gfan(std::span<const Poly<F>> gens, std::size_t n, std::size_t s,
                                          const SearchOptions& opt = {}) {
  auto lin = linear_part_of_ideal<F>(gens, n);
  detail::check_search_input(gens, n, lin.size(), opt.gb);
  if (s == 0 || s > lin.size()) throw std::invalid_argument("target size must lie between 1 and dim Lin(I)");
  auto cands = gfan_candidates(ltgfan_linear<F>(lin, n), s);
  if (cands.size() > opt.max_candidates) throw std::length_error("too many candidates");
  return detail::run_search<F>(gens, n, lin.size(), std::move(cands), opt);
}

template <Field F>
SearchResult<F> find_reembedding_via_gfan(const std::vector<Poly<F>>& gens, std::size_t n, std::size_t s,
                                          const SearchOptions& opt = {}) {
  return find_reembedding_via_gfan(std::span<const Poly<F>>(gens), n, s, opt);
}

/// Verifies every candidate built from the cotangent classes and returns all
/// that succeed. Linear parts that are not binomial fall back to the fan
/// candidates (of size dim Lin(I) when optimal_only, else of every size).
template <Field F>
SearchResult<F> find_reembedding_via_cotangent(std::span<const Poly<F>> gens, std::size_t n, bool optimal_only,
                                               SearchOptions opt = {}) {
  auto lin = linear_part_of_ideal<F>(gens, n);
  detail::check_search_input(gens, n, lin.size(), opt.gb);
  opt.all = true;
  std::vector<std::vector<Indet>> cands;
  bool fallback = !detail::all_binomial<F>(lin);
  if (!fallback) {
    cands = cotangent_candidates(cotangent_classes<F>(lin, n), optimal_only, opt.max_candidates);
  } else if (!lin.empty()) {
    auto lt = ltgfan_linear<F>(lin, n);
    for (std::size_t s = optimal_only ? lin.size() : 1; s <= lin.size(); ++s)
      for (auto& z : gfan_candidates(lt, s)) cands.push_back(std::move(z));
    if (cands.size() > opt.max_candidates) throw std::length_error("too many candidates");
  }
  auto res = detail::run_search<F>(gens, n, lin.size(), std::move(cands), opt);
  res.used_fan_candidates = fallback;
  return res;
}

template <Field F>
SearchResult<F> find_reembedding_via_cotangent(const std::vector<Poly<F>>& gens, std::size_t n, bool optimal_only,
                                               const SearchOptions& opt = {}) {
  return find_reembedding_via_cotangent(std::span<const Poly<F>>(gens), n, optimal_only, opt);
}

struct OptimalityReport {
  bool optimal = false;
  /// Structural facts are checked only for binomial linear parts.
  bool structure_checked = false;
  bool trivial_in_z = true;
  bool one_y_per_proper_class = true;
};

/// |Z| = dim Lin(I); for binomial linear parts also the class structure that
/// every optimal Z has: E_0 inside Z and exactly one Y-member per proper class.
template <Field F>
OptimalityReport optimality_report(const Reembedding<F>& r, std::span<const Poly<F>> gens) {
  const std::size_t n = r.z.size() + r.y.size();
  auto lin = linear_part_of_ideal<F>(gens, n);
  OptimalityReport rep;
  rep.optimal = r.z.size() == lin.size();
  if (!rep.optimal || !detail::all_binomial<F>(lin)) return rep;
  rep.structure_checked = true;
  auto c = cotangent_classes<F>(lin, n);
  auto in_z = [&](Indet i) { return std::binary_search(r.z.begin(), r.z.end(), i); };
  rep.trivial_in_z = std::all_of(c.trivial.begin(), c.trivial.end(), in_z);
  for (const auto& cls : c.proper)
    if (std::count_if(cls.begin(), cls.end(), [&](Indet i) { return !in_z(i); }) != 1)
      rep.one_y_per_proper_class = false;
  return rep;
}

template <Field F>
bool certify_optimal(const Reembedding<F>& r, std::span<const Poly<F>> gens) {
  auto rep = optimality_report(r, gens);
  return rep.optimal && rep.trivial_in_z && rep.one_y_per_proper_class;
}

template <Field F>
bool certify_optimal(const Reembedding<F>& r, const std::vector<Poly<F>>& gens) {
  return certify_optimal(r, std::span<const Poly<F>>(gens));
}

/// True iff substituting z_i -> h_i sends every generator to zero, so that
/// P/I is isomorphic to K[Y]. Also cross-checks the GB certificate and that
/// the tuple (z_i - h_i) then generates I. Unset if the substitution guard trips.
template <Field F>
std::optional<bool> certify_affine_cell(const Reembedding<F>& r, std::span<const Poly<F>> gens,
                                        const SubstitutionGuard& guard) {
  const std::size_t n = r.z.size() + r.y.size();
  SeparatingTuple<F> tuple;
  for (const auto& [z, h] : r.substitution) {
    tuple.polys.push_back(Poly<F>::indet(n, z) - h);
    tuple.markers.push_back(z);
  }
  tuple.coherent = is_coherent(tuple);
  std::vector<Poly<F>> rest;
  try {
    rest = eliminate_by_substitution(gens, tuple, guard);
  } catch (const std::runtime_error&) {
    return std::nullopt;
  }
  bool cell = rest.empty();
  if (cell != r.elimination_gens.empty())
    throw std::logic_error("substitution and Groebner basis disagree on the elimination ideal");
  if (cell) {
    // Every generator lies in <z_i - h_i>, and the z_i - h_i lie in I.
    const auto& gb = r.certificate;
    for (const auto& f : tuple.polys)
      if (!normal_form(f, gb.basis, gb.ordering).is_zero())
        throw std::logic_error("separating tuple is not contained in the ideal");
  }
  return cell;
}

template <Field F>
std::optional<bool> certify_affine_cell(const Reembedding<F>& r, const std::vector<Poly<F>>& gens,
                                        const SubstitutionGuard& guard = {}) {
  return certify_affine_cell(r, std::span<const Poly<F>>(gens), guard);
}

}  // namespace reembed

#endif  // REEMBED_REEMBED_HPP
