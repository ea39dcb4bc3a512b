#ifndef REEMBED_GROEBNER_HPP
#define REEMBED_GROEBNER_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "reembed/ordering.hpp"
#include "reembed/poly.hpp"

namespace reembed {

enum class GBStatus { complete, aborted };

enum class AbortReason { none, step_limit, deadline, cancelled };

inline constexpr std::uint64_t default_step_limit = 1'000'000;

struct GBOptions {
  /// Budget of elementary reduction steps (one subtraction of a term
  /// multiple of a basis element, including S-polynomial formation).
  std::uint64_t step_limit = default_step_limit;
  /// Select pairs by sugar degree instead of the lcm degree.
  bool sugar = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  const std::atomic<bool>* cancel = nullptr;
};

template <Field F>
struct GBResult {
  /// Reduced, monic and sorted by leading term descending when complete; the
  /// partial basis otherwise.
  std::vector<Poly<F>> basis;
  TermOrdering ordering;
  GBStatus status = GBStatus::complete;
  AbortReason reason = AbortReason::none;
  std::uint64_t steps = 0;

  bool complete() const { return status == GBStatus::complete; }
  std::vector<Term> leading_terms() const {
    std::vector<Term> lt;
    for (const auto& g : basis) lt.push_back(g.leading(ordering).first);
    return lt;
  }
};

namespace detail {

struct GBAbort {
  AbortReason reason;
};

// Polynomial with terms stored as rows [weights | exponents], sorted
// descending by weights. Weights are additive, so monomial products are
// elementwise sums and comparisons never revisit the ordering matrix.
template <Field F>
struct FlatPoly {
  std::vector<std::int64_t> mon;
  std::vector<F> coef;
  long sugar = 0;
  std::size_t size() const { return coef.size(); }
  bool empty() const { return coef.empty(); }
};

template <Field F>
class Buchberger {
 public:
  Buchberger(const TermOrdering& o, const GBOptions& opt)
      : ord_(o), opt_(opt), n_(o.arity()), k_(o.rows().size()), s_(n_ + k_) {}

  GBResult<F> run(std::span<const Poly<F>> gens) {
    GBResult<F> res{{}, ord_, GBStatus::complete, AbortReason::none, 0};
    try {
      for (const auto& g : gens) {
        if (g.arity() != n_) throw std::invalid_argument("generator arity does not match the ordering");
        FlatPoly<F> f = to_flat(g);
        reduce(f, true, npos);
        if (!f.empty()) insert(std::move(f));
      }
      while (!pairs_.empty()) {
        Pair p = pop_pair();
        FlatPoly<F> f = spoly(p);
        reduce(f, true, npos);
        if (!f.empty()) insert(std::move(f));
      }
      interreduce();
    } catch (const GBAbort& a) {
      res.status = GBStatus::aborted;
      res.reason = a.reason;
    }
    res.steps = steps_;
    for (const auto& e : basis_)
      if (e.active) res.basis.push_back(from_flat(e.p));
    if (res.complete())
      std::sort(res.basis.begin(), res.basis.end(), [&](const Poly<F>& a, const Poly<F>& b) {
        return ord_.greater(a.leading(ord_).first, b.leading(ord_).first);
      });
    return res;
  }

  /// Normal form of f with respect to the given polynomials (no budget).
  Poly<F> normal_form(const Poly<F>& f, std::span<const Poly<F>> basis) {
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      FlatPoly<F> p = to_flat(g);
      make_monic(p);
      std::uint64_t m = mask(lead(p));
      basis_.push_back({std::move(p), m, true});
    }
    FlatPoly<F> r = to_flat(f);
    reduce(r, true, npos);
    return from_flat(r);
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Elem {
    FlatPoly<F> p;
    std::uint64_t mask;
    bool active;
  };
  struct Pair {
    std::size_t i, j;
    std::vector<std::int64_t> lcm;
    long degree;
    long sugar;
  };

  const std::int64_t* lead(const FlatPoly<F>& p) const { return p.mon.data(); }
  const std::int64_t* mon(const FlatPoly<F>& p, std::size_t t) const { return p.mon.data() + t * s_; }

  int cmp(const std::int64_t* a, const std::int64_t* b) const {
    for (std::size_t r = 0; r < k_; ++r)
      if (a[r] != b[r]) return a[r] < b[r] ? -1 : 1;
    return 0;
  }
  bool divides(const std::int64_t* a, const std::int64_t* b) const {
    for (std::size_t i = k_; i < s_; ++i)
      if (a[i] > b[i]) return false;
    return true;
  }
  bool same_exps(const std::int64_t* a, const std::int64_t* b) const {
    return std::equal(a + k_, a + s_, b + k_);
  }
  bool coprime(const std::int64_t* a, const std::int64_t* b) const {
    for (std::size_t i = k_; i < s_; ++i)
      if (a[i] && b[i]) return false;
    return true;
  }
  long degree(const std::int64_t* a) const {
    long d = 0;
    for (std::size_t i = k_; i < s_; ++i) d += a[i];
    return d;
  }
  std::uint64_t mask(const std::int64_t* a) const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (a[k_ + i]) m |= std::uint64_t{1} << (i % 64);
    return m;
  }
  void set_weights(std::int64_t* a) const {
    const auto& rows = ord_.rows();
    for (std::size_t r = 0; r < k_; ++r) {
      std::int64_t w = 0;
      for (std::size_t i = 0; i < n_; ++i) w += rows[r][i] * a[k_ + i];
      a[r] = w;
    }
  }
  std::vector<std::int64_t> lcm(const std::int64_t* a, const std::int64_t* b) const {
    std::vector<std::int64_t> l(s_);
    for (std::size_t i = k_; i < s_; ++i) l[i] = std::max(a[i], b[i]);
    set_weights(l.data());
    return l;
  }

  FlatPoly<F> to_flat(const Poly<F>& f) const {
    std::vector<std::size_t> order(f.size());
    std::vector<std::int64_t> raw(f.size() * s_);
    for (std::size_t t = 0; t < f.size(); ++t) {
      const Term& term = f.terms()[t].first;
      for (std::size_t i = 0; i < n_; ++i) raw[t * s_ + k_ + i] = term[i];
      set_weights(raw.data() + t * s_);
      order[t] = t;
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return cmp(raw.data() + a * s_, raw.data() + b * s_) > 0; });
    FlatPoly<F> p;
    p.mon.reserve(raw.size());
    for (std::size_t t : order) {
      p.mon.insert(p.mon.end(), raw.begin() + t * s_, raw.begin() + (t + 1) * s_);
      p.coef.push_back(f.terms()[t].second);
    }
    p.sugar = f.total_degree();
    return p;
  }

  Poly<F> from_flat(const FlatPoly<F>& p) const {
    std::vector<typename Poly<F>::Entry> e;
    e.reserve(p.size());
    for (std::size_t t = 0; t < p.size(); ++t) {
      std::vector<std::uint32_t> x(n_);
      for (std::size_t i = 0; i < n_; ++i) x[i] = static_cast<std::uint32_t>(mon(p, t)[k_ + i]);
      e.emplace_back(Term(std::move(x)), p.coef[t]);
    }
    return Poly<F>::from_entries(n_, std::move(e));
  }

  void make_monic(FlatPoly<F>& p) const {
    if (p.empty() || p.coef[0] == F(1)) return;
    F inv = F(F(1) / p.coef[0]);
    for (auto& c : p.coef) c = F(c * inv);
  }

  void tick() {
    ++steps_;
    if (steps_ > opt_.step_limit) throw GBAbort{AbortReason::step_limit};
    if ((steps_ & 255U) == 0) {
      if (opt_.cancel && opt_.cancel->load(std::memory_order_relaxed)) throw GBAbort{AbortReason::cancelled};
      if (opt_.deadline && std::chrono::steady_clock::now() > *opt_.deadline) throw GBAbort{AbortReason::deadline};
    }
  }

  // Appends term `t` of `src` to `dst`, moving its coefficient.
  void move_term(FlatPoly<F>& dst, FlatPoly<F>& src, std::size_t t) const {
    dst.mon.insert(dst.mon.end(), src.mon.begin() + t * s_, src.mon.begin() + (t + 1) * s_);
    dst.coef.push_back(std::move(src.coef[t]));
  }

  // f <- f - c * t * g, keeping only the terms after position `from`, whose
  // term c * t * lead(g) cancels exactly. scratch_ is the output buffer so
  // its allocations are reused.
  void subtract_multiple(FlatPoly<F>& f, std::size_t from, const F& c, const std::int64_t* t, const FlatPoly<F>& g) {
    FlatPoly<F>& r = scratch_;
    r.mon.clear();
    r.coef.clear();
    r.sugar = f.sugar;
    std::size_t a = from + 1, b = 1;
    auto load_b = [&] {
      const std::int64_t* gm = mon(g, b);
      for (std::size_t x = 0; x < s_; ++x) m_[x] = gm[x] + t[x];
    };
    if (b < g.size()) load_b();
    F v;
    while (a < f.size() || b < g.size()) {
      int c0 = a == f.size() ? -1 : b == g.size() ? 1 : cmp(mon(f, a), m_.data());
      if (c0 > 0) {
        move_term(r, f, a++);
      } else if (c0 < 0) {
        r.mon.insert(r.mon.end(), m_.begin(), m_.end());
        v = c * g.coef[b];
        r.coef.push_back(-v);
        if (++b < g.size()) load_b();
      } else {
        v = c * g.coef[b];
        f.coef[a] -= v;
        if (!is_zero(f.coef[a])) move_term(r, f, a);
        ++a;
        if (++b < g.size()) load_b();
      }
    }
    std::swap(f, r);
  }

  std::size_t find_reducer(const std::int64_t* m, std::size_t skip) const {
    std::uint64_t mm = mask(m);
    std::size_t best = npos;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      const Elem& e = basis_[j];
      if (!e.active || j == skip || (e.mask & ~mm) != 0) continue;
      if (!divides(lead(e.p), m)) continue;
      if (best == npos || e.p.size() < basis_[best].p.size()) best = j;
    }
    return best;
  }

  // Reduces f by the active basis elements other than `skip`, leaving the
  // first `start` terms alone; with `full` every term is reduced, otherwise
  // only the leading one. Irreducible terms are moved to a separate result
  // so each step only rewrites the unreduced tail.
  void reduce(FlatPoly<F>& f, bool full, std::size_t skip, std::size_t start = 0) {
    FlatPoly<F> done;
    done.mon.reserve(f.mon.size());
    done.coef.reserve(f.coef.size());
    for (std::size_t t = 0; t < std::min(start, f.size()); ++t) move_term(done, f, t);
    std::size_t p = std::min(start, f.size());
    while (p < f.size()) {
      const std::int64_t* m = mon(f, p);
      std::size_t j = find_reducer(m, skip);
      if (j == npos) {
        if (!full) break;
        move_term(done, f, p++);
        continue;
      }
      tick();
      const FlatPoly<F>& g = basis_[j].p;
      for (std::size_t x = 0; x < s_; ++x) q_[x] = m[x] - lead(g)[x];
      f.sugar = std::max(f.sugar, g.sugar + degree(q_.data()));
      F c = f.coef[p];  // g is monic
      subtract_multiple(f, p, c, q_.data(), g);
      p = 0;
    }
    for (; p < f.size(); ++p) move_term(done, f, p);
    done.sugar = f.sugar;
    f = std::move(done);
    make_monic(f);
  }

  FlatPoly<F> spoly(const Pair& pr) {
    const FlatPoly<F>& gi = basis_[pr.i].p;
    const FlatPoly<F>& gj = basis_[pr.j].p;
    std::vector<std::int64_t> ti(s_), tj(s_);
    for (std::size_t x = 0; x < s_; ++x) {
      ti[x] = pr.lcm[x] - lead(gi)[x];
      tj[x] = pr.lcm[x] - lead(gj)[x];
    }
    FlatPoly<F> f;
    f.mon.resize(gi.mon.size());
    for (std::size_t t = 0; t < gi.size(); ++t)
      for (std::size_t x = 0; x < s_; ++x) f.mon[t * s_ + x] = gi.mon[t * s_ + x] + ti[x];
    f.coef = gi.coef;
    f.sugar = pr.sugar;
    tick();
    subtract_multiple(f, 0, F(1), tj.data(), gj);
    return f;
  }

  bool pair_less(const Pair& a, const Pair& b) const {
    long ka = opt_.sugar ? a.sugar : a.degree;
    long kb = opt_.sugar ? b.sugar : b.degree;
    if (ka != kb) return ka < kb;
    if (int c = cmp(a.lcm.data(), b.lcm.data()); c != 0) return c < 0;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  }

  Pair pop_pair() {
    std::size_t best = 0;
    for (std::size_t x = 1; x < pairs_.size(); ++x)
      if (pair_less(pairs_[x], pairs_[best])) best = x;
    Pair p = std::move(pairs_[best]);
    pairs_[best] = std::move(pairs_.back());
    pairs_.pop_back();
    return p;
  }

  Pair make_pair(std::size_t i, std::size_t h) const {
    const auto& gi = basis_[i].p;
    const auto& gh = basis_[h].p;
    auto l = lcm(lead(gi), lead(gh));
    long d = degree(l.data());
    long sug = std::max(gi.sugar + d - degree(lead(gi)), gh.sugar + d - degree(lead(gh)));
    return Pair{i, h, std::move(l), d, sug};
  }

  // Adds h to the basis and updates the pair set with the Gebauer-Moeller criteria.
  void insert(FlatPoly<F> h) {
    std::size_t hi = basis_.size();
    basis_.push_back({std::move(h), 0, true});
    basis_[hi].mask = mask(lead(basis_[hi].p));
    const std::int64_t* lh = lead(basis_[hi].p);

    std::vector<Pair> c;
    for (std::size_t g = 0; g < hi; ++g)
      if (basis_[g].active) c.push_back(make_pair(g, hi));

    std::vector<Pair> d;
    for (std::size_t x = 0; x < c.size(); ++x) {
      const Pair& p1 = c[x];
      bool keep = coprime(lh, lead(basis_[p1.i].p));
      if (!keep) {
        keep = true;
        for (std::size_t y = x + 1; y < c.size() && keep; ++y)
          if (divides(c[y].lcm.data(), p1.lcm.data())) keep = false;
        for (std::size_t y = 0; y < d.size() && keep; ++y)
          if (divides(d[y].lcm.data(), p1.lcm.data())) keep = false;
      }
      if (keep) d.push_back(p1);
    }

    std::vector<Pair> kept;
    kept.reserve(pairs_.size() + d.size());
    for (auto& p : pairs_) {
      bool drop = divides(lh, p.lcm.data());
      if (drop) {
        auto l1 = lcm(lead(basis_[p.i].p), lh);
        auto l2 = lcm(lh, lead(basis_[p.j].p));
        drop = !same_exps(l1.data(), p.lcm.data()) && !same_exps(l2.data(), p.lcm.data());
      }
      if (!drop) kept.push_back(std::move(p));
    }
    for (auto& p : d)
      if (!coprime(lh, lead(basis_[p.i].p))) kept.push_back(std::move(p));
    pairs_ = std::move(kept);

    for (std::size_t g = 0; g < hi; ++g)
      if (basis_[g].active && divides(lh, lead(basis_[g].p))) basis_[g].active = false;
  }

  void interreduce() {
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      if (!basis_[j].active) continue;
      reduce(basis_[j].p, true, j, 1);
    }
  }

  TermOrdering ord_;
  GBOptions opt_;
  std::size_t n_, k_, s_;
  std::vector<Elem> basis_;
  std::vector<Pair> pairs_;
  std::uint64_t steps_ = 0;
  FlatPoly<F> scratch_;
  std::vector<std::int64_t> m_ = std::vector<std::int64_t>(s_), q_ = std::vector<std::int64_t>(s_);
};

}  // namespace detail

/// Reduced Groebner basis of <gens> under `o` by Buchberger's algorithm with
/// the Gebauer-Moeller criteria and the normal selection strategy. Running out
/// of budget yields status `aborted`, not an exception.
template <Field F>
GBResult<F> buchberger(std::span<const Poly<F>> gens, const TermOrdering& o, const GBOptions& opt = {}) {
  return detail::Buchberger<F>(o, opt).run(gens);
}

template <Field F>
GBResult<F> buchberger(const std::vector<Poly<F>>& gens, const TermOrdering& o, const GBOptions& opt = {}) {
  return buchberger(std::span<const Poly<F>>(gens), o, opt);
}

/// Remainder of f on division by `divisors` under `o` (full reduction).
template <Field F>
Poly<F> normal_form(const Poly<F>& f, std::span<const Poly<F>> divisors, const TermOrdering& o) {
  GBOptions opt;
  opt.step_limit = UINT64_MAX;
  return detail::Buchberger<F>(o, opt).normal_form(f, divisors);
}

template <Field F>
Poly<F> normal_form(const Poly<F>& f, const std::vector<Poly<F>>& divisors, const TermOrdering& o) {
  return normal_form(f, std::span<const Poly<F>>(divisors), o);
}

/// True iff f lies in the ideal whose Groebner basis under `o` is `gb`.
template <Field F>
bool in_ideal(const Poly<F>& f, const GBResult<F>& gb) {
  if (!gb.complete()) throw std::logic_error("ideal membership needs a complete Groebner basis");
  return normal_form(f, gb.basis, gb.ordering).is_zero();
}

}  // namespace reembed

#endif  // REEMBED_GROEBNER_HPP
