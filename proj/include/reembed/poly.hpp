#ifndef REEMBED_POLY_HPP
#define REEMBED_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "reembed/field.hpp"
#include "reembed/ordering.hpp"
#include "reembed/term.hpp"

namespace reembed {

/// Sparse multivariate polynomial. Terms are kept with non-zero coefficients
/// only, sorted descending in degrevlex, so equal polynomials compare equal.
template <Field F>
class Poly {
 public:
  using Coeff = F;
  using Entry = std::pair<Term, F>;

  Poly() = default;
  explicit Poly(std::size_t arity) : n_(arity) {}

  static Poly constant(std::size_t arity, const F& c) { return monomial(Term(arity), c); }
  static Poly indet(std::size_t arity, Indet i, const F& c = F(1)) { return monomial(Term::indet(arity, i), c); }
  static Poly monomial(Term t, const F& c) {
    Poly p(t.arity());
    if (!reembed::is_zero(c)) p.terms_.emplace_back(std::move(t), c);
    return p;
  }
  /// Builds from arbitrary (term, coefficient) pairs; repeated terms are summed.
  static Poly from_entries(std::size_t arity, std::vector<Entry> entries) {
    Poly p(arity);
    for (const auto& [t, c] : entries)
      if (t.arity() != arity) throw std::invalid_argument("term arity does not match polynomial arity");
    p.terms_ = std::move(entries);
    p.normalize();
    return p;
  }

  std::size_t arity() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Entry>& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  F coefficient(const Term& t) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t, [](const Entry& e, const Term& key) {
      return degrevlex_compare(e.first, key) > 0;
    });
    if (it != terms_.end() && it->first == t) return it->second;
    return F(0);
  }

  F constant_term() const { return coefficient(Term(n_)); }

  /// Standard total degree; -1 for the zero polynomial.
  long total_degree() const { return terms_.empty() ? -1 : static_cast<long>(terms_.front().first.degree()); }

  bool is_homogeneous_of_degree(std::uint64_t d) const {
    return std::all_of(terms_.begin(), terms_.end(), [d](const Entry& e) { return e.first.degree() == d; });
  }
  bool is_linear_form() const { return is_homogeneous_of_degree(1); }

  Poly homogeneous_component(std::uint64_t d) const {
    Poly p(n_);
    for (const auto& e : terms_)
      if (e.first.degree() == d) p.terms_.push_back(e);
    return p;
  }

  /// Indeterminates occurring in some term, ascending.
  std::vector<Indet> support_indets() const {
    std::vector<bool> seen(n_, false);
    for (const auto& [t, c] : terms_)
      for (Indet i = 0; i < n_; ++i)
        if (t[i]) seen[i] = true;
    std::vector<Indet> out;
    for (Indet i = 0; i < n_; ++i)
      if (seen[i]) out.push_back(i);
    return out;
  }

  bool involves(Indet i) const {
    return std::any_of(terms_.begin(), terms_.end(), [i](const Entry& e) { return e.first[i] != 0; });
  }

  Poly operator-() const {
    Poly p(*this);
    for (auto& e : p.terms_) e.second = F(-e.second);
    return p;
  }

  Poly& operator+=(const Poly& o) { return *this = combine(*this, o, F(1)); }
  Poly& operator-=(const Poly& o) { return *this = combine(*this, o, F(-1)); }
  friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, F(1)); }
  friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, F(-1)); }

  Poly& operator*=(const F& c) {
    if (reembed::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& e : terms_) e.second = F(e.second * c);
    return *this;
  }
  friend Poly operator*(Poly a, const F& c) { return a *= c; }
  friend Poly operator*(const F& c, Poly a) { return a *= c; }

  /// Multiplies by the monomial c*t.
  Poly mul_term(const Term& t, const F& c) const {
    Poly p(n_);
    if (reembed::is_zero(c)) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& [s, d] : terms_) p.terms_.emplace_back(s * t, F(d * c));
    return p;  // multiplication by a term preserves the degrevlex order
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    if (a.is_zero() || b.is_zero()) return Poly(a.n_);
    const Poly& small = a.size() <= b.size() ? a : b;
    const Poly& large = a.size() <= b.size() ? b : a;
    Poly acc(a.n_);
    for (const auto& [t, c] : small.terms_) acc += large.mul_term(t, c);
    return acc;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(unsigned e) const {
    Poly result = constant(n_, F(1));
    Poly base = *this;
    while (e) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e) base *= base;
    }
    return result;
  }

  /// Simultaneous substitution x_i -> images[i] for the indeterminates in the
  /// map; others stay. Images must have the same arity.
  Poly substitute(const std::map<Indet, Poly>& images) const {
    for (const auto& [i, q] : images)
      if (i >= n_ || q.arity() != n_) throw std::invalid_argument("substitution arity mismatch");
    std::map<std::pair<Indet, std::uint32_t>, Poly> powers;
    auto power = [&](Indet i, std::uint32_t e) -> const Poly& {
      const Poly& base = images.at(i);
      std::uint32_t k = e;
      while (k > 1 && !powers.contains({i, k})) --k;
      if (k == 1) powers.try_emplace({i, 1}, base);
      for (; k < e; ++k) powers.emplace(std::make_pair(i, k + 1), powers.at({i, k}) * base);
      return powers.at({i, e});
    };
    // Group terms by their fixed part so each product of images is built once.
    std::map<Term, std::vector<std::pair<Term, F>>> by_moving;
    for (const auto& [t, c] : terms_) {
      Term moving(n_), fixed(n_);
      for (Indet i = 0; i < n_; ++i) {
        if (images.contains(i))
          moving[i] = t[i];
        else
          fixed[i] = t[i];
      }
      by_moving[moving].emplace_back(std::move(fixed), c);
    }
    Poly out(n_);
    for (const auto& [moving, rest] : by_moving) {
      Poly factor = constant(n_, F(1));
      for (Indet i = 0; i < n_; ++i)
        if (moving[i]) factor *= power(i, moving[i]);
      Poly fixed_part = from_entries(n_, rest);
      out += factor * fixed_part;
    }
    return out;
  }

  /// Leading term and coefficient under `o`; throws on the zero polynomial.
  std::pair<Term, F> leading(const TermOrdering& o) const {
    if (is_zero()) throw std::domain_error("leading term of the zero polynomial");
    if (o.arity() != n_) throw std::invalid_argument("ordering arity does not match polynomial arity");
    const Entry* best = &terms_.front();
    for (const auto& e : terms_)
      if (o.greater(e.first, best->first)) best = &e;
    return *best;
  }

  /// Terms sorted descending under `o`.
  std::vector<Entry> sorted_terms(const TermOrdering& o) const {
    auto v = terms_;
    std::sort(v.begin(), v.end(), [&](const Entry& a, const Entry& b) { return o.greater(a.first, b.first); });
    return v;
  }

  Poly monic(const TermOrdering& o) const {
    if (is_zero()) return *this;
    return *this * (F(1) / leading(o).second);
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

 private:
  void check(const Poly& o) const {
    if (o.n_ != n_) throw std::invalid_argument("polynomial arity mismatch");
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Entry& a, const Entry& b) { return degrevlex_compare(a.first, b.first) > 0; });
    std::vector<Entry> out;
    out.reserve(terms_.size());
    for (auto& e : terms_) {
      if (!out.empty() && out.back().first == e.first)
        out.back().second = F(out.back().second + e.second);
      else
        out.push_back(std::move(e));
    }
    std::erase_if(out, [](const Entry& e) { return reembed::is_zero(e.second); });
    terms_ = std::move(out);
  }

  // a + s*b by merging the sorted term lists.
  static Poly combine(const Poly& a, const Poly& b, const F& s) {
    a.check(b);
    Poly r(a.n_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end()) {
        r.terms_.push_back(*i++);
        continue;
      }
      if (i == a.terms_.end()) {
        r.terms_.emplace_back(j->first, F(s * j->second));
        ++j;
        continue;
      }
      auto c = degrevlex_compare(i->first, j->first);
      if (c > 0) {
        r.terms_.push_back(*i++);
      } else if (c < 0) {
        r.terms_.emplace_back(j->first, F(s * j->second));
        ++j;
      } else {
        F v = i->second + s * j->second;
        if (!reembed::is_zero(v)) r.terms_.emplace_back(i->first, std::move(v));
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::size_t n_ = 0;
  std::vector<Entry> terms_;
};

using QPoly = Poly<Rational>;

/// Leading term and coefficient of f under o.
template <Field F>
std::pair<Term, F> leading_term(const TermOrdering& o, const Poly<F>& f) {
  return f.leading(o);
}

/// Exact quotient g / f; throws if f does not divide g.
template <Field F>
Poly<F> exact_divide(Poly<F> g, const Poly<F>& f) {
  if (f.is_zero()) throw std::domain_error("division by the zero polynomial");
  auto o = TermOrdering::degrevlex(f.arity());
  auto [lt, lc] = f.leading(o);
  Poly<F> q(f.arity());
  while (!g.is_zero()) {
    auto [gt, gc] = g.leading(o);
    if (!lt.divides(gt)) throw std::domain_error("polynomial division is not exact");
    Term m = gt / lt;
    F c = gc / lc;
    q += Poly<F>::monomial(m, c);
    g -= f.mul_term(m, c);
  }
  return q;
}

}  // namespace reembed

#endif  // REEMBED_POLY_HPP
