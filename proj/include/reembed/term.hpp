#ifndef REEMBED_TERM_HPP
#define REEMBED_TERM_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace reembed {

/// Position of an indeterminate in the ring's tuple X = (x_1, ..., x_n), 0-based.
using Indet = std::size_t;

/// A power product x_1^a_1 ... x_n^a_n, stored as its exponent vector.
class Term {
 public:
  Term() = default;
  explicit Term(std::size_t arity) : exps_(arity, 0) {}
  explicit Term(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Term indet(std::size_t arity, Indet i) {
    if (i >= arity) throw std::out_of_range("indeterminate index out of range");
    Term t(arity);
    t.exps_[i] = 1;
    return t;
  }

  std::size_t arity() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  std::uint64_t degree() const {
    return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
  }
  bool is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
  }
  /// Index of the single indeterminate if this term is some x_i, else arity().
  std::size_t as_indet() const {
    std::size_t found = exps_.size();
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] == 0) continue;
      if (exps_[i] != 1 || found != exps_.size()) return exps_.size();
      found = i;
    }
    return found;
  }

  bool divides(const Term& t) const {
    check_arity(t);
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > t.exps_[i]) return false;
    return true;
  }

  Term& operator*=(const Term& t) {
    check_arity(t);
    for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] += t.exps_[i];
    return *this;
  }
  friend Term operator*(Term a, const Term& b) { return a *= b; }

  /// Exact quotient; throws if t does not divide *this.
  Term operator/(const Term& t) const {
    if (!t.divides(*this)) throw std::domain_error("term division is not exact");
    Term q(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] -= t.exps_[i];
    return q;
  }

  friend Term lcm(const Term& a, const Term& b) {
    a.check_arity(b);
    Term r(a);
    for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    return r;
  }

  /// Plain lexicographic comparison of exponent vectors (container order, not a term ordering).
  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;

 private:
  void check_arity(const Term& t) const {
    if (t.exps_.size() != exps_.size()) throw std::invalid_argument("term arity mismatch");
  }

  std::vector<std::uint32_t> exps_;
};

/// Degree-reverse-lexicographic comparison with x_1 > x_2 > ... > x_n.
inline std::strong_ordering degrevlex_compare(const Term& s, const Term& t) {
  if (s.arity() != t.arity()) throw std::invalid_argument("term arity mismatch");
  if (auto c = s.degree() <=> t.degree(); c != 0) return c;
  for (std::size_t i = s.arity(); i-- > 0;) {
    if (s[i] != t[i]) return s[i] < t[i] ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

}  // namespace reembed

#endif  // REEMBED_TERM_HPP
