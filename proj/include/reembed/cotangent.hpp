#ifndef REEMBED_COTANGENT_HPP
#define REEMBED_COTANGENT_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "reembed/linear.hpp"
#include "reembed/linear_gfan.hpp"
#include "reembed/ordering.hpp"

namespace reembed {

/// Partition of X by cotangent equivalence at the origin. All sets are sorted;
/// proper classes are ordered by their smallest member.
struct CotangentClasses {
  std::vector<Indet> trivial;
  std::vector<Indet> basic;
  std::vector<std::vector<Indet>> proper;

  friend bool operator==(const CotangentClasses&, const CotangentClasses&) = default;
};

/// Union-find whose edges carry field ratios: value(i) = ratio(i) * value(root(i)).
/// A cycle with a product of ratios different from 1 forces the whole
/// component to zero.
template <Field F>
class RatioUnionFind {
 public:
  explicit RatioUnionFind(std::size_t n) : parent_(n), ratio_(n, F(1)), zero_(n, false) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  /// Root of i and the ratio of i to the root.
  std::pair<std::size_t, F> find(std::size_t i) {
    if (parent_[i] == i) return {i, F(1)};
    auto [root, r] = find(parent_[i]);
    parent_[i] = root;
    ratio_[i] = F(ratio_[i] * r);
    return {root, ratio_[i]};
  }

  void mark_zero(std::size_t i) { zero_[find(i).first] = true; }

  /// Records value(i) = c * value(j) with c non-zero.
  void relate(std::size_t i, std::size_t j, const F& c) {
    auto [ri, ai] = find(i);
    auto [rj, aj] = find(j);
    // value(i) = ai v(ri), value(j) = aj v(rj), so v(ri) = c aj / ai v(rj).
    F k = F(c * aj / ai);
    if (ri == rj) {
      if (!(k == F(1))) zero_[ri] = true;
      return;
    }
    // Smallest index stays the representative.
    if (ri < rj) {
      parent_[rj] = ri;
      ratio_[rj] = F(F(1) / k);
      zero_[ri] = zero_[ri] || zero_[rj];
    } else {
      parent_[ri] = rj;
      ratio_[ri] = k;
      zero_[rj] = zero_[rj] || zero_[ri];
    }
  }

  bool is_zero_class(std::size_t i) { return zero_[find(i).first]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<F> ratio_;
  std::vector<bool> zero_;
};

namespace detail {

inline CotangentClasses classes_from_labels(std::size_t n, const std::vector<bool>& trivial,
                                            const std::vector<std::size_t>& label) {
  CotangentClasses out;
  std::map<std::size_t, std::vector<Indet>> groups;
  for (Indet i = 0; i < n; ++i) {
    if (trivial[i])
      out.trivial.push_back(i);
    else
      groups[label[i]].push_back(i);
  }
  for (auto& [key, members] : groups) {
    if (members.size() == 1)
      out.basic.push_back(members.front());
    else
      out.proper.push_back(std::move(members));
  }
  std::sort(out.basic.begin(), out.basic.end());
  std::sort(out.proper.begin(), out.proper.end());
  return out;
}

template <Field F>
bool all_binomial(std::span<const Poly<F>> forms) {
  return std::all_of(forms.begin(), forms.end(), [](const Poly<F>& f) { return f.size() <= 2; });
}

}  // namespace detail

/// Cotangent classes computed from the residues of the x_i in P_1 / <L>:
/// with L in reduced echelon form the residues of the non-pivot
/// indeterminates form a basis, and each pivot's residue is minus its row.
template <Field F>
CotangentClasses cotangent_classes_by_residues(std::span<const Poly<F>> lin, std::size_t n) {
  auto ech = rref(coefficient_matrix(lin, n));
  std::vector<bool> is_pivot(n, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (Indet j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  std::vector<std::vector<F>> residue(n, std::vector<F>(free_cols.size(), F(0)));
  for (std::size_t k = 0; k < free_cols.size(); ++k) residue[free_cols[k]][k] = F(1);
  for (std::size_t r = 0; r < ech.pivots.size(); ++r)
    for (std::size_t k = 0; k < free_cols.size(); ++k) residue[ech.pivots[r]][k] = F(-ech.matrix(r, free_cols[k]));

  // Lines coincide iff the residues agree after scaling the first non-zero entry to 1.
  std::vector<bool> trivial(n, false);
  std::vector<std::size_t> label(n, 0);
  std::vector<std::pair<std::vector<F>, std::size_t>> seen;
  for (Indet i = 0; i < n; ++i) {
    auto& v = residue[i];
    auto nz = std::find_if(v.begin(), v.end(), [](const F& c) { return !is_zero(c); });
    if (nz == v.end()) {
      trivial[i] = true;
      continue;
    }
    F inv = F(F(1) / *nz);
    for (auto& c : v) c = F(c * inv);
    auto hit = std::find_if(seen.begin(), seen.end(), [&](const auto& s) { return s.first == v; });
    if (hit == seen.end()) {
      seen.emplace_back(v, i);
      label[i] = i;
    } else {
      label[i] = hit->second;
    }
  }
  return detail::classes_from_labels(n, trivial, label);
}

/// Cotangent classes of the ideal generated by the linear forms. Binomial
/// inputs use ratio union-find; other inputs fall back to residue vectors.
template <Field F>
CotangentClasses cotangent_classes(std::span<const Poly<F>> lin, std::size_t n) {
  for (const auto& f : lin)
    if (!f.is_linear_form()) throw std::domain_error("cotangent classes expect linear forms");
  auto basis = reduce_linear_forms<F>(lin, n);
  if (!detail::all_binomial<F>(basis)) return cotangent_classes_by_residues<F>(basis, n);

  RatioUnionFind<F> uf(n);
  for (const auto& f : basis) {
    const auto& t = f.terms();
    Indet i = t[0].first.as_indet();
    if (t.size() == 1) {
      uf.mark_zero(i);
    } else {
      // a x_i + b x_j = 0 in the cotangent space
      Indet j = t[1].first.as_indet();
      uf.relate(i, j, F(-t[1].second / t[0].second));
    }
  }
  std::vector<bool> trivial(n);
  std::vector<std::size_t> label(n);
  for (Indet i = 0; i < n; ++i) {
    trivial[i] = uf.is_zero_class(i);
    label[i] = uf.find(i).first;
  }
  return detail::classes_from_labels(n, trivial, label);
}

template <Field F>
CotangentClasses cotangent_classes(const std::vector<Poly<F>>& lin, std::size_t n) {
  return cotangent_classes(std::span<const Poly<F>>(lin), n);
}

/// Union of the supports of a minimal generating set of <L>; independent of
/// the generating set chosen. The basic indeterminates are its complement.
template <Field F>
std::vector<Indet> support_union(std::span<const Poly<F>> lin, std::size_t n) {
  std::vector<bool> in(n, false);
  for (const auto& f : reduce_linear_forms<F>(lin, n))
    for (Indet i : f.support_indets()) in[i] = true;
  std::vector<Indet> out;
  for (Indet i = 0; i < n; ++i)
    if (in[i]) out.push_back(i);
  return out;
}

template <Field F>
std::vector<Indet> support_union(const std::vector<Poly<F>>& lin, std::size_t n) {
  return support_union(std::span<const Poly<F>>(lin), n);
}

/// The o-smallest member of a class of indeterminates.
inline Indet sigma_smallest(const std::vector<Indet>& cls, const TermOrdering& o) {
  if (cls.empty()) throw std::invalid_argument("empty class");
  Indet best = cls.front();
  for (Indet i : cls)
    if (o.greater(Term::indet(o.arity(), best), Term::indet(o.arity(), i))) best = i;
  return best;
}

/// E_0 together with the o-leading set of every proper class, sorted.
inline std::vector<Indet> sigma_leading_S(const CotangentClasses& c, const TermOrdering& o) {
  std::vector<Indet> s = c.trivial;
  for (const auto& cls : c.proper) {
    Indet low = sigma_smallest(cls, o);
    for (Indet i : cls)
      if (i != low) s.push_back(i);
  }
  std::sort(s.begin(), s.end());
  return s;
}

/// Number of leading-term sets, the product of the proper class sizes.
inline std::size_t ltgfan_size(const CotangentClasses& c) {
  std::size_t p = 1;
  for (const auto& cls : c.proper) p *= cls.size();
  return p;
}

/// Calls f(deleted) for every choice of one deleted member per proper class;
/// the first class varies slowest and members are taken in ascending order.
template <class Fn>
void for_each_deletion(const CotangentClasses& c, Fn&& f) {
  std::vector<std::size_t> pick(c.proper.size(), 0);
  while (true) {
    std::vector<Indet> deleted;
    for (std::size_t k = 0; k < pick.size(); ++k) deleted.push_back(c.proper[k][pick[k]]);
    f(static_cast<const std::vector<Indet>&>(deleted));
    std::size_t k = pick.size();
    while (k > 0 && pick[k - 1] + 1 == c.proper[k - 1].size()) pick[--k] = 0;
    if (k == 0) return;
    ++pick[k - 1];
  }
}

/// All sets E_0 u E_1* u ... u E_q*, where E_i* drops one member of E_i.
inline std::vector<LeadingTermSet> enumerate_ltgfan_binomial(const CotangentClasses& c) {
  std::vector<LeadingTermSet> out;
  for_each_deletion(c, [&](const std::vector<Indet>& deleted) {
    LeadingTermSet s = c.trivial;
    for (std::size_t k = 0; k < c.proper.size(); ++k)
      for (Indet i : c.proper[k])
        if (i != deleted[k]) s.push_back(i);
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
  });
  return out;
}

}  // namespace reembed

#endif  // REEMBED_COTANGENT_HPP
