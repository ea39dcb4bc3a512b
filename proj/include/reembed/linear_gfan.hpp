#ifndef REEMBED_LINEAR_GFAN_HPP
#define REEMBED_LINEAR_GFAN_HPP

#include <algorithm>
#include <deque>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "reembed/linear.hpp"
#include "reembed/matrix.hpp"
#include "reembed/poly.hpp"

namespace reembed {

/// Strictly increasing 0-based column indices.
using IndexTuple = std::vector<std::size_t>;
/// Sorted set of indeterminates.
using LeadingTermSet = std::vector<Indet>;

template <Field F>
struct MarkedForm {
  Indet marker;
  Poly<F> form;
  friend bool operator==(const MarkedForm&, const MarkedForm&) = default;
};

/// Marked reduced Groebner basis, pairs sorted by marker index.
template <Field F>
struct MarkedReducedGB {
  std::vector<MarkedForm<F>> pairs;

  LeadingTermSet markers() const {
    LeadingTermSet m;
    for (const auto& p : pairs) m.push_back(p.marker);
    return m;
  }
  friend bool operator==(const MarkedReducedGB&, const MarkedReducedGB&) = default;
};

enum class FanBackend { automatic, exhaustive, exchange };

/// Above this many indeterminates the automatic backend switches from
/// exhaustive minors to basis exchange.
inline constexpr std::size_t exhaustive_fan_limit = 20;

namespace detail {

inline void check_index_tuple(std::span<const std::size_t> idx, std::size_t cols) {
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= cols) throw std::out_of_range("column index out of range");
    if (k > 0 && idx[k - 1] >= idx[k]) throw std::invalid_argument("column indices must be strictly increasing");
  }
}

// Calls f(idx) for every s-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t s, Fn&& f) {
  if (s > n) return;
  IndexTuple idx(s);
  for (std::size_t k = 0; k < s; ++k) idx[k] = k;
  while (true) {
    f(static_cast<const IndexTuple&>(idx));
    std::size_t k = s;
    while (k > 0 && idx[k - 1] == n - s + k - 1) --k;
    if (k == 0) return;
    ++idx[k - 1];
    for (std::size_t m = k; m < s; ++m) idx[m] = idx[m - 1] + 1;
  }
}

}  // namespace detail

/// True iff the selected columns of A are linearly independent.
template <Field F>
bool column_submatrix_rank_ok(const Matrix<F>& a, std::span<const std::size_t> idx) {
  detail::check_index_tuple(idx, a.cols());
  if (idx.size() > a.rows()) return false;
  return rank(a.columns(idx)) == idx.size();
}

/// The marked reduced GB (A_B)^{-1} A with markers x_b for b in B.
template <Field F>
MarkedReducedGB<F> reduced_gb_for_basis(const Matrix<F>& a, std::span<const std::size_t> idx) {
  detail::check_index_tuple(idx, a.cols());
  Matrix<F> s = solve_for_columns(a, idx);
  MarkedReducedGB<F> gb;
  for (std::size_t p = 0; p < idx.size(); ++p) gb.pairs.push_back({idx[p], form_from_row<F>(s.row(p))});
  return gb;
}

/// All bases of the column matroid by testing every maximal minor.
template <Field F>
std::vector<IndexTuple> matroid_bases_exhaustive(const Matrix<F>& a) {
  if (rank(a) != a.rows()) throw std::domain_error("coefficient matrix rows are linearly dependent");
  std::vector<IndexTuple> out;
  detail::for_each_subset(a.cols(), a.rows(), [&](const IndexTuple& idx) {
    if (column_submatrix_rank_ok(a, idx)) out.push_back(idx);
  });
  return out;
}

/// All bases of the column matroid, found by basis exchange from the pivot
/// columns of the row echelon form. B - b_p + j is a basis exactly when entry
/// (p, j) of (A_B)^{-1} A is non-zero, so each basis is visited once and the
/// cost is proportional to the number of bases.
template <Field F>
std::vector<IndexTuple> matroid_bases(const Matrix<F>& a) {
  auto ech = rref(a);
  if (ech.pivots.size() != a.rows()) throw std::domain_error("coefficient matrix rows are linearly dependent");
  std::set<IndexTuple> seen{ech.pivots};
  std::deque<IndexTuple> queue{ech.pivots};
  while (!queue.empty()) {
    IndexTuple b = std::move(queue.front());
    queue.pop_front();
    Matrix<F> t = solve_for_columns(a, b);
    for (std::size_t p = 0; p < b.size(); ++p) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (is_zero(t(p, j)) || std::binary_search(b.begin(), b.end(), j)) continue;
        IndexTuple nb = b;
        nb[p] = j;
        std::sort(nb.begin(), nb.end());
        if (seen.insert(nb).second) queue.push_back(std::move(nb));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

template <Field F>
struct LinearFan {
  std::vector<IndexTuple> bases;
  std::vector<MarkedReducedGB<F>> gbs;
  /// Set when the input forms were linearly dependent and had to be reduced.
  bool input_reduced = false;
};

/// Groebner fan of the ideal generated by linear forms: one marked reduced GB
/// per non-zero maximal minor of the coefficient matrix, in lexicographic
/// order of the column tuples. The zero ideal has the fan {{}}.
template <Field F>
LinearFan<F> gfan_linear(std::span<const Poly<F>> forms, std::size_t n, FanBackend backend = FanBackend::automatic) {
  for (const auto& f : forms)
    if (!f.is_linear_form()) throw std::domain_error("gfan_linear expects linear forms");
  Matrix<F> raw = coefficient_matrix(forms, n);
  auto ech = rref(raw);
  LinearFan<F> fan;
  fan.input_reduced = ech.pivots.size() != forms.size();
  const Matrix<F>& a = ech.matrix;
  if (a.rows() == 0) {
    fan.bases = {IndexTuple{}};
    fan.gbs = {MarkedReducedGB<F>{}};
    return fan;
  }
  bool exhaustive = backend == FanBackend::exhaustive || (backend == FanBackend::automatic && n <= exhaustive_fan_limit);
  fan.bases = exhaustive ? matroid_bases_exhaustive(a) : matroid_bases(a);
  for (const auto& b : fan.bases) fan.gbs.push_back(reduced_gb_for_basis(a, b));
  return fan;
}

template <Field F>
LinearFan<F> gfan_linear(const std::vector<Poly<F>>& forms, std::size_t n,
                         FanBackend backend = FanBackend::automatic) {
  return gfan_linear(std::span<const Poly<F>>(forms), n, backend);
}

/// Leading-term sets of the fan, i.e. the markers of each marked reduced GB.
template <Field F>
std::vector<LeadingTermSet> ltgfan_linear(std::span<const Poly<F>> forms, std::size_t n,
                                          FanBackend backend = FanBackend::automatic) {
  auto fan = gfan_linear(forms, n, backend);
  std::vector<LeadingTermSet> out;
  for (const auto& gb : fan.gbs) out.push_back(gb.markers());
  return out;
}

template <Field F>
std::vector<LeadingTermSet> ltgfan_linear(const std::vector<Poly<F>>& forms, std::size_t n,
                                          FanBackend backend = FanBackend::automatic) {
  return ltgfan_linear(std::span<const Poly<F>>(forms), n, backend);
}

}  // namespace reembed

#endif  // REEMBED_LINEAR_GFAN_HPP
