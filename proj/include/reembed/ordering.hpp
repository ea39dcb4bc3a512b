#ifndef REEMBED_ORDERING_HPP
#define REEMBED_ORDERING_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "reembed/matrix.hpp"
#include "reembed/term.hpp"

namespace reembed {

enum class OrderingKind { degrevlex, lex, elimination, custom };

/// A term ordering given by an integer weight matrix: terms are compared by
/// their weight vectors, row by row, and the first difference decides.
class TermOrdering {
 public:
  using Row = std::vector<std::int64_t>;

  /// Validates that the rows define a term ordering on n indeterminates: full
  /// column rank and a positive first non-zero entry in every column.
  static TermOrdering custom(std::vector<Row> rows) {
    return TermOrdering(std::move(rows), OrderingKind::custom, {});
  }

  static TermOrdering degrevlex(std::size_t n) {
    return TermOrdering(degrevlex_rows(n), OrderingKind::degrevlex, {});
  }

  static TermOrdering lex(std::size_t n) {
    std::vector<Row> rows(n, Row(n, 0));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
    return TermOrdering(std::move(rows), OrderingKind::lex, {});
  }

  /// Elimination ordering for Z: the first row counts the Z-degree, then
  /// degrevlex on the remaining indeterminates Y breaks ties, then degrevlex
  /// on Z. Every term involving Z exceeds every term of K[Y].
  static TermOrdering elimination(std::span<const Indet> z, std::size_t n) {
    auto zs = checked_block(z, n);
    std::vector<Indet> ys;
    for (Indet i = 0; i < n; ++i)
      if (!zs.contains(i)) ys.push_back(i);
    std::vector<Row> rows;
    Row zdeg(n, 0);
    for (Indet i : zs) zdeg[i] = 1;
    rows.push_back(zdeg);
    append_block_degrevlex(rows, ys, n, true);
    append_block_degrevlex(rows, std::vector<Indet>(zs.begin(), zs.end()), n, false);
    return TermOrdering(std::move(rows), OrderingKind::elimination, {zs.begin(), zs.end()});
  }

  /// Elimination ordering for Z whose ties are broken by an arbitrary term
  /// ordering `refinement` on all of X.
  static TermOrdering elimination(std::span<const Indet> z, const TermOrdering& refinement) {
    std::size_t n = refinement.arity();
    auto zs = checked_block(z, n);
    std::vector<Row> rows;
    Row zdeg(n, 0);
    for (Indet i : zs) zdeg[i] = 1;
    rows.push_back(zdeg);
    rows.insert(rows.end(), refinement.rows().begin(), refinement.rows().end());
    return TermOrdering(std::move(rows), OrderingKind::elimination, {zs.begin(), zs.end()});
  }

  std::size_t arity() const { return n_; }
  OrderingKind kind() const { return kind_; }
  const std::vector<Row>& rows() const { return rows_; }
  /// The eliminated block for elimination orderings (sorted), empty otherwise.
  const std::vector<Indet>& eliminated() const { return block_; }

  Row weights(const Term& t) const {
    check(t);
    Row w(rows_.size(), 0);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t j = 0; j < n_; ++j) w[r] += rows_[r][j] * static_cast<std::int64_t>(t[j]);
    return w;
  }

  std::strong_ordering compare(const Term& s, const Term& t) const {
    check(s);
    check(t);
    for (const auto& row : rows_) {
      std::int64_t a = 0, b = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        a += row[j] * static_cast<std::int64_t>(s[j]);
        b += row[j] * static_cast<std::int64_t>(t[j]);
      }
      if (a != b) return a <=> b;
    }
    return std::strong_ordering::equal;
  }

  bool greater(const Term& s, const Term& t) const { return compare(s, t) > 0; }

  /// True if every term containing an indeterminate of z is greater than every
  /// term free of z; checked on the weight matrix (first row separating z).
  bool is_elimination_for(std::span<const Indet> z) const {
    std::set<Indet> zs(z.begin(), z.end());
    // Sufficient criterion: some leading block of rows vanishes on Y and the
    // first row that does not vanish on Z is non-negative there and positive on all of Z.
    for (const auto& row : rows_) {
      bool y_zero = true;
      for (Indet j = 0; j < n_; ++j)
        if (!zs.contains(j) && row[j] != 0) y_zero = false;
      if (!y_zero) return false;
      bool all_pos = true, any_neg = false;
      for (Indet j : zs) {
        if (row[j] <= 0) all_pos = false;
        if (row[j] < 0) any_neg = true;
      }
      if (all_pos) return true;
      if (any_neg) return false;
    }
    return false;
  }

  friend bool operator==(const TermOrdering& a, const TermOrdering& b) { return a.rows_ == b.rows_; }

 private:
  TermOrdering(std::vector<Row> rows, OrderingKind kind, std::vector<Indet> block)
      : rows_(std::move(rows)), kind_(kind), block_(std::move(block)) {
    if (rows_.empty()) {
      n_ = 0;
      return;
    }
    n_ = rows_.front().size();
    for (const auto& r : rows_)
      if (r.size() != n_) throw std::invalid_argument("weight matrix rows have different lengths");
    for (std::size_t j = 0; j < n_; ++j) {
      std::int64_t first = 0;
      for (const auto& r : rows_)
        if (r[j] != 0) {
          first = r[j];
          break;
        }
      if (first <= 0)
        throw std::invalid_argument("weight matrix column " + std::to_string(j + 1) +
                                    " has a non-positive first non-zero entry");
    }
    Matrix<Integer> m(rows_.size(), n_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < n_; ++j) m(i, j) = static_cast<long>(rows_[i][j]);
    if (rank(m) != n_) throw std::invalid_argument("weight matrix does not have full column rank");
  }

  static std::vector<Row> degrevlex_rows(std::size_t n) {
    std::vector<Row> rows;
    std::vector<Indet> all(n);
    for (Indet i = 0; i < n; ++i) all[i] = i;
    append_block_degrevlex(rows, all, n, true);
    return rows;
  }

  // Degree row over `block` followed by the reverse-lex rows -e_last, ..., -e_second.
  static void append_block_degrevlex(std::vector<Row>& rows, const std::vector<Indet>& block, std::size_t n,
                                     bool with_degree_row) {
    if (block.empty()) return;
    if (with_degree_row) {
      Row deg(n, 0);
      for (Indet i : block) deg[i] = 1;
      rows.push_back(deg);
    }
    for (std::size_t k = block.size(); k-- > 1;) {
      Row r(n, 0);
      r[block[k]] = -1;
      rows.push_back(r);
    }
  }

  static std::set<Indet> checked_block(std::span<const Indet> z, std::size_t n) {
    if (z.empty()) throw std::invalid_argument("elimination block must be non-empty");
    std::set<Indet> zs;
    for (Indet i : z) {
      if (i >= n) throw std::out_of_range("unknown indeterminate in elimination block");
      if (!zs.insert(i).second) throw std::invalid_argument("duplicate indeterminate in elimination block");
    }
    return zs;
  }

  void check(const Term& t) const {
    if (t.arity() != n_) throw std::invalid_argument("term arity does not match the ordering");
  }

  std::vector<Row> rows_;
  std::size_t n_ = 0;
  OrderingKind kind_;
  std::vector<Indet> block_;
};

}  // namespace reembed

#endif  // REEMBED_ORDERING_HPP
