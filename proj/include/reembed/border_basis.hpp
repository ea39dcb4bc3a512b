#ifndef REEMBED_BORDER_BASIS_HPP
#define REEMBED_BORDER_BASIS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "reembed/cotangent.hpp"
#include "reembed/linear.hpp"
#include "reembed/poly.hpp"
#include "reembed/ring.hpp"

namespace reembed {

namespace detail {

inline bool deg_then_degrevlex_less(const Term& a, const Term& b) { return degrevlex_compare(a, b) < 0; }

inline void sort_terms(std::vector<Term>& ts) {
  std::sort(ts.begin(), ts.end(), deg_then_degrevlex_less);
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
}

}  // namespace detail

/// Divisor-closed finite set of terms t_1 < ... < t_mu, ascending by degree
/// then degrevlex, so t_1 = 1.
class OrderIdeal {
 public:
  /// Checks closure under division; the terms need not be sorted.
  explicit OrderIdeal(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("order ideal must be non-empty");
    n_ = terms_.front().arity();
    for (const auto& t : terms_)
      if (t.arity() != n_) throw std::invalid_argument("order ideal terms have different arities");
    detail::sort_terms(terms_);
    for (std::size_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i], i);
    for (const auto& t : terms_)
      for (Indet k = 0; k < n_; ++k)
        if (t[k] > 0 && !contains(t / Term::indet(n_, k)))
          throw std::invalid_argument("term set is not closed under division");
  }

  std::size_t arity() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& operator[](std::size_t i) const { return terms_[i]; }
  bool contains(const Term& t) const { return index_.contains(t); }
  std::optional<std::size_t> index_of(const Term& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Term> terms_;
  std::map<Term, std::size_t> index_;
};

/// The order ideal of all divisors of the given terms.
inline OrderIdeal order_ideal(const std::vector<Term>& generators) {
  if (generators.empty()) throw std::invalid_argument("order ideal needs at least one generator");
  std::size_t n = generators.front().arity();
  std::set<Term> all;
  for (const auto& g : generators) {
    if (g.arity() != n) throw std::invalid_argument("generator arity mismatch");
    // Enumerate the exponent box below g.
    Term t(n);
    while (true) {
      all.insert(t);
      std::size_t k = 0;
      while (k < n && t[k] == g[k]) t[k++] = 0;
      if (k == n) break;
      ++t[k];
    }
  }
  return OrderIdeal(std::vector<Term>(all.begin(), all.end()));
}

/// (x_1 O u ... u x_n O) \ O, ascending by degree then degrevlex.
inline std::vector<Term> border(const OrderIdeal& o) {
  std::vector<Term> b;
  for (const auto& t : o.terms())
    for (Indet k = 0; k < o.arity(); ++k) {
      Term m = t * Term::indet(o.arity(), k);
      if (!o.contains(m)) b.push_back(std::move(m));
    }
  detail::sort_terms(b);
  return b;
}

/// Rim (terms with a border multiple x_k t) and interior of O, as 0-based indices.
struct RimInterior {
  std::vector<std::size_t> rim;
  std::vector<std::size_t> interior;
};

inline RimInterior rim_interior(const OrderIdeal& o) {
  RimInterior r;
  for (std::size_t i = 0; i < o.size(); ++i) {
    bool on_rim = false;
    for (Indet k = 0; k < o.arity() && !on_rim; ++k)
      if (!o.contains(o[i] * Term::indet(o.arity(), k))) on_rim = true;
    (on_rim ? r.rim : r.interior).push_back(i);
  }
  return r;
}

/// Arrow degree log(b_j) - log(t_i) of c_ij.
inline std::vector<long> arrow_degree(const Term& b, const Term& t) {
  std::vector<long> d(b.arity());
  for (Indet k = 0; k < b.arity(); ++k) d[k] = static_cast<long>(b[k]) - static_cast<long>(t[k]);
  return d;
}

enum class NeighbourKind { next_door, across_rim };

/// A neighbour pair with 0-based indices. Next-door: b_j = x_ell b_j2.
/// Across-the-rim: b_j = x_ell t_m and b_j2 = x_k t_m.
template <Field F>
struct NeighbourPair {
  NeighbourKind kind;
  std::size_t j, j2, ell, k, m;
  std::vector<Poly<F>> tuple;
};

/// One distinct generator of I(B_O) and the pair entry it came from.
template <Field F>
struct NeighbourGenerator {
  std::size_t pair;
  std::size_t entry;
  Poly<F> poly;
};

template <Field F>
using PolyMatrix = std::vector<std::vector<Poly<F>>>;

/// The generic border prebasis data of an order ideal: the ring K[C] with
/// c_ij flattened row-major to index i*nu + j, the multiplication matrices
/// and the neighbour generators.
template <Field F = Rational>
class BorderBasisScheme {
 public:
  explicit BorderBasisScheme(OrderIdeal o) : o_(std::move(o)), border_(reembed::border(o_)) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < mu(); ++i)
      for (std::size_t j = 0; j < nu(); ++j) names.push_back(c_name(i, j));
    ring_ = Ring(std::move(names));
    build_matrices();
    build_pairs();
  }

  const OrderIdeal& order_ideal() const { return o_; }
  const std::vector<Term>& border() const { return border_; }
  std::size_t mu() const { return o_.size(); }
  std::size_t nu() const { return border_.size(); }
  std::size_t n() const { return o_.arity(); }
  const Ring& ring() const { return ring_; }
  /// Expected dimension mu * n of the scheme, recorded as metadata.
  std::size_t expected_dimension() const { return mu() * n(); }

  Indet c(std::size_t i, std::size_t j) const { return i * nu() + j; }
  std::pair<std::size_t, std::size_t> c_index(Indet v) const { return {v / nu(), v % nu()}; }
  static std::string c_name(std::size_t i, std::size_t j) {
    return "c" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  }

  std::optional<std::size_t> border_index(const Term& t) const {
    auto it = std::lower_bound(border_.begin(), border_.end(), t, detail::deg_then_degrevlex_less);
    if (it == border_.end() || !(*it == t)) return std::nullopt;
    return static_cast<std::size_t>(it - border_.begin());
  }

  const std::vector<PolyMatrix<F>>& multiplication_matrices() const { return a_; }
  const std::vector<NeighbourPair<F>>& pairs() const { return pairs_; }

  std::vector<long> arrow_degree(Indet v) const {
    auto [i, j] = c_index(v);
    return reembed::arrow_degree(border_[j], o_[i]);
  }

  /// Distinct non-zero entries of the neighbour tuples, identified up to sign;
  /// next-door pairs first, then across-the-rim pairs.
  std::vector<NeighbourGenerator<F>> neighbour_generators() const {
    std::vector<NeighbourGenerator<F>> out;
    std::set<std::vector<std::pair<Term, F>>> seen;
    for (std::size_t p = 0; p < pairs_.size(); ++p)
      for (std::size_t e = 0; e < pairs_[p].tuple.size(); ++e) {
        const Poly<F>& f = pairs_[p].tuple[e];
        if (f.is_zero()) continue;
        if (!seen.insert(sign_normalized(f).terms()).second) continue;
        out.push_back({p, e, f});
      }
    return out;
  }

  std::vector<Poly<F>> defining_ideal() const {
    std::vector<Poly<F>> out;
    for (auto& g : neighbour_generators()) out.push_back(std::move(g.poly));
    return out;
  }

  /// Distinct non-zero entries (up to sign) of all commutators A_k A_l - A_l A_k.
  std::vector<Poly<F>> commutator_generators() const {
    std::vector<Poly<F>> out;
    std::set<std::vector<std::pair<Term, F>>> seen;
    for (std::size_t k = 0; k < n(); ++k)
      for (std::size_t l = k + 1; l < n(); ++l) {
        auto ab = multiply(a_[k], a_[l]);
        auto ba = multiply(a_[l], a_[k]);
        for (std::size_t r = 0; r < mu(); ++r)
          for (std::size_t s = 0; s < mu(); ++s) {
            Poly<F> e = ab[r][s] - ba[r][s];
            if (e.is_zero() || !seen.insert(sign_normalized(e).terms()).second) continue;
            out.push_back(std::move(e));
          }
      }
    return out;
  }

 private:
  Poly<F> var(std::size_t i, std::size_t j) const { return Poly<F>::indet(mu() * nu(), c(i, j)); }

  static Poly<F> sign_normalized(const Poly<F>& f) {
    return FieldTraits<F>::is_negative(f.terms().front().second) ? -f : f;
  }

  void build_matrices() {
    std::size_t nc = mu() * nu();
    for (Indet k = 0; k < n(); ++k) {
      PolyMatrix<F> m(mu(), std::vector<Poly<F>>(mu(), Poly<F>(nc)));
      for (std::size_t i = 0; i < mu(); ++i) {
        Term x = o_[i] * Term::indet(n(), k);
        if (auto t = o_.index_of(x)) {
          m[*t][i] = Poly<F>::constant(nc, F(1));
        } else {
          std::size_t j = *border_index(x);
          for (std::size_t r = 0; r < mu(); ++r) m[r][i] = var(r, j);
        }
      }
      a_.push_back(std::move(m));
    }
  }

  // (A c_j)_r for the generic column c_j.
  std::vector<Poly<F>> times_column(const PolyMatrix<F>& a, std::size_t j) const {
    std::vector<Poly<F>> out(mu(), Poly<F>(mu() * nu()));
    for (std::size_t r = 0; r < mu(); ++r)
      for (std::size_t i = 0; i < mu(); ++i)
        if (!a[r][i].is_zero()) out[r] += a[r][i] * var(i, j);
    return out;
  }

  PolyMatrix<F> multiply(const PolyMatrix<F>& a, const PolyMatrix<F>& b) const {
    PolyMatrix<F> out(mu(), std::vector<Poly<F>>(mu(), Poly<F>(mu() * nu())));
    for (std::size_t r = 0; r < mu(); ++r)
      for (std::size_t s = 0; s < mu(); ++s)
        for (std::size_t i = 0; i < mu(); ++i)
          if (!a[r][i].is_zero() && !b[i][s].is_zero()) out[r][s] += a[r][i] * b[i][s];
    return out;
  }

  void build_pairs() {
    // Next-door: b_j = x_ell b_j2.
    for (std::size_t j = 0; j < nu(); ++j)
      for (Indet ell = 0; ell < n(); ++ell) {
        if (border_[j][ell] == 0) continue;
        auto j2 = border_index(border_[j] / Term::indet(n(), ell));
        if (!j2) continue;
        auto rhs = times_column(a_[ell], *j2);
        std::vector<Poly<F>> tuple;
        for (std::size_t i = 0; i < mu(); ++i) tuple.push_back(var(i, j) - rhs[i]);
        pairs_.push_back({NeighbourKind::next_door, j, *j2, ell, ell, 0, std::move(tuple)});
      }
    // Across the rim: b_j = x_ell t_m and b_j2 = x_k t_m with j < j2.
    for (std::size_t m = 0; m < mu(); ++m)
      for (Indet ell = 0; ell < n(); ++ell)
        for (Indet k = 0; k < n(); ++k) {
          if (k == ell) continue;
          auto j = border_index(o_[m] * Term::indet(n(), ell));
          auto j2 = border_index(o_[m] * Term::indet(n(), k));
          if (!j || !j2 || *j >= *j2) continue;
          auto lhs = times_column(a_[k], *j);
          auto rhs = times_column(a_[ell], *j2);
          std::vector<Poly<F>> tuple;
          for (std::size_t r = 0; r < mu(); ++r) tuple.push_back(lhs[r] - rhs[r]);
          pairs_.push_back({NeighbourKind::across_rim, *j, *j2, ell, k, m, std::move(tuple)});
        }
    std::stable_sort(pairs_.begin(), pairs_.end(),
                     [](const auto& a, const auto& b) { return a.kind == NeighbourKind::next_door && b.kind != a.kind; });
  }

  OrderIdeal o_;
  std::vector<Term> border_;
  Ring ring_;
  std::vector<PolyMatrix<F>> a_;
  std::vector<NeighbourPair<F>> pairs_;
};

/// Outcome of checking the structural statements on the neighbour generators.
struct StructureReport {
  bool arrow_homogeneous = true;
  bool linear_parts = true;
  bool quadratic_parts = true;
  bool basic_are_rim = true;
  bool proper_classes_meet_rim = true;
  std::vector<std::string> failures;

  bool ok() const {
    return arrow_homogeneous && linear_parts && quadratic_parts && basic_are_rim && proper_classes_meet_rim;
  }
};

namespace detail {

inline std::vector<long> add_degrees(std::vector<long> a, const std::vector<long>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

template <Field F>
bool equal_up_to_sign(const Poly<F>& a, const Poly<F>& b) {
  return a == b || a == -b;
}

}  // namespace detail

/// Checks every neighbour generator against the predicted arrow degree,
/// linear part (up to sign) and quadratic support, and checks that basic
/// indeterminates are rim indeterminates and each proper class meets the rim.
template <Field F>
StructureReport verify_structure(const BorderBasisScheme<F>& s) {
  StructureReport rep;
  const auto& o = s.order_ideal();
  const auto& b = s.border();
  const std::size_t n = s.n(), nc = s.mu() * s.nu();
  auto x = [&](Indet k) { return Term::indet(n, k); };
  auto cvar = [&](std::size_t i, std::size_t j) { return Poly<F>::indet(nc, s.c(i, j)); };
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    rep.failures.push_back(what);
  };
  // Quadratic terms c_{r lambda} c_{rho col}, lambda running over the
  // x_var-exposed border terms b_lambda = x_var t_rho.
  auto exposed_products = [&](std::size_t r, Indet v, std::size_t col, std::set<Term>& allowed) {
    for (std::size_t lam = 0; lam < s.nu(); ++lam) {
      if (b[lam][v] == 0) continue;
      auto rho = o.index_of(b[lam] / x(v));
      if (!rho) continue;
      Term t(nc);
      ++t[s.c(r, lam)];
      ++t[s.c(*rho, col)];
      allowed.insert(t);
    }
  };

  for (const auto& gen : s.neighbour_generators()) {
    const auto& pr = s.pairs()[gen.pair];
    const Poly<F>& f = gen.poly;
    std::size_t e = gen.entry;
    std::string tag = (pr.kind == NeighbourKind::next_door ? "ND(" : "AR(") + std::to_string(pr.j + 1) + "," +
                      std::to_string(pr.j2 + 1) + ")_" + std::to_string(e + 1);

    std::vector<long> expected_deg;
    Poly<F> expected_lin(nc);
    std::set<Term> allowed;
    if (pr.kind == NeighbourKind::next_door) {
      expected_deg = arrow_degree(b[pr.j], o[e]);
      expected_lin = cvar(e, pr.j);
      if (o[e][pr.ell] > 0) expected_lin -= cvar(*o.index_of(o[e] / x(pr.ell)), pr.j2);
      exposed_products(e, pr.ell, pr.j2, allowed);
    } else {
      expected_deg = detail::add_degrees(arrow_degree(b[pr.j], o[e]), arrow_degree(x(pr.k), Term(n)));
      const Term& tm = o[e];
      bool by_k = tm[pr.k] > 0, by_l = tm[pr.ell] > 0;
      if (by_k) expected_lin += cvar(*o.index_of(tm / x(pr.k)), pr.j);
      if (by_l) expected_lin -= cvar(*o.index_of(tm / x(pr.ell)), pr.j2);
      exposed_products(e, pr.k, pr.j, allowed);
      exposed_products(e, pr.ell, pr.j2, allowed);
    }

    for (const auto& [t, c] : f) {
      std::vector<long> d(n, 0);
      for (Indet v = 0; v < nc; ++v)
        for (std::uint32_t p = 0; p < t[v]; ++p) d = detail::add_degrees(d, s.arrow_degree(v));
      if (d != expected_deg) {
        fail(rep.arrow_homogeneous, tag + ": not homogeneous of the predicted arrow degree");
        break;
      }
    }
    if (!detail::equal_up_to_sign(f.homogeneous_component(1), expected_lin))
      fail(rep.linear_parts, tag + ": linear part differs from the case table");
    for (const auto& [t, c] : f.homogeneous_component(2))
      if (!allowed.contains(t)) {
        fail(rep.quadratic_parts, tag + ": quadratic term outside the predicted shape");
        break;
      }
    if (f.total_degree() > 2) fail(rep.quadratic_parts, tag + ": degree exceeds two");
  }

  auto lin = linear_part_of_ideal(s.defining_ideal());
  auto cls = cotangent_classes<F>(lin, nc);
  auto ri = rim_interior(o);
  std::vector<bool> rim_row(s.mu(), false);
  for (auto i : ri.rim) rim_row[i] = true;
  auto is_rim = [&](Indet v) { return rim_row[s.c_index(v).first]; };
  for (Indet v : cls.basic)
    if (!is_rim(v)) fail(rep.basic_are_rim, "basic indeterminate " + s.ring().name(v) + " is interior");
  for (const auto& e : cls.proper)
    if (std::none_of(e.begin(), e.end(), is_rim))
      fail(rep.proper_classes_meet_rim, "proper class of " + s.ring().name(e.front()) + " has no rim indeterminate");
  return rep;
}

}  // namespace reembed

#endif  // REEMBED_BORDER_BASIS_HPP
