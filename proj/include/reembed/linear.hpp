#ifndef REEMBED_LINEAR_HPP
#define REEMBED_LINEAR_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "reembed/matrix.hpp"
#include "reembed/poly.hpp"

namespace reembed {

/// Degree-one homogeneous component of f; f must have zero constant term.
template <Field F>
Poly<F> linear_part(const Poly<F>& f) {
  if (!is_zero(f.constant_term())) throw std::domain_error("polynomial has a non-zero constant term");
  return f.homogeneous_component(1);
}

/// Row i holds the coefficients of forms[i]; only the degree-one part is read.
template <Field F>
Matrix<F> coefficient_matrix(std::span<const Poly<F>> forms, std::size_t n) {
  Matrix<F> a(forms.size(), n);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].arity() != n) throw std::invalid_argument("form arity mismatch");
    for (const auto& [t, c] : forms[i]) {
      Indet j = t.as_indet();
      if (j == n) throw std::domain_error("expected a linear form");
      a(i, j) = c;
    }
  }
  return a;
}

template <Field F>
Matrix<F> coefficient_matrix(const std::vector<Poly<F>>& forms, std::size_t n) {
  return coefficient_matrix(std::span<const Poly<F>>(forms), n);
}

template <Field F>
Poly<F> form_from_row(std::span<const F> row) {
  std::vector<typename Poly<F>::Entry> e;
  for (std::size_t j = 0; j < row.size(); ++j)
    if (!is_zero(row[j])) e.emplace_back(Term::indet(row.size(), j), row[j]);
  return Poly<F>::from_entries(row.size(), std::move(e));
}

template <Field F>
std::vector<Poly<F>> forms_from_matrix(const Matrix<F>& a) {
  std::vector<Poly<F>> out;
  out.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out.push_back(form_from_row<F>(a.row(i)));
  return out;
}

/// Canonical basis of the span of the forms: the non-zero rows of the reduced
/// row echelon form of their coefficient matrix (leftmost pivots).
template <Field F>
std::vector<Poly<F>> reduce_linear_forms(std::span<const Poly<F>> forms, std::size_t n) {
  return forms_from_matrix(rref(coefficient_matrix(forms, n)).matrix);
}

/// Basis of Lin_M(I) from any generating set of I, in reduced row echelon form.
template <Field F>
std::vector<Poly<F>> linear_part_of_ideal(std::span<const Poly<F>> gens, std::size_t n) {
  std::vector<Poly<F>> lin;
  lin.reserve(gens.size());
  for (const auto& g : gens) {
    if (g.arity() != n) throw std::invalid_argument("generator arity mismatch");
    lin.push_back(linear_part(g));
  }
  return reduce_linear_forms<F>(lin, n);
}

template <Field F>
std::vector<Poly<F>> linear_part_of_ideal(const std::vector<Poly<F>>& gens) {
  if (gens.empty()) return {};
  return linear_part_of_ideal<F>(std::span<const Poly<F>>(gens), gens.front().arity());
}

}  // namespace reembed

#endif  // REEMBED_LINEAR_HPP
