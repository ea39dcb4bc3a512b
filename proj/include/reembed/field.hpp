#ifndef REEMBED_FIELD_HPP
#define REEMBED_FIELD_HPP

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace reembed {

using Integer = mpz_class;
using Rational = mpq_class;

namespace detail {

constexpr bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace detail

/// Element of the prime field F_p, stored as its least non-negative residue.
template <std::uint32_t P>
class PrimeField {
  static_assert(detail::is_prime(P), "PrimeField modulus must be prime");

 public:
  static constexpr std::uint32_t modulus = P;

  constexpr PrimeField() = default;
  constexpr PrimeField(std::int64_t v)  // NOLINT(google-explicit-constructor)
      : v_(static_cast<std::uint32_t>(((v % static_cast<std::int64_t>(P)) + P) % P)) {}

  constexpr std::uint32_t value() const { return v_; }

  constexpr PrimeField operator-() const { return from_raw(v_ == 0 ? 0 : P - v_); }
  constexpr PrimeField& operator+=(PrimeField o) {
    std::uint64_t s = std::uint64_t{v_} + o.v_;
    v_ = static_cast<std::uint32_t>(s >= P ? s - P : s);
    return *this;
  }
  constexpr PrimeField& operator-=(PrimeField o) { return *this += -o; }
  constexpr PrimeField& operator*=(PrimeField o) {
    v_ = static_cast<std::uint32_t>(std::uint64_t{v_} * o.v_ % P);
    return *this;
  }
  constexpr PrimeField& operator/=(PrimeField o) { return *this *= o.inverse(); }

  friend constexpr PrimeField operator+(PrimeField a, PrimeField b) { return a += b; }
  friend constexpr PrimeField operator-(PrimeField a, PrimeField b) { return a -= b; }
  friend constexpr PrimeField operator*(PrimeField a, PrimeField b) { return a *= b; }
  friend constexpr PrimeField operator/(PrimeField a, PrimeField b) { return a /= b; }
  friend constexpr bool operator==(PrimeField a, PrimeField b) = default;

  constexpr PrimeField inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero in prime field");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = v_, e = P - 2;
    while (e) {
      if (e & 1) result = result * base % P;
      base = base * base % P;
      e >>= 1;
    }
    return from_raw(static_cast<std::uint32_t>(result));
  }

 private:
  static constexpr PrimeField from_raw(std::uint32_t v) {
    PrimeField r;
    r.v_ = v;
    return r;
  }
  std::uint32_t v_ = 0;
};

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static Rational from_fraction(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static bool is_negative(const Rational& a) { return sgn(a) < 0; }
  static std::string to_string(const Rational& a) { return a.get_str(); }
  static std::string name() { return "QQ"; }
};

template <std::uint32_t P>
struct FieldTraits<PrimeField<P>> {
  static PrimeField<P> from_fraction(const Integer& num, const Integer& den) {
    Integer d = den % P;
    if (d == 0) throw std::domain_error("denominator vanishes modulo p");
    Integer nr = num % P;
    if (nr < 0) nr += P;
    if (d < 0) d += P;
    return PrimeField<P>(static_cast<std::int64_t>(nr.get_si())) /
           PrimeField<P>(static_cast<std::int64_t>(d.get_si()));
  }
  static bool is_zero(PrimeField<P> a) { return a.value() == 0; }
  // Symmetric representative: values above p/2 print as negatives.
  static bool is_negative(PrimeField<P> a) { return a.value() > P / 2; }
  static std::string to_string(PrimeField<P> a) {
    if (is_negative(a)) return "-" + std::to_string(P - a.value());
    return std::to_string(a.value());
  }
  static std::string name() { return "F_" + std::to_string(P); }
};

template <class F>
concept Field = std::regular<F> && requires(const F& a, const F& b, const Integer& z) {
  { F(a + b) };
  { F(a - b) };
  { F(a * b) };
  { F(a / b) };
  { F(-a) };
  { FieldTraits<F>::from_fraction(z, z) } -> std::convertible_to<F>;
  { FieldTraits<F>::is_zero(a) } -> std::convertible_to<bool>;
  { FieldTraits<F>::is_negative(a) } -> std::convertible_to<bool>;
  { FieldTraits<F>::to_string(a) } -> std::convertible_to<std::string>;
};

template <Field F>
bool is_zero(const F& a) {
  return FieldTraits<F>::is_zero(a);
}

template <Field F>
F field_one() {
  return F(1);
}

}  // namespace reembed

#endif  // REEMBED_FIELD_HPP
