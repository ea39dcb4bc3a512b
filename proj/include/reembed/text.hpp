#ifndef REEMBED_TEXT_HPP
#define REEMBED_TEXT_HPP

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reembed/poly.hpp"
#include "reembed/ring.hpp"

namespace reembed {

/// Syntax or semantic error in textual input, located by 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class Tok { ident, number, plus, minus, star, slash, caret, lparen, rparen, comma, semicolon, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

/// Tokenizer shared by the polynomial and job-file grammars. Comments run from
/// `#` or `//` to the end of the line.
class Lexer {
 public:
  explicit Lexer(std::string_view src, std::size_t line = 1, std::size_t column = 1) : src_(src), line_(line), col_(column) {
    advance();
  }

  const Token& peek() const { return cur_; }
  Token next() {
    Token t = cur_;
    advance();
    return t;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(cur_.line, cur_.column, what); }
  Token expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what + describe());
    return next();
  }

 private:
  std::string describe() const {
    if (cur_.kind == Tok::end) return ", found end of input";
    return ", found '" + cur_.text + "'";
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else if (c == '#' || (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/')) {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
          ++pos_;
          ++col_;
        }
      } else {
        break;
      }
    }
  }

  void advance() {
    skip_space();
    cur_ = Token{Tok::end, "", line_, col_};
    if (pos_ >= src_.size()) return;
    char c = src_[pos_];
    std::size_t start = pos_;
    auto take = [&](Tok k) {
      ++pos_;
      ++col_;
      cur_.kind = k;
      cur_.text = std::string(1, c);
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      cur_.kind = Tok::ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      cur_.kind = Tok::number;
    } else {
      switch (c) {
        case '+': return take(Tok::plus);
        case '-': return take(Tok::minus);
        case '*': return take(Tok::star);
        case '/': return take(Tok::slash);
        case '^': return take(Tok::caret);
        case '(': return take(Tok::lparen);
        case ')': return take(Tok::rparen);
        case ',': return take(Tok::comma);
        case ';': return take(Tok::semicolon);
        default:
          throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
      }
    }
    cur_.text = std::string(src_.substr(start, pos_ - start));
    col_ += pos_ - start;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col_;
  Token cur_{Tok::end, "", 1, 1};
};

/// Recursive-descent parser for infix polynomials over a named ring:
/// `+ - * / ^`, parentheses, rational constants (`a/b`), and implicit
/// multiplication by juxtaposition (`4w`, `2 x y`).
template <Field F>
class PolyParser {
 public:
  PolyParser(const Ring& ring, Lexer& lex) : ring_(ring), lex_(lex) {}

  Poly<F> expression() {
    Poly<F> acc(ring_.arity());
    bool first = true;
    while (true) {
      F sign(1);
      if (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
        if (lex_.next().kind == Tok::minus) sign = F(-1);
      } else if (!first) {
        break;
      }
      acc += product() * sign;
      first = false;
    }
    return acc;
  }

 private:
  static bool starts_factor(Tok k) { return k == Tok::number || k == Tok::ident || k == Tok::lparen; }

  Poly<F> product() {
    Poly<F> acc = power();
    while (true) {
      Tok k = lex_.peek().kind;
      if (k == Tok::star) {
        lex_.next();
        acc *= power();
      } else if (k == Tok::slash) {
        Token at = lex_.next();
        Poly<F> d = power();
        if (d.total_degree() != 0) throw ParseError(at.line, at.column, "division is only allowed by non-zero constants");
        acc *= F(F(1) / d.constant_term());
      } else if (starts_factor(k)) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  Poly<F> power() {
    Poly<F> base = atom();
    if (lex_.peek().kind == Tok::caret) {
      lex_.next();
      Token e = lex_.expect(Tok::number, "an exponent");
      unsigned long v = 0;
      try {
        v = std::stoul(e.text);
      } catch (const std::exception&) {
        throw ParseError(e.line, e.column, "exponent out of range");
      }
      if (v > 1'000'000) throw ParseError(e.line, e.column, "exponent out of range");
      base = base.pow(static_cast<unsigned>(v));
    }
    return base;
  }

  Poly<F> atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::number: {
        Token n = lex_.next();
        return Poly<F>::constant(ring_.arity(), FieldTraits<F>::from_fraction(Integer(n.text), Integer(1)));
      }
      case Tok::ident: {
        Token id = lex_.next();
        auto i = ring_.find(id.text);
        if (!i) throw ParseError(id.line, id.column, "unknown indeterminate '" + id.text + "'");
        return Poly<F>::indet(ring_.arity(), *i);
      }
      case Tok::lparen: {
        lex_.next();
        Poly<F> inner = expression();
        lex_.expect(Tok::rparen, "')'");
        return inner;
      }
      default:
        lex_.fail("expected a number, an indeterminate or '('" +
                  std::string(t.kind == Tok::end ? ", found end of input" : ", found '" + t.text + "'"));
    }
  }

  const Ring& ring_;
  Lexer& lex_;
};

/// Parses a single polynomial; the whole input must be consumed.
template <Field F = Rational>
Poly<F> parse_poly(const Ring& ring, std::string_view text) {
  Lexer lex(text);
  PolyParser<F> p(ring, lex);
  Poly<F> f = p.expression();
  if (lex.peek().kind != Tok::end) lex.fail("unexpected '" + lex.peek().text + "'");
  return f;
}

/// Parses a comma-separated list of polynomials.
template <Field F = Rational>
std::vector<Poly<F>> parse_poly_list(const Ring& ring, std::string_view text) {
  Lexer lex(text);
  PolyParser<F> p(ring, lex);
  std::vector<Poly<F>> out;
  if (lex.peek().kind == Tok::end) return out;
  out.push_back(p.expression());
  while (lex.peek().kind == Tok::comma) {
    lex.next();
    out.push_back(p.expression());
  }
  if (lex.peek().kind != Tok::end) lex.fail("unexpected '" + lex.peek().text + "'");
  return out;
}

inline std::string term_to_string(const Term& t, const Ring& ring) {
  std::string s;
  for (Indet i = 0; i < t.arity(); ++i) {
    if (!t[i]) continue;
    if (!s.empty()) s += '*';
    s += ring.name(i);
    if (t[i] > 1) s += '^' + std::to_string(t[i]);
  }
  return s.empty() ? "1" : s;
}

namespace detail {

template <Field F>
void append_entry(std::string& out, const Term& t, const F& c, const Ring& ring, bool first) {
  bool neg = FieldTraits<F>::is_negative(c);
  F mag = neg ? F(-c) : c;
  if (first)
    out += neg ? "-" : "";
  else
    out += neg ? " - " : " + ";
  if (t.is_one()) {
    out += FieldTraits<F>::to_string(mag);
    return;
  }
  if (!(mag == F(1))) out += FieldTraits<F>::to_string(mag) + "*";
  out += term_to_string(t, ring);
}

}  // namespace detail

/// Infix rendering, e.g. `x - z + 2w` or `-1/2z^6 + y`. Terms descend in
/// degrevlex, or in `o` when given.
template <Field F>
std::string to_string(const Poly<F>& f, const Ring& ring, const TermOrdering* o = nullptr) {
  if (f.arity() != ring.arity()) throw std::invalid_argument("polynomial arity does not match the ring");
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  auto entries = o ? f.sorted_terms(*o) : f.terms();
  for (const auto& [t, c] : entries) {
    detail::append_entry(out, t, c, ring, first);
    first = false;
  }
  return out;
}

/// Renders f with the marked term first, then the others in degrevlex order,
/// matching the usual way marked pairs are written: `(x, x - z + 2w)`.
template <Field F>
std::string to_string_marked(const Poly<F>& f, const Term& marker, const Ring& ring) {
  if (f.is_zero()) return "0";
  std::string out;
  F mc = f.coefficient(marker);
  bool first = true;
  if (!is_zero(mc)) {
    detail::append_entry(out, marker, mc, ring, true);
    first = false;
  }
  for (const auto& [t, c] : f.terms()) {
    if (t == marker) continue;
    detail::append_entry(out, t, c, ring, first);
    first = false;
  }
  return out;
}

}  // namespace reembed

#endif  // REEMBED_TEXT_HPP
