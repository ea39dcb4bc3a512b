#ifndef REEMBED_JOB_HPP
#define REEMBED_JOB_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "reembed/ordering.hpp"
#include "reembed/poly.hpp"
#include "reembed/ring.hpp"
#include "reembed/text.hpp"

namespace reembed {

enum class Command { gb, gfan_linear, cotangent, reembed, bbs };
enum class SearchAlg { gfan, cotangent };
enum class OutputFormat { text, json };

inline const char* to_string(Command c) {
  switch (c) {
    case Command::gb: return "gb";
    case Command::gfan_linear: return "gfan-linear";
    case Command::cotangent: return "cotangent";
    case Command::reembed: return "reembed";
    default: return "bbs";
  }
}

inline std::optional<Command> command_from_string(std::string_view s) {
  for (Command c : {Command::gb, Command::gfan_linear, Command::cotangent, Command::reembed, Command::bbs})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

/// A validated job. Statements in a job file have the form `key value;`.
/// Polynomials are written over the indeterminates declared by `ring`.
struct JobSpec {
  Command command = Command::gb;
  Ring ring;
  std::vector<Poly<Rational>> gens;
  /// Maximal terms of the order ideal (bbs).
  std::vector<Term> terms;
  std::string ordering_name = "degrevlex";
  std::optional<TermOrdering> ordering;
  /// Z for a separation check (gb) or a given tuple (reembed).
  std::optional<std::vector<Indet>> z;
  SearchAlg alg = SearchAlg::gfan;
  std::optional<std::size_t> size;
  bool optimal_only = false;
  bool all = false;
  bool sugar = false;
  /// bbs: continue with the cotangent search on the defining ideal.
  bool chain_reembed = false;
  std::optional<std::uint64_t> budget;
  std::optional<std::size_t> threads;
  std::optional<double> wall_seconds;
  OutputFormat format = OutputFormat::text;
};

namespace detail {

class JobParser {
 public:
  explicit JobParser(std::string_view text) : lex_(text) {}

  /// Parses `text` as an ordering spec for the ring of `job` and stores it there.
  static void parse_ordering_into(JobSpec& job, std::string_view text) {
    JobParser p(text);
    p.job_.ring = job.ring;
    p.ordering();
    if (p.lex_.peek().kind != Tok::end) p.lex_.fail("unexpected '" + p.lex_.peek().text + "'");
    job.ordering = std::move(p.job_.ordering);
    job.ordering_name = std::move(p.job_.ordering_name);
  }

  JobSpec parse() {
    if (lex_.peek().kind == Tok::end) lex_.fail("empty job, expected 'command'");
    Token first = lex_.peek();
    if (first.kind != Tok::ident || first.text != "command") lex_.fail("a job must start with 'command'");
    while (lex_.peek().kind != Tok::end) statement();
    validate(first);
    return std::move(job_);
  }

 private:
  void statement() {
    Token key = lex_.expect(Tok::ident, "a key");
    if (!seen_.insert(key.text).second) throw ParseError(key.line, key.column, "duplicate key '" + key.text + "'");
    const std::string& k = key.text;
    if (k == "command") {
      Token at = lex_.peek();
      std::string name = dashed_name();
      auto c = command_from_string(name);
      if (!c) throw ParseError(at.line, at.column, "unknown command '" + name + "'");
      job_.command = *c;
    } else if (k == "ring") {
      std::vector<std::string> names;
      for (const Token& t : ident_list()) {
        for (const auto& n : names)
          if (n == t.text) throw ParseError(t.line, t.column, "duplicate indeterminate '" + t.text + "'");
        names.push_back(t.text);
      }
      job_.ring = Ring(std::move(names));
    } else if (k == "gens" || k == "forms") {
      need_ring(key);
      gens_at_ = key;
      PolyParser<Rational> p(job_.ring, lex_);
      job_.gens.push_back(p.expression());
      while (lex_.peek().kind == Tok::comma) {
        lex_.next();
        job_.gens.push_back(p.expression());
      }
    } else if (k == "terms") {
      need_ring(key);
      PolyParser<Rational> p(job_.ring, lex_);
      do {
        Token at = lex_.peek();
        Poly<Rational> t = p.expression();
        if (t.size() != 1 || !(t.terms().front().second == Rational(1)))
          throw ParseError(at.line, at.column, "expected a term");
        job_.terms.push_back(t.terms().front().first);
      } while (lex_.peek().kind == Tok::comma && (lex_.next(), true));
    } else if (k == "ordering") {
      need_ring(key);
      ordering();
    } else if (k == "z" || k == "separating") {
      need_ring(key);
      std::vector<Indet> z;
      for (const Token& t : ident_list()) z.push_back(indet(t));
      job_.z = std::move(z);
    } else if (k == "alg") {
      Token t = lex_.expect(Tok::ident, "an algorithm");
      if (t.text == "gfan")
        job_.alg = SearchAlg::gfan;
      else if (t.text == "cotangent")
        job_.alg = SearchAlg::cotangent;
      else
        throw ParseError(t.line, t.column, "unknown algorithm '" + t.text + "'");
    } else if (k == "size") {
      job_.size = number(key);
    } else if (k == "budget") {
      job_.budget = number(key);
    } else if (k == "threads") {
      job_.threads = number(key);
    } else if (k == "wall") {
      job_.wall_seconds = static_cast<double>(number(key));
    } else if (k == "optimal_only") {
      job_.optimal_only = flag();
    } else if (k == "all") {
      job_.all = flag();
    } else if (k == "sugar") {
      job_.sugar = flag();
    } else if (k == "reembed") {
      job_.chain_reembed = flag();
    } else if (k == "format") {
      Token t = lex_.expect(Tok::ident, "'text' or 'json'");
      if (t.text != "text" && t.text != "json") throw ParseError(t.line, t.column, "unknown format '" + t.text + "'");
      job_.format = t.text == "json" ? OutputFormat::json : OutputFormat::text;
    } else {
      throw ParseError(key.line, key.column, "unknown key '" + k + "'");
    }
    lex_.expect(Tok::semicolon, "';'");
  }

  std::string dashed_name() {
    std::string s = lex_.expect(Tok::ident, "a name").text;
    while (lex_.peek().kind == Tok::minus) {
      lex_.next();
      s += "-" + lex_.expect(Tok::ident, "a name").text;
    }
    return s;
  }

  std::vector<Token> ident_list() {
    std::vector<Token> out{lex_.expect(Tok::ident, "an indeterminate")};
    while (lex_.peek().kind == Tok::comma) {
      lex_.next();
      out.push_back(lex_.expect(Tok::ident, "an indeterminate"));
    }
    return out;
  }

  Indet indet(const Token& t) const {
    auto i = job_.ring.find(t.text);
    if (!i) throw ParseError(t.line, t.column, "unknown indeterminate '" + t.text + "'");
    return *i;
  }

  std::uint64_t number(const Token& key) {
    Token t = lex_.expect(Tok::number, "a number");
    try {
      return std::stoull(t.text);
    } catch (const std::exception&) {
      throw ParseError(t.line, t.column, "number out of range for '" + key.text + "'");
    }
  }

  long signed_number() {
    bool neg = false;
    if (lex_.peek().kind == Tok::minus) {
      lex_.next();
      neg = true;
    }
    Token t = lex_.expect(Tok::number, "an integer");
    long v = 0;
    try {
      v = std::stol(t.text);
    } catch (const std::exception&) {
      throw ParseError(t.line, t.column, "integer out of range");
    }
    return neg ? -v : v;
  }

  bool flag() {
    if (lex_.peek().kind == Tok::semicolon) return true;
    Token t = lex_.expect(Tok::ident, "'true' or 'false'");
    if (t.text == "true") return true;
    if (t.text == "false") return false;
    throw ParseError(t.line, t.column, "expected 'true' or 'false'");
  }

  void need_ring(const Token& key) const {
    if (!seen_.contains("ring")) throw ParseError(key.line, key.column, "'ring' must be declared before '" + key.text + "'");
  }

  // degrevlex | lex | elim(z1, ...) | matrix((w11, ...), (w21, ...), ...)
  void ordering() {
    Token t = lex_.expect(Tok::ident, "an ordering");
    const std::size_t n = job_.ring.arity();
    if (t.text == "degrevlex") {
      job_.ordering = TermOrdering::degrevlex(n);
      job_.ordering_name = "degrevlex";
    } else if (t.text == "lex") {
      job_.ordering = TermOrdering::lex(n);
      job_.ordering_name = "lex";
    } else if (t.text == "elim") {
      lex_.expect(Tok::lparen, "'('");
      std::vector<Indet> z;
      std::string name = "elim(";
      for (const Token& v : ident_list()) {
        z.push_back(indet(v));
        name += (z.size() > 1 ? ", " : "") + v.text;
      }
      lex_.expect(Tok::rparen, "')'");
      try {
        job_.ordering = TermOrdering::elimination(z, n);
      } catch (const std::exception& e) {
        throw ParseError(t.line, t.column, e.what());
      }
      job_.ordering_name = name + ")";
    } else if (t.text == "matrix") {
      lex_.expect(Tok::lparen, "'('");
      std::vector<std::vector<long>> rows;
      do {
        Token open = lex_.expect(Tok::lparen, "'(' opening a row");
        std::vector<long> row{signed_number()};
        while (lex_.peek().kind == Tok::comma) {
          lex_.next();
          row.push_back(signed_number());
        }
        lex_.expect(Tok::rparen, "')'");
        if (row.size() != n) throw ParseError(open.line, open.column, "weight row length differs from the ring arity");
        rows.push_back(std::move(row));
      } while (lex_.peek().kind == Tok::comma && (lex_.next(), true));
      lex_.expect(Tok::rparen, "')'");
      try {
        job_.ordering = TermOrdering::custom(std::vector<TermOrdering::Row>(rows.begin(), rows.end()));
      } catch (const std::exception& e) {
        throw ParseError(t.line, t.column, e.what());
      }
      job_.ordering_name = "matrix";
    } else {
      throw ParseError(t.line, t.column, "unknown ordering '" + t.text + "'");
    }
  }

  void require(const char* key, const Token& at) const {
    if (!seen_.contains(key))
      throw ParseError(at.line, at.column, std::string("command '") + to_string(job_.command) + "' needs '" + key + "'");
  }

  void validate(const Token& at) const {
    require("ring", at);
    if (job_.command == Command::bbs) {
      require("terms", at);
    } else {
      if (!seen_.contains("gens") && !seen_.contains("forms")) require("gens", at);
    }
    if (job_.command == Command::gfan_linear)
      for (const auto& f : job_.gens)
        if (!f.is_zero() && !f.is_linear_form())
          throw ParseError(gens_at_.line, gens_at_.column, "gfan-linear expects linear forms");
  }

  Lexer lex_;
  JobSpec job_;
  std::set<std::string> seen_;
  Token gens_at_{Tok::end, "", 1, 1};
};

}  // namespace detail

/// Parses and validates a job file; errors are ParseError with line and column.
inline JobSpec parse_job(std::string_view text) { return detail::JobParser(text).parse(); }

/// Replaces the ordering of a parsed job, e.g. with `elim(x, y)`.
inline void set_ordering(JobSpec& job, std::string_view spec) { detail::JobParser::parse_ordering_into(job, spec); }

}  // namespace reembed

#endif  // REEMBED_JOB_HPP
