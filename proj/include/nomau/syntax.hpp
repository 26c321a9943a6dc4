#ifndef NOMAU_SYNTAX_HPP
#define NOMAU_SYNTAX_HPP

#include <cctype>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nomau/freshness.hpp"
#include "nomau/term.hpp"

// Concrete syntax:
//
//   term    := atom | atom "." term | sym "(" term ("," term)* ")" | sym
//            | perm "*" VAR | VAR
//   perm    := ("(" atom atom ")")+        rightmost swapping applies first
//   context := "{" (atom "#" VAR ("," atom "#" VAR)*)? "}"
//
// Atoms and function symbols are lowercase-initial, variables uppercase-
// initial. A lowercase name followed by "(" is a function symbol, followed by
// "." a binder; a bare lowercase name is a constant only when the signature
// declares it with arity 0, otherwise an atom. "c()" always denotes a
// constant. Names starting with '#' are generated by NameSupply and accepted
// only with ParseOptions::allow_internal_names ("#a3" atoms, "#v3" variables).

namespace nomau {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Function symbol arities.
struct Signature {
  std::map<std::string, std::size_t> arity;

  bool empty() const noexcept { return arity.empty(); }
  bool is_constant(const std::string& sym) const {
    auto it = arity.find(sym);
    return it != arity.end() && it->second == 0;
  }
};

struct ParseOptions {
  const Signature* signature = nullptr;
  bool allow_internal_names = false;
};

namespace detail {

inline bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opts) : text_(text), opts_(opts) {}

  Term term() {
    skip_ws();
    if (peek() == '(') {
      Permutation p = perm();
      expect('*');
      return Term::susp(std::move(p), var());
    }
    if (at_var()) return Term::var(var());
    if (at_internal_atom()) {
      Atom a(internal_name('a'));
      skip_ws();
      if (peek() == '.') {
        ++pos_;
        return Term::abs(std::move(a), term());
      }
      return Term::atom(std::move(a));
    }
    const std::size_t start = pos_;
    std::string name = lower_name();
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      std::vector<Term> args;
      skip_ws();
      if (peek() == ')') {
        ++pos_;
      } else {
        for (;;) {
          args.push_back(term());
          skip_ws();
          if (peek() == ',') {
            ++pos_;
            continue;
          }
          expect(')');
          break;
        }
      }
      check_arity(name, args.size(), start);
      return Term::app(std::move(name), std::move(args));
    }
    if (peek() == '.') {
      ++pos_;
      return Term::abs(Atom(std::move(name)), term());
    }
    if (opts_.signature && opts_.signature->arity.contains(name)) {
      check_arity(name, 0, start);
      return Term::app(std::move(name));
    }
    return Term::atom(Atom(std::move(name)));
  }

  Permutation perm() {
    skip_ws();
    if (text_.substr(pos_, 2) == "Id" && !(pos_ + 2 < text_.size() && is_name_char(text_[pos_ + 2]))) {
      pos_ += 2;
      return {};
    }
    std::vector<Swapping> swaps;
    while (peek() == '(') {
      ++pos_;
      Atom a = atom();
      Atom b = atom();
      expect(')');
      swaps.push_back({std::move(a), std::move(b)});
      skip_ws();
    }
    if (swaps.empty()) fail("expected a permutation");
    return Permutation(swaps);
  }

  Atom atom() {
    skip_ws();
    if (at_internal_atom()) return Atom(internal_name('a'));
    return Atom(lower_name());
  }

  VarName var() {
    skip_ws();
    if (opts_.allow_internal_names && peek() == '#' && peek(1) == 'v') return VarName(internal_name('v'));
    if (!std::isupper(static_cast<unsigned char>(peek()))) fail("expected a variable");
    return VarName(name());
  }

  FreshnessContext context() {
    FreshnessContext ctx;
    skip_ws();
    if (consume_literal("∅")) return ctx;  // empty-set sign
    expect('{');
    skip_ws();
    if (peek() == '}') {
      ++pos_;
      return ctx;
    }
    for (;;) {
      Atom a = atom();
      expect('#');
      ctx.insert(std::move(a), var());
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect('}');
      return ctx;
    }
  }

  FreshnessFormula formula() {
    Atom a = atom();
    expect('#');
    return {std::move(a), term()};
  }

  std::vector<FreshnessFormula> formulas() {
    std::vector<FreshnessFormula> out;
    skip_ws();
    if (peek() != '{') {
      out.push_back(formula());
      return out;
    }
    ++pos_;
    skip_ws();
    if (peek() == '}') {
      ++pos_;
      return out;
    }
    for (;;) {
      out.push_back(formula());
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect('}');
      return out;
    }
  }

  Substitution substitution() {
    Substitution s;
    expect('{');
    skip_ws();
    if (peek() == '}') {
      ++pos_;
      return s;
    }
    for (;;) {
      VarName x = var();
      skip_ws();
      if (!consume_literal("->") && !consume_literal("↦")) fail("expected '->'");
      s.insert_or_assign(std::move(x), term());
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect('}');
      return s;
    }
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool consume_literal(std::string_view lit) {
    skip_ws();
    if (text_.substr(pos_, lit.size()) != lit) return false;
    pos_ += lit.size();
    return true;
  }

  void finish() {
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
  }

  bool at_end() {
    skip_ws();
    return pos_ == text_.size();
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::size_t position() const noexcept { return pos_; }

 private:
  bool at_var() const {
    if (std::isupper(static_cast<unsigned char>(peek()))) return true;
    return opts_.allow_internal_names && peek() == '#' && peek(1) == 'v';
  }
  bool at_internal_atom() const { return opts_.allow_internal_names && peek() == '#' && peek(1) == 'a'; }

  std::string name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string lower_name() {
    if (peek() == '#') fail("names starting with '#' are reserved");
    if (!std::islower(static_cast<unsigned char>(peek()))) fail("expected an atom or function symbol");
    return name();
  }

  std::string internal_name(char kind) {
    const std::size_t start = pos_;
    pos_ += 2;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(std::string("malformed generated name #") + kind);
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void check_arity(const std::string& sym, std::size_t n, std::size_t at) const {
    if (!opts_.signature) return;
    auto it = opts_.signature->arity.find(sym);
    if (it != opts_.signature->arity.end() && it->second != n)
      throw ParseError("arity mismatch for '" + sym + "': declared " + std::to_string(it->second) +
                           ", used with " + std::to_string(n),
                       at);
  }

  std::string_view text_;
  const ParseOptions& opts_;
  std::size_t pos_ = 0;
};

template <class F>
auto parse_whole(std::string_view text, const ParseOptions& opts, F&& f) {
  Parser p(text, opts);
  auto out = f(p);
  p.finish();
  return out;
}

}  // namespace detail

inline Term parse_term(std::string_view text, const ParseOptions& opts = {}) {
  return detail::parse_whole(text, opts, [](detail::Parser& p) { return p.term(); });
}

inline FreshnessContext parse_context(std::string_view text, const ParseOptions& opts = {}) {
  return detail::parse_whole(text, opts, [](detail::Parser& p) { return p.context(); });
}

inline Permutation parse_permutation(std::string_view text, const ParseOptions& opts = {}) {
  return detail::parse_whole(text, opts, [](detail::Parser& p) { return p.perm(); });
}

/// Either a single "a # t" or a braced, comma-separated set of them.
inline std::vector<FreshnessFormula> parse_formulas(std::string_view text, const ParseOptions& opts = {}) {
  return detail::parse_whole(text, opts, [](detail::Parser& p) { return p.formulas(); });
}

inline Substitution parse_substitution(std::string_view text, const ParseOptions& opts = {}) {
  return detail::parse_whole(text, opts, [](detail::Parser& p) { return p.substitution(); });
}

inline Atom parse_atom(std::string_view text, const ParseOptions& opts = {}) {
  return detail::parse_whole(text, opts, [](detail::Parser& p) { return p.atom(); });
}

/// Comma-separated atom list, e.g. "a, b, c"; braces are optional.
inline AtomSet parse_atom_list(std::string_view text, const ParseOptions& opts = {}) {
  return detail::parse_whole(text, opts, [](detail::Parser& p) {
    AtomSet out;
    bool braced = p.consume_literal("{");
    if (braced && p.consume_literal("}")) return out;
    if (!braced && p.at_end()) return out;
    for (;;) {
      out.insert(p.atom());
      if (p.consume_literal(",")) continue;
      if (braced) p.expect('}');
      return out;
    }
  });
}

/// "f/2, g/1, c/0"
inline Signature parse_signature(std::string_view text) {
  Signature sig;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) ++pos;
  };
  for (skip(); pos < text.size(); skip()) {
    const std::size_t start = pos;
    if (!std::islower(static_cast<unsigned char>(text[pos]))) throw ParseError("expected a function symbol", pos);
    while (pos < text.size() && detail::is_name_char(text[pos])) ++pos;
    std::string sym(text.substr(start, pos - start));
    if (pos >= text.size() || text[pos] != '/') throw ParseError("expected '/' after symbol", pos);
    ++pos;
    const std::size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (digits == pos) throw ParseError("expected an arity", pos);
    sig.arity[sym] = std::stoul(std::string(text.substr(digits, pos - digits)));
  }
  return sig;
}

// ---------------------------------------------------------------------------
// Printing

struct PrintOptions {
  /// Write constants as "c()" so they re-parse without a signature.
  bool explicit_constants = false;
};

inline std::string to_string(const Permutation& p) {
  if (p.is_identity()) return "Id";
  std::string out;
  for (const auto& s : p.swaps()) out += "(" + s.left.str() + " " + s.right.str() + ")";
  return out;
}

namespace detail {
inline void print(std::string& out, const Term& t, const PrintOptions& opts) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      out += t.atom_name().str();
      break;
    case Term::Kind::Abs:
      out += t.binder().str();
      out += '.';
      print(out, t.body(), opts);
      break;
    case Term::Kind::App:
      out += t.symbol();
      if (t.args().empty()) {
        if (opts.explicit_constants) out += "()";
        break;
      }
      out += '(';
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out += ", ";
        print(out, t.args()[i], opts);
      }
      out += ')';
      break;
    case Term::Kind::Susp:
      if (!t.perm().is_identity()) {
        out += to_string(t.perm());
        out += '*';
      }
      out += t.var_name().str();
      break;
  }
}
}  // namespace detail

inline std::string to_string(const Term& t, const PrintOptions& opts = {}) {
  std::string out;
  detail::print(out, t, opts);
  return out;
}

inline std::string to_string(const FreshnessContext& ctx) {
  std::string out = "{";
  bool first = true;
  for (const auto& c : ctx) {
    if (!first) out += ", ";
    first = false;
    out += c.atom.str() + "#" + c.var.str();
  }
  return out + "}";
}

inline std::string to_string(const Substitution& s, const PrintOptions& opts = {}) {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, t] : s) {
    if (!first) out += ", ";
    first = false;
    out += x.str() + " -> " + to_string(t, opts);
  }
  return out + "}";
}

inline std::string to_string(const AtomSet& atoms) {
  std::string out = "{";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ", ";
    out += atoms.list()[i].str();
  }
  return out + "}";
}

inline std::string to_string(const FreshnessFormula& f, const PrintOptions& opts = {}) {
  return f.atom.str() + " # " + to_string(f.term, opts);
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }
inline std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const FreshnessContext& c) { return os << to_string(c); }

}  // namespace nomau

#endif  // NOMAU_SYNTAX_HPP
