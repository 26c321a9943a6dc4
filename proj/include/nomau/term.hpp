#ifndef NOMAU_TERM_HPP
#define NOMAU_TERM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nomau/names.hpp"
#include "nomau/permutation.hpp"

namespace nomau {

/// Immutable nominal term: atom, abstraction a.t, application f(t1,...,tn)
/// or suspension pi*X. Copies share structure.
class Term {
 public:
  enum class Kind : std::uint8_t { Atom, Abs, App, Susp };

  static Term atom(Atom a);
  static Term abs(Atom binder, Term body);
  static Term app(std::string symbol, std::vector<Term> args = {});
  static Term susp(Permutation perm, VarName var);
  static Term var(VarName v) { return susp(Permutation{}, std::move(v)); }

  Kind kind() const noexcept;
  bool is_atom() const noexcept { return kind() == Kind::Atom; }
  bool is_abs() const noexcept { return kind() == Kind::Abs; }
  bool is_app() const noexcept { return kind() == Kind::App; }
  bool is_susp() const noexcept { return kind() == Kind::Susp; }

  // Atom
  const Atom& atom_name() const;
  // Abs
  const Atom& binder() const;
  const Term& body() const;
  // App
  const std::string& symbol() const;
  std::span<const Term> args() const;
  // Susp
  const Permutation& perm() const;
  const VarName& var_name() const;

  bool same_node(const Term& other) const noexcept { return node_ == other.node_; }

  friend bool operator==(const Term& l, const Term& r);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

namespace detail {
struct AtomNode {
  Atom atom;
};
struct AbsNode {
  Atom binder;
  Term body;
};
struct AppNode {
  std::string symbol;
  std::vector<Term> args;
};
struct SuspNode {
  Permutation perm;
  VarName var;
};
}  // namespace detail

struct Term::Node {
  std::variant<detail::AtomNode, detail::AbsNode, detail::AppNode, detail::SuspNode> data;
};

inline Term Term::atom(Atom a) {
  return Term(std::make_shared<const Node>(Node{detail::AtomNode{std::move(a)}}));
}
inline Term Term::abs(Atom binder, Term body) {
  return Term(std::make_shared<const Node>(Node{detail::AbsNode{std::move(binder), std::move(body)}}));
}
inline Term Term::app(std::string symbol, std::vector<Term> args) {
  return Term(std::make_shared<const Node>(Node{detail::AppNode{std::move(symbol), std::move(args)}}));
}
inline Term Term::susp(Permutation perm, VarName var) {
  return Term(std::make_shared<const Node>(Node{detail::SuspNode{std::move(perm), std::move(var)}}));
}

inline Term::Kind Term::kind() const noexcept { return static_cast<Kind>(node_->data.index()); }
inline const Atom& Term::atom_name() const { return std::get<detail::AtomNode>(node_->data).atom; }
inline const Atom& Term::binder() const { return std::get<detail::AbsNode>(node_->data).binder; }
inline const Term& Term::body() const { return std::get<detail::AbsNode>(node_->data).body; }
inline const std::string& Term::symbol() const { return std::get<detail::AppNode>(node_->data).symbol; }
inline std::span<const Term> Term::args() const { return std::get<detail::AppNode>(node_->data).args; }
inline const Permutation& Term::perm() const { return std::get<detail::SuspNode>(node_->data).perm; }
inline const VarName& Term::var_name() const { return std::get<detail::SuspNode>(node_->data).var; }

/// Syntactic equality; suspension permutations are compared by action.
inline bool operator==(const Term& l, const Term& r) {
  if (l.node_ == r.node_) return true;
  if (l.kind() != r.kind()) return false;
  switch (l.kind()) {
    case Term::Kind::Atom:
      return l.atom_name() == r.atom_name();
    case Term::Kind::Abs:
      return l.binder() == r.binder() && l.body() == r.body();
    case Term::Kind::App: {
      if (l.symbol() != r.symbol() || l.args().size() != r.args().size()) return false;
      for (std::size_t i = 0; i < l.args().size(); ++i)
        if (!(l.args()[i] == r.args()[i])) return false;
      return true;
    }
    case Term::Kind::Susp:
      return l.var_name() == r.var_name() && l.perm() == r.perm();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Structural measures

struct Measures {
  std::set<Atom> free_atoms;            // FA: suspensions contribute their moved atoms
  std::set<Atom> free_atoms_no_susp;    // FA ignoring suspensions
  std::set<Atom> atoms;                 // every atom occurring, binders included
  std::set<VarName> vars;
  std::size_t size = 0;                 // occurrences of atoms, variables and symbols
  std::size_t abs_count = 0;
};

namespace detail {
inline void measure(const Term& t, std::multiset<Atom>& bound, Measures& m) {
  auto add_free = [&](const Atom& a, bool from_susp) {
    if (bound.contains(a)) return;
    m.free_atoms.insert(a);
    if (!from_susp) m.free_atoms_no_susp.insert(a);
  };
  switch (t.kind()) {
    case Term::Kind::Atom:
      m.atoms.insert(t.atom_name());
      add_free(t.atom_name(), false);
      m.size += 1;
      break;
    case Term::Kind::Abs: {
      m.atoms.insert(t.binder());
      m.size += 1;
      m.abs_count += 1;
      auto it = bound.insert(t.binder());
      measure(t.body(), bound, m);
      bound.erase(it);
      break;
    }
    case Term::Kind::App:
      m.size += 1;
      for (const Term& a : t.args()) measure(a, bound, m);
      break;
    case Term::Kind::Susp: {
      m.vars.insert(t.var_name());
      const auto support = t.perm().support();
      for (const Atom& a : support) {
        m.atoms.insert(a);
        add_free(a, true);
      }
      m.size += 1 + 2 * t.perm().swaps().size();
      break;
    }
  }
}
}  // namespace detail

inline Measures measures(const Term& t) {
  Measures m;
  std::multiset<Atom> bound;
  detail::measure(t, bound, m);
  return m;
}

inline std::set<Atom> free_atoms(const Term& t) { return measures(t).free_atoms; }
inline std::set<Atom> atoms_of(const Term& t) { return measures(t).atoms; }
inline std::set<VarName> vars_of(const Term& t) { return measures(t).vars; }

inline std::size_t abs_count(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Abs:
      return 1 + abs_count(t.body());
    case Term::Kind::App: {
      std::size_t n = 0;
      for (const Term& a : t.args()) n += abs_count(a);
      return n;
    }
    default:
      return 0;
  }
}

/// Leaves have depth 1.
inline std::size_t depth(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Abs:
      return 1 + depth(t.body());
    case Term::Kind::App: {
      std::size_t d = 0;
      for (const Term& a : t.args()) d = std::max(d, depth(a));
      return 1 + d;
    }
    default:
      return 1;
  }
}

/// True when every atom of `t` is in `avail`.
inline bool is_based_on(const Term& t, const AtomSet& avail) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      return avail.contains(t.atom_name());
    case Term::Kind::Abs:
      return avail.contains(t.binder()) && is_based_on(t.body(), avail);
    case Term::Kind::App:
      for (const Term& a : t.args())
        if (!is_based_on(a, avail)) return false;
      return true;
    case Term::Kind::Susp:
      for (const Atom& a : t.perm().support())
        if (!avail.contains(a)) return false;
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Permutation action

/// p . t: renames every atom, binders included, and pushes p onto suspensions.
inline Term perm_apply_term(const Permutation& p, const Term& t) {
  if (p.is_identity()) return t;
  switch (t.kind()) {
    case Term::Kind::Atom:
      return Term::atom(p.apply(t.atom_name()));
    case Term::Kind::Abs:
      return Term::abs(p.apply(t.binder()), perm_apply_term(p, t.body()));
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(perm_apply_term(p, a));
      return Term::app(t.symbol(), std::move(args));
    }
    case Term::Kind::Susp:
      return Term::susp(compose(p, t.perm()), t.var_name());
  }
  return t;
}

inline Term swap_apply_term(const Atom& a, const Atom& b, const Term& t) {
  return perm_apply_term(Permutation::swap(a, b), t);
}

// ---------------------------------------------------------------------------
// Substitutions

/// Finite map from variables to terms; the empty map is the identity.
using Substitution = std::map<VarName, Term>;

/// Capture-allowing application: pi*X becomes pi . s(X).
inline Term subst_apply(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  switch (t.kind()) {
    case Term::Kind::Atom:
      return t;
    case Term::Kind::Abs: {
      Term body = subst_apply(t.body(), s);
      return body.same_node(t.body()) ? t : Term::abs(t.binder(), std::move(body));
    }
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      bool changed = false;
      for (const Term& a : t.args()) {
        args.push_back(subst_apply(a, s));
        changed = changed || !args.back().same_node(a);
      }
      return changed ? Term::app(t.symbol(), std::move(args)) : t;
    }
    case Term::Kind::Susp: {
      auto it = s.find(t.var_name());
      return it == s.end() ? t : perm_apply_term(t.perm(), it->second);
    }
  }
  return t;
}

/// Composition in postfix order: t(first then second) = (t first) second.
inline Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [x, t] : first) {
    Term image = subst_apply(t, second);
    if (!(image == Term::var(x))) out.emplace(x, std::move(image));
  }
  for (const auto& [x, t] : second)
    if (!first.contains(x)) out.emplace(x, t);
  return out;
}

}  // namespace nomau

#endif  // NOMAU_TERM_HPP
