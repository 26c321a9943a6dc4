#ifndef NOMAU_FRESHNESS_HPP
#define NOMAU_FRESHNESS_HPP

#include <deque>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <unordered_set>
#include <vector>

#include "nomau/term.hpp"

namespace nomau {

/// a#X: the instantiation of X may not contain a free.
struct FreshnessConstraint {
  Atom atom;
  VarName var;

  friend bool operator==(const FreshnessConstraint&, const FreshnessConstraint&) = default;
  // Grouped by variable, then atom.
  friend std::strong_ordering operator<=>(const FreshnessConstraint& l, const FreshnessConstraint& r) {
    if (auto c = l.var <=> r.var; c != 0) return c;
    return l.atom <=> r.atom;
  }
};

}  // namespace nomau

template <>
struct std::hash<nomau::FreshnessConstraint> {
  std::size_t operator()(const nomau::FreshnessConstraint& c) const noexcept {
    std::size_t h = std::hash<nomau::Atom>{}(c.atom);
    return h ^ (std::hash<nomau::VarName>{}(c.var) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

namespace nomau {

/// Finite set of freshness constraints with an O(1) membership table.
class FreshnessContext {
 public:
  FreshnessContext() = default;
  FreshnessContext(std::initializer_list<FreshnessConstraint> cs) {
    for (const auto& c : cs) insert(c);
  }

  bool contains(const Atom& a, const VarName& x) const { return member_.contains({a, x}); }
  bool contains(const FreshnessConstraint& c) const { return member_.contains(c); }

  bool insert(const FreshnessConstraint& c) {
    if (!member_.insert(c).second) return false;
    ordered_.insert(c);
    return true;
  }
  bool insert(const Atom& a, const VarName& x) { return insert(FreshnessConstraint{a, x}); }

  void insert_all(const FreshnessContext& other) {
    for (const auto& c : other) insert(c);
  }

  bool erase(const FreshnessConstraint& c) {
    if (member_.erase(c) == 0) return false;
    ordered_.erase(c);
    return true;
  }

  /// Drops every constraint on `x` and returns them.
  std::vector<FreshnessConstraint> extract_var(const VarName& x) {
    std::vector<FreshnessConstraint> out;
    auto it = ordered_.lower_bound(FreshnessConstraint{Atom{}, x});
    while (it != ordered_.end() && it->var == x) {
      out.push_back(*it);
      member_.erase(*it);
      it = ordered_.erase(it);
    }
    return out;
  }

  std::size_t size() const noexcept { return ordered_.size(); }
  bool empty() const noexcept { return ordered_.empty(); }
  using const_iterator = std::set<FreshnessConstraint>::const_iterator;
  const_iterator begin() const noexcept { return ordered_.begin(); }
  const_iterator end() const noexcept { return ordered_.end(); }

  std::set<VarName> vars() const {
    std::set<VarName> out;
    for (const auto& c : ordered_) out.insert(c.var);
    return out;
  }
  std::set<Atom> atoms() const {
    std::set<Atom> out;
    for (const auto& c : ordered_) out.insert(c.atom);
    return out;
  }

  bool is_subset_of(const FreshnessContext& other) const {
    for (const auto& c : ordered_)
      if (!other.contains(c)) return false;
    return true;
  }

  bool is_based_on(const AtomSet& avail) const {
    for (const auto& c : ordered_)
      if (!avail.contains(c.atom)) return false;
    return true;
  }

  friend bool operator==(const FreshnessContext& l, const FreshnessContext& r) {
    return l.ordered_ == r.ordered_;
  }

 private:
  std::set<FreshnessConstraint> ordered_;
  std::unordered_set<FreshnessConstraint> member_;
};

/// a # t, an input formula for FC.
struct FreshnessFormula {
  Atom atom;
  Term term;
};

// ---------------------------------------------------------------------------
// Derivability of ctx |- a # t and ctx |- t ~ s. Both rule systems have
// exactly one applicable rule per term shape, so plain recursion decides them.

inline bool derives_fresh(const FreshnessContext& ctx, const Atom& a, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      return a != t.atom_name();
    case Term::Kind::Susp:
      return ctx.contains(t.perm().apply_inverse(a), t.var_name());
    case Term::Kind::App:
      for (const Term& arg : t.args())
        if (!derives_fresh(ctx, a, arg)) return false;
      return true;
    case Term::Kind::Abs:
      return a == t.binder() || derives_fresh(ctx, a, t.body());
  }
  return false;
}

inline bool alpha_eq(const FreshnessContext& ctx, const Term& t, const Term& s) {
  if (t.same_node(s)) return true;
  if (t.kind() != s.kind()) return false;
  switch (t.kind()) {
    case Term::Kind::Atom:
      return t.atom_name() == s.atom_name();
    case Term::Kind::Abs:
      if (t.binder() == s.binder()) return alpha_eq(ctx, t.body(), s.body());
      return derives_fresh(ctx, t.binder(), s.body()) &&
             alpha_eq(ctx, t.body(), swap_apply_term(t.binder(), s.binder(), s.body()));
    case Term::Kind::App:
      if (t.symbol() != s.symbol() || t.args().size() != s.args().size()) return false;
      for (std::size_t i = 0; i < t.args().size(); ++i)
        if (!alpha_eq(ctx, t.args()[i], s.args()[i])) return false;
      return true;
    case Term::Kind::Susp: {
      if (t.var_name() != s.var_name()) return false;
      for (const Atom& a : perm_disagreement(t.perm(), s.perm()))
        if (!ctx.contains(a, t.var_name())) return false;
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// FC: minimal context justifying a set of freshness formulas.

/// Applies Del-FC, Abs-FC 1/2, Dec-FC and Sus-FC until no formula is left.
/// Returns nullopt when an irreducible a # a remains.
inline std::optional<FreshnessContext> fc(std::span<const FreshnessFormula> formulas) {
  std::deque<FreshnessFormula> work(formulas.begin(), formulas.end());
  FreshnessContext out;
  while (!work.empty()) {
    FreshnessFormula f = std::move(work.front());
    work.pop_front();
    const Term& t = f.term;
    switch (t.kind()) {
      case Term::Kind::Atom:
        if (t.atom_name() == f.atom) return std::nullopt;
        break;
      case Term::Kind::Abs:
        if (t.binder() != f.atom) work.push_back({f.atom, t.body()});
        break;
      case Term::Kind::App:
        for (const Term& arg : t.args()) work.push_back({f.atom, arg});
        break;
      case Term::Kind::Susp:
        out.insert(t.perm().apply_inverse(f.atom), t.var_name());
        break;
    }
  }
  return out;
}

inline std::optional<FreshnessContext> fc(std::initializer_list<FreshnessFormula> formulas) {
  return fc(std::span<const FreshnessFormula>(formulas.begin(), formulas.size()));
}

/// {a # X s | a#X in ctx}
inline std::vector<FreshnessFormula> instance_formulas(const FreshnessContext& ctx, const Substitution& s) {
  std::vector<FreshnessFormula> out;
  out.reserve(ctx.size());
  for (const auto& c : ctx) {
    auto it = s.find(c.var);
    out.push_back({c.atom, it == s.end() ? Term::var(c.var) : it->second});
  }
  return out;
}

/// ctx s = FC({a # X s | a#X in ctx}); nullopt when s does not respect ctx.
inline std::optional<FreshnessContext> ctx_instance(const FreshnessContext& ctx, const Substitution& s) {
  return fc(instance_formulas(ctx, s));
}

inline bool respects(const Substitution& s, const FreshnessContext& ctx) {
  return ctx_instance(ctx, s).has_value();
}

inline bool derives_all(const FreshnessContext& ctx, std::span<const FreshnessFormula> formulas) {
  for (const auto& f : formulas)
    if (!derives_fresh(ctx, f.atom, f.term)) return false;
  return true;
}

}  // namespace nomau

#endif  // NOMAU_FRESHNESS_HPP
