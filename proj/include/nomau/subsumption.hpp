#ifndef NOMAU_SUBSUMPTION_HPP
#define NOMAU_SUBSUMPTION_HPP

#include <optional>
#include <set>
#include <string>

#include "nomau/freshness.hpp"
#include "nomau/syntax.hpp"
#include "nomau/term.hpp"

namespace nomau {

/// <ctx, term>
struct TermInContext {
  FreshnessContext ctx;
  Term term;
};

inline std::string to_string(const TermInContext& p, const PrintOptions& opts = {}) {
  return "<" + to_string(p.ctx) + ", " + to_string(p.term, opts) + ">";
}

namespace detail {

inline bool match_into(const Term& p, const Term& u, const FreshnessContext& ctx, Substitution& sigma) {
  switch (p.kind()) {
    case Term::Kind::Atom:
      return u.is_atom() && u.atom_name() == p.atom_name();
    case Term::Kind::App:
      if (!u.is_app() || u.symbol() != p.symbol() || u.args().size() != p.args().size()) return false;
      for (std::size_t i = 0; i < p.args().size(); ++i)
        if (!match_into(p.args()[i], u.args()[i], ctx, sigma)) return false;
      return true;
    case Term::Kind::Abs:
      if (!u.is_abs()) return false;
      if (p.binder() == u.binder()) return match_into(p.body(), u.body(), ctx, sigma);
      // a.p' against b.u': need ctx |- a # u' and p' against (a b).u'
      return derives_fresh(ctx, p.binder(), u.body()) &&
             match_into(p.body(), swap_apply_term(p.binder(), u.binder(), u.body()), ctx, sigma);
    case Term::Kind::Susp: {
      auto it = sigma.find(p.var_name());
      if (it == sigma.end()) {
        sigma.emplace(p.var_name(), perm_apply_term(p.perm().inverse(), u));
        return true;
      }
      return alpha_eq(ctx, perm_apply_term(p.perm(), it->second), u);
    }
  }
  return false;
}

}  // namespace detail

/// Some sigma with ctx |- pattern sigma ~ target, found by syntax-directed
/// descent. nullopt means this procedure found none.
inline std::optional<Substitution> match_terms(const Term& pattern, const Term& target, const FreshnessContext& ctx) {
  Substitution sigma;
  if (!detail::match_into(pattern, target, ctx, sigma)) return std::nullopt;
  if (!alpha_eq(ctx, subst_apply(pattern, sigma), target)) return std::nullopt;
  return sigma;
}

/// ctx |- t1 <= t2
inline bool term_subsumes(const FreshnessContext& ctx, const Term& t1, const Term& t2) {
  return match_terms(t1, t2, ctx).has_value();
}

inline bool term_equi_general(const FreshnessContext& ctx, const Term& t1, const Term& t2) {
  return term_subsumes(ctx, t1, t2) && term_subsumes(ctx, t2, t1);
}

/// The witness for p1 <= p2, if the matcher finds one. Variables constrained in
/// p1.ctx but absent from p1.term are sent to an atom used nowhere else.
inline std::optional<Substitution> subsumption_witness(const TermInContext& p1, const TermInContext& p2,
                                                       NameSupply& supply) {
  auto sigma = match_terms(p1.term, p2.term, p2.ctx);
  if (!sigma) return std::nullopt;
  std::set<Atom> used = atoms_of(p1.term);
  used.merge(atoms_of(p2.term));
  used.merge(p1.ctx.atoms());
  used.merge(p2.ctx.atoms());
  for (const VarName& x : p1.ctx.vars()) {
    if (sigma->contains(x)) continue;
    Atom c = supply.fresh_atom();
    while (used.contains(c)) c = supply.fresh_atom();
    sigma->emplace(x, Term::atom(c));
  }
  const auto formulas = instance_formulas(p1.ctx, *sigma);
  if (!fc(formulas)) return std::nullopt;  // sigma does not respect p1.ctx
  if (!derives_all(p2.ctx, formulas)) return std::nullopt;
  return sigma;
}

/// p1 <= p2: p1 is at least as general as p2.
inline bool subsumes(const TermInContext& p1, const TermInContext& p2, NameSupply& supply) {
  return subsumption_witness(p1, p2, supply).has_value();
}

inline bool subsumes(const TermInContext& p1, const TermInContext& p2) {
  NameSupply supply;
  return subsumes(p1, p2, supply);
}

inline bool equi_general(const TermInContext& p1, const TermInContext& p2, NameSupply& supply) {
  return subsumes(p1, p2, supply) && subsumes(p2, p1, supply);
}

inline bool equi_general(const TermInContext& p1, const TermInContext& p2) {
  NameSupply supply;
  return equi_general(p1, p2, supply);
}

}  // namespace nomau

#endif  // NOMAU_SUBSUMPTION_HPP
