#ifndef NOMAU_ORACLE_HPP
#define NOMAU_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nomau/equivariance.hpp"
#include "nomau/freshness.hpp"
#include "nomau/subsumption.hpp"
#include "nomau/term.hpp"

// Brute-force enumerations over tiny universes. They are slow on purpose and
// serve as ground truth for the decision procedures.

namespace nomau {

/// Every bijection of `atoms` onto itself, identity first.
inline std::vector<Permutation> all_permutations(const AtomSet& atoms, std::size_t max_atoms = 5) {
  if (atoms.size() > max_atoms)
    throw std::length_error("permutation enumeration over " + std::to_string(atoms.size()) +
                            " atoms exceeds the bound " + std::to_string(max_atoms));
  std::vector<Atom> from(atoms.begin(), atoms.end());
  std::vector<Atom> to = from;
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_mapping(from, to));
  } while (std::next_permutation(to.begin(), to.end()));
  return out;
}

/// All avail-based mu with ctx |- mu.lhs ~ rhs for every equation.
inline std::vector<Permutation> all_equivariance_solutions(std::span<const EquivEquation> eqs,
                                                           const FreshnessContext& ctx, const AtomSet& avail,
                                                           std::size_t max_atoms = 5) {
  std::vector<Permutation> out;
  for (Permutation& mu : all_permutations(avail, max_atoms)) {
    bool ok = std::all_of(eqs.begin(), eqs.end(), [&](const EquivEquation& e) {
      return alpha_eq(ctx, perm_apply_term(mu, e.lhs), e.rhs);
    });
    if (ok) out.push_back(std::move(mu));
  }
  return out;
}

/// First solution in enumeration order.
inline std::optional<Permutation> brute_equivariance(std::span<const EquivEquation> eqs, const FreshnessContext& ctx,
                                                     const AtomSet& avail, std::size_t max_atoms = 5) {
  for (Permutation& mu : all_permutations(avail, max_atoms)) {
    bool ok = std::all_of(eqs.begin(), eqs.end(), [&](const EquivEquation& e) {
      return alpha_eq(ctx, perm_apply_term(mu, e.lhs), e.rhs);
    });
    if (ok) return std::move(mu);
  }
  return std::nullopt;
}

inline std::optional<Permutation> brute_equivariance(const Term& t, const Term& s, const FreshnessContext& ctx,
                                                     const AtomSet& avail, std::size_t max_atoms = 5) {
  const EquivEquation eq{t, s};
  return brute_equivariance(std::span<const EquivEquation>(&eq, 1), ctx, avail, max_atoms);
}

// ---------------------------------------------------------------------------
// Term enumeration

struct TermUniverse {
  std::vector<Atom> atoms;
  std::vector<VarName> vars;
  std::map<std::string, std::size_t> symbols;  // symbol -> arity
  std::vector<Permutation> perms;              // suspension permutations; empty means Id only
};

/// Every term of depth <= `depth` over the universe, shallow terms first.
inline std::vector<Term> enumerate_terms(const TermUniverse& u, std::size_t depth) {
  std::vector<std::vector<Term>> by_depth(depth + 1);  // by_depth[d]: exactly depth d
  if (depth == 0) return {};
  for (const Atom& a : u.atoms) by_depth[1].push_back(Term::atom(a));
  for (const VarName& x : u.vars) {
    if (u.perms.empty()) {
      by_depth[1].push_back(Term::var(x));
    } else {
      for (const Permutation& p : u.perms) by_depth[1].push_back(Term::susp(p, x));
    }
  }
  for (const auto& [f, n] : u.symbols)
    if (n == 0) by_depth[1].push_back(Term::app(f));

  std::vector<Term> upto;  // all terms of depth < d
  for (std::size_t d = 2; d <= depth; ++d) {
    upto.insert(upto.end(), by_depth[d - 1].begin(), by_depth[d - 1].end());
    const auto& prev = by_depth[d - 1];
    for (const Atom& a : u.atoms)
      for (const Term& t : prev) by_depth[d].push_back(Term::abs(a, t));
    for (const auto& [f, n] : u.symbols) {
      if (n == 0) continue;
      // argument tuples over `upto` with at least one argument of depth d-1
      std::vector<std::size_t> idx(n, 0);
      const std::size_t shallow = upto.size() - prev.size();
      for (;;) {
        bool deep = std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return i >= shallow; });
        if (deep) {
          std::vector<Term> args;
          for (std::size_t i : idx) args.push_back(upto[i]);
          by_depth[d].push_back(Term::app(f, std::move(args)));
        }
        std::size_t k = 0;
        while (k < n && ++idx[k] == upto.size()) idx[k++] = 0;
        if (k == n) break;
      }
    }
  }
  std::vector<Term> out;
  for (auto& level : by_depth) out.insert(out.end(), level.begin(), level.end());
  return out;
}

/// Every freshness context over atoms x vars.
inline std::vector<FreshnessContext> all_contexts(std::span<const Atom> atoms, std::span<const VarName> vars) {
  std::vector<FreshnessConstraint> cells;
  for (const VarName& x : vars)
    for (const Atom& a : atoms) cells.push_back({a, x});
  if (cells.size() > 20) throw std::length_error("too many constraint combinations");
  std::vector<FreshnessContext> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << cells.size()); ++mask) {
    FreshnessContext ctx;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (mask & (std::size_t{1} << i)) ctx.insert(cells[i]);
    out.push_back(std::move(ctx));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subsumption by exhaustive search

/// Decides p1 <= p2 by trying every substitution for the variables of p1 with
/// images drawn from `candidates`. Exact relative to the candidate set.
inline bool subsumes_exhaustive(const TermInContext& p1, const TermInContext& p2,
                                const std::vector<Term>& candidates) {
  std::set<VarName> var_set = vars_of(p1.term);
  for (const VarName& x : p1.ctx.vars()) var_set.insert(x);
  const std::vector<VarName> vars(var_set.begin(), var_set.end());
  std::vector<std::size_t> idx(vars.size(), 0);
  if (candidates.empty()) return false;
  for (;;) {
    Substitution sigma;
    for (std::size_t i = 0; i < vars.size(); ++i) sigma.insert_or_assign(vars[i], candidates[idx[i]]);
    const auto formulas = instance_formulas(p1.ctx, sigma);
    if (fc(formulas) && derives_all(p2.ctx, formulas) && alpha_eq(p2.ctx, subst_apply(p1.term, sigma), p2.term))
      return true;
    std::size_t k = 0;
    while (k < vars.size() && ++idx[k] == candidates.size()) idx[k++] = 0;
    if (k == vars.size()) return false;
  }
}

/// Candidate images for subsumes_exhaustive: terms up to `depth` over the
/// atoms of both sides plus one extra atom, the variables of p2 with every
/// permutation of those atoms, and the symbols of both terms.
inline std::vector<Term> subsumption_candidates(const TermInContext& p1, const TermInContext& p2, std::size_t depth,
                                                std::size_t max_atoms = 4) {
  TermUniverse u;
  std::set<Atom> atoms = atoms_of(p1.term);
  atoms.merge(atoms_of(p2.term));
  atoms.merge(p1.ctx.atoms());
  atoms.merge(p2.ctx.atoms());
  NameSupply supply;
  Atom extra = supply.fresh_atom();
  while (atoms.contains(extra)) extra = supply.fresh_atom();
  atoms.insert(extra);
  u.atoms.assign(atoms.begin(), atoms.end());
  std::set<VarName> vars = vars_of(p2.term);
  for (const VarName& x : p2.ctx.vars()) vars.insert(x);
  u.vars.assign(vars.begin(), vars.end());
  if (!u.vars.empty()) u.perms = all_permutations(AtomSet(atoms), max_atoms);
  std::function<void(const Term&)> collect = [&](const Term& t) {
    if (t.is_app()) {
      u.symbols[t.symbol()] = t.args().size();
      for (const Term& a : t.args()) collect(a);
    } else if (t.is_abs()) {
      collect(t.body());
    }
  };
  collect(p1.term);
  collect(p2.term);
  return enumerate_terms(u, depth);
}

// ---------------------------------------------------------------------------
// Generalizations by enumeration

/// Every <ctx, r> with r over `avail`, the symbols of p1 and p2, at most two
/// variables and depth <= `depth`, such that <ctx, r> <= p1 and <= p2.
inline std::vector<TermInContext> enumerate_generalizations(const TermInContext& p1, const TermInContext& p2,
                                                            const AtomSet& avail, std::size_t depth,
                                                            NameSupply& supply) {
  if (avail.size() > 3 || depth > 2) throw std::length_error("generalization enumeration bounds exceeded");
  TermUniverse u;
  u.atoms.assign(avail.begin(), avail.end());
  u.vars = {VarName("#v_g1"), VarName("#v_g2")};
  u.perms = all_permutations(avail);
  std::function<void(const Term&)> collect = [&](const Term& t) {
    if (t.is_app()) {
      u.symbols[t.symbol()] = t.args().size();
      for (const Term& a : t.args()) collect(a);
    } else if (t.is_abs()) {
      collect(t.body());
    }
  };
  collect(p1.term);
  collect(p2.term);

  std::vector<TermInContext> out;
  for (const Term& r : enumerate_terms(u, depth)) {
    const std::set<VarName> rv = vars_of(r);
    const std::vector<VarName> vars(rv.begin(), rv.end());
    for (FreshnessContext& ctx : all_contexts(u.atoms, vars)) {
      TermInContext cand{std::move(ctx), r};
      if (subsumes(cand, p1, supply) && subsumes(cand, p2, supply)) out.push_back(std::move(cand));
    }
  }
  return out;
}

}  // namespace nomau

#endif  // NOMAU_ORACLE_HPP
