#ifndef NOMAU_ANTIUNIFY_HPP
#define NOMAU_ANTIUNIFY_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nomau/equivariance.hpp"
#include "nomau/freshness.hpp"
#include "nomau/syntax.hpp"
#include "nomau/term.hpp"

// Anti-unification of two terms-in-context <ctx, t>, <ctx, s> over a finite
// atom set A. States are P; S; Gamma; sigma with the rules Dec, Abs, Sol on
// pending triples and Mer on the store.

namespace nomau {

/// X : lhs =^= rhs
struct AUT {
  VarName var;
  Term lhs;
  Term rhs;
};

struct NState {
  std::deque<AUT> pending;
  std::vector<AUT> store;
  FreshnessContext gamma;
  Substitution bindings;  // triangular: images may mention later-bound variables
};

struct GenResult {
  FreshnessContext gamma;
  Term term = Term::var(VarName("X"));
  std::vector<AUT> store;
  Substitution witness_left;
  Substitution witness_right;
  VarName root;
};

struct AntiUnifyOptions {
  /// Randomizes triple selection, the Abs atom, Mer pairing and orientation,
  /// and interleaves Mer attempts with the other rules.
  std::optional<std::uint64_t> seed;
  /// Called after every rule application with the rule name.
  std::function<void(const std::string&, const NState&)> observer;
};

// ---------------------------------------------------------------------------
// Pieces of the rules

/// {a#X | a in A, ctx |- a#lhs, ctx |- a#rhs}
inline FreshnessContext sol_gamma(const Term& lhs, const Term& rhs, const VarName& var, const AtomSet& avail,
                                  const FreshnessContext& ctx) {
  FreshnessContext out;
  for (const Atom& a : avail)
    if (derives_fresh(ctx, a, lhs) && derives_fresh(ctx, a, rhs)) out.insert(a, var);
  return out;
}

/// Atoms c of A with ctx |- c # lhs and ctx |- c # rhs, ascending.
inline std::vector<Atom> abs_atom_candidates(const Term& lhs_abs, const Term& rhs_abs, const AtomSet& avail,
                                             const FreshnessContext& ctx) {
  std::vector<Atom> out;
  for (const Atom& c : avail)
    if (derives_fresh(ctx, c, lhs_abs) && derives_fresh(ctx, c, rhs_abs)) out.push_back(c);
  return out;
}

/// Smallest atom usable by Abs, if any.
inline std::optional<Atom> choose_abs_atom(const Term& lhs_abs, const Term& rhs_abs, const AtomSet& avail,
                                           const FreshnessContext& ctx) {
  for (const Atom& c : avail)
    if (derives_fresh(ctx, c, lhs_abs) && derives_fresh(ctx, c, rhs_abs)) return c;
  return std::nullopt;
}

/// A permutation pi over Atoms(t1, s1, t2, s2) with ctx |- pi.t1 ~ t2 and
/// ctx |- pi.s1 ~ s2, if one exists.
inline std::optional<Permutation> merge_step(const AUT& first, const AUT& second, const FreshnessContext& ctx,
                                             NameSupply& supply) {
  AtomSet avail;
  for (const Term* t : {&first.lhs, &first.rhs, &second.lhs, &second.rhs})
    for (const Atom& a : atoms_of(*t)) avail.insert(a);
  EquivResult r = solve_equivariance({{first.lhs, second.lhs}, {first.rhs, second.rhs}}, ctx, avail, supply);
  return r.perm;
}

inline std::optional<Permutation> merge_step(const AUT& first, const AUT& second, const FreshnessContext& ctx) {
  NameSupply supply;
  return merge_step(first, second, ctx, supply);
}

/// A \ (Atoms(t, s) u Atoms(ctx))
inline AtomSet fresh_atoms_for(const AtomSet& avail, const Term& t, const Term& s, const FreshnessContext& ctx) {
  std::set<Atom> used = atoms_of(t);
  used.merge(atoms_of(s));
  used.merge(ctx.atoms());
  AtomSet out;
  for (const Atom& a : avail)
    if (!used.contains(a)) out.insert(a);
  return out;
}

inline bool is_saturated(const AtomSet& avail, const Term& t, const Term& s, const FreshnessContext& ctx) {
  return fresh_atoms_for(avail, t, s, ctx).size() >= std::min(abs_count(t), abs_count(s));
}

/// Adds just enough supply atoms to make `avail` saturated.
inline AtomSet saturate(const AtomSet& avail, const Term& t, const Term& s, const FreshnessContext& ctx,
                        NameSupply& supply) {
  AtomSet out = avail;
  const std::size_t need = std::min(abs_count(t), abs_count(s));
  std::size_t have = fresh_atoms_for(avail, t, s, ctx).size();
  const std::set<Atom> used = [&] {
    std::set<Atom> u = atoms_of(t);
    u.merge(atoms_of(s));
    u.merge(ctx.atoms());
    return u;
  }();
  while (have < need) {
    Atom c = supply.fresh_atom();
    if (out.contains(c) || used.contains(c)) continue;
    out.insert(c);
    ++have;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace detail {

class AntiUnifier {
 public:
  AntiUnifier(const FreshnessContext& ctx, const AtomSet& avail, NameSupply& supply, const AntiUnifyOptions& opts)
      : ctx_(ctx), avail_(avail), supply_(supply), opts_(opts) {
    if (opts.seed) rng_.emplace(*opts.seed);
  }

  GenResult run(const Term& t, const Term& s) {
    const VarName root = supply_.fresh_var();
    state_.pending.push_back({root, t, s});
    if (rng_) {
      run_random();
    } else {
      while (!state_.pending.empty()) step(take_pending(0));
      merge_greedy();
    }
    return finish(root);
  }

 private:
  void notify(const char* rule) {
    if (opts_.observer) opts_.observer(rule, state_);
  }

  AUT take_pending(std::size_t i) {
    std::swap(state_.pending[i], state_.pending.front());
    AUT a = std::move(state_.pending.front());
    state_.pending.pop_front();
    return a;
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(*rng_); }

  void step(AUT aut) {
    const Term& t = aut.lhs;
    const Term& s = aut.rhs;
    if (t.is_atom() && s.is_atom() && t.atom_name() == s.atom_name()) {
      state_.bindings.insert_or_assign(aut.var, t);
      notify("Dec");
      return;
    }
    if (t.is_app() && s.is_app() && t.symbol() == s.symbol() && t.args().size() == s.args().size()) {
      std::vector<Term> vars;
      vars.reserve(t.args().size());
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        VarName y = supply_.fresh_var();
        vars.push_back(Term::var(y));
        state_.pending.push_back({std::move(y), t.args()[i], s.args()[i]});
      }
      state_.bindings.insert_or_assign(aut.var, Term::app(t.symbol(), std::move(vars)));
      notify("Dec");
      return;
    }
    if (t.is_abs() && s.is_abs()) {
      std::optional<Atom> c;
      if (rng_) {
        auto cands = abs_atom_candidates(t, s, avail_, ctx_);
        if (!cands.empty()) c = cands[pick(cands.size())];
      } else {
        c = choose_abs_atom(t, s, avail_, ctx_);
      }
      if (c) {
        VarName y = supply_.fresh_var();
        state_.bindings.insert_or_assign(aut.var, Term::abs(*c, Term::var(y)));
        state_.pending.push_back(
            {std::move(y), swap_apply_term(*c, t.binder(), t.body()), swap_apply_term(*c, s.binder(), s.body())});
        notify("Abs");
        return;
      }
    }
    // Sol: distinct heads, two suspensions, or abstractions without a usable atom.
    state_.gamma.insert_all(sol_gamma(t, s, aut.var, avail_, ctx_));
    state_.store.push_back(std::move(aut));
    notify("Sol");
  }

  // Removes store[drop], binding its variable to pi . store[keep].var.
  void merge(std::size_t keep, std::size_t drop, const Permutation& pi) {
    const VarName kept = state_.store[keep].var;
    const VarName gone = state_.store[drop].var;
    for (const auto& c : state_.gamma.extract_var(gone)) state_.gamma.insert(pi.apply_inverse(c.atom), kept);
    state_.bindings.insert_or_assign(gone, Term::susp(pi, kept));
    state_.store.erase(state_.store.begin() + static_cast<std::ptrdiff_t>(drop));
    notify("Mer");
  }

  bool try_merge(std::size_t keep, std::size_t drop) {
    auto pi = merge_step(state_.store[keep], state_.store[drop], ctx_, supply_);
    if (!pi) return false;
    merge(keep, drop, *pi);
    return true;
  }

  void merge_greedy() {
    for (std::size_t i = 0; i < state_.store.size(); ++i) {
      for (std::size_t j = i + 1; j < state_.store.size();) {
        if (!try_merge(i, j)) ++j;
      }
    }
  }

  // Tries store pairs in random order until none merges.
  void merge_random_exhaustive() {
    for (bool merged = true; merged;) {
      merged = false;
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t i = 0; i < state_.store.size(); ++i)
        for (std::size_t j = 0; j < state_.store.size(); ++j)
          if (i != j) pairs.emplace_back(i, j);
      std::shuffle(pairs.begin(), pairs.end(), *rng_);
      for (auto [keep, drop] : pairs) {
        if (try_merge(keep, drop)) {
          merged = true;
          break;
        }
      }
    }
  }

  void run_random() {
    while (!state_.pending.empty()) {
      if (state_.store.size() >= 2 && pick(3) == 0) {
        std::size_t keep = pick(state_.store.size());
        std::size_t drop = pick(state_.store.size() - 1);
        if (drop >= keep) ++drop;
        try_merge(keep, drop);
        continue;
      }
      step(take_pending(pick(state_.pending.size())));
    }
    merge_random_exhaustive();
  }

  Term resolve(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Atom:
        return t;
      case Term::Kind::Abs:
        return Term::abs(t.binder(), resolve(t.body()));
      case Term::Kind::App: {
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args()) args.push_back(resolve(a));
        return Term::app(t.symbol(), std::move(args));
      }
      case Term::Kind::Susp: {
        auto bound = state_.bindings.find(t.var_name());
        if (bound == state_.bindings.end()) return t;
        auto memo = resolved_.find(t.var_name());
        if (memo == resolved_.end()) memo = resolved_.emplace(t.var_name(), resolve(bound->second)).first;
        return perm_apply_term(t.perm(), memo->second);
      }
    }
    return t;
  }

  GenResult finish(const VarName& root) {
    GenResult out;
    out.root = root;
    out.term = resolve(Term::var(root));
    out.gamma = state_.gamma;
    for (const AUT& a : state_.store) {
      out.witness_left.insert_or_assign(a.var, a.lhs);
      out.witness_right.insert_or_assign(a.var, a.rhs);
    }
    out.store = std::move(state_.store);
    return out;
  }

  const FreshnessContext& ctx_;
  const AtomSet& avail_;
  NameSupply& supply_;
  const AntiUnifyOptions& opts_;
  std::optional<std::mt19937_64> rng_;
  NState state_;
  std::unordered_map<VarName, Term> resolved_;
};

}  // namespace detail

/// Least general avail-based generalization of <ctx, t> and <ctx, s>.
/// Throws std::invalid_argument when t, s or ctx mention atoms outside
/// `avail`.
inline GenResult antiunify(const Term& t, const Term& s, const FreshnessContext& ctx, const AtomSet& avail,
                           NameSupply& supply, const AntiUnifyOptions& opts = {}) {
  if (!is_based_on(t, avail)) throw std::invalid_argument("left term is not based on the atom set: " + to_string(t));
  if (!is_based_on(s, avail)) throw std::invalid_argument("right term is not based on the atom set: " + to_string(s));
  if (!ctx.is_based_on(avail)) throw std::invalid_argument("context is not based on the atom set: " + to_string(ctx));
  supply.reserve_all(vars_of(t));
  supply.reserve_all(vars_of(s));
  supply.reserve_all(ctx.vars());
  for (const Atom& a : avail) supply.reserve(a);
  return detail::AntiUnifier(ctx, avail, supply, opts).run(t, s);
}

inline GenResult antiunify(const Term& t, const Term& s, const FreshnessContext& ctx, const AtomSet& avail,
                           const AntiUnifyOptions& opts = {}) {
  NameSupply supply;
  return antiunify(t, s, ctx, avail, supply, opts);
}

}  // namespace nomau

#endif  // NOMAU_ANTIUNIFY_HPP
