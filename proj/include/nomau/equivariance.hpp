#ifndef NOMAU_EQUIVARIANCE_HPP
#define NOMAU_EQUIVARIANCE_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "nomau/freshness.hpp"
#include "nomau/syntax.hpp"
#include "nomau/term.hpp"

// Deciding whether some permutation pi over a given atom set A satisfies
// ctx |- pi . t ~ s for a set of equations t ~ s.
//
// Phase 1 decomposes equations down to atom equations (Dec-E, Alp-E, Sus-E),
// phase 2 builds pi from them (Rem-E, Sol-E). Alp-E swaps are not pushed
// through the terms eagerly: every equation side carries an environment
// permutation that is only consulted when an atom or suspension is reached.

namespace nomau {

struct EquivEquation {
  Term lhs;
  Term rhs;
};

struct EquivStep {
  std::string rule;       // "Dec-E", "Alp-E", "Sus-E", "Atom", "Rem-E", "Sol-E"
  std::size_t pending;    // equations left after the step
  std::size_t available;  // |A| after the step
};

struct EquivOptions {
  /// Picks equations in a pseudo-random order instead of first-in first-out.
  std::optional<std::uint64_t> shuffle_seed;
  std::function<void(const EquivStep&)> observer;
};

struct EquivResult {
  std::optional<Permutation> perm;
  std::string diagnostic;  // set on failure

  explicit operator bool() const noexcept { return perm.has_value(); }
};

namespace detail {

using Env = std::shared_ptr<const Permutation>;

struct EnvTerm {
  Env env;
  Term term;
};

struct PendingEq {
  EnvTerm lhs;
  EnvTerm rhs;
};

struct AtomEq {
  Atom lhs;
  Atom rhs;
};

template <class T>
T take(std::deque<T>& q, std::mt19937_64* rng) {
  std::size_t i = 0;
  if (rng && q.size() > 1) i = std::uniform_int_distribution<std::size_t>(0, q.size() - 1)(*rng);
  std::swap(q[i], q.front());
  T out = std::move(q.front());
  q.pop_front();
  return out;
}

inline std::string kind_name(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Atom:
      return "atom";
    case Term::Kind::Abs:
      return "abstraction";
    case Term::Kind::App:
      return "application";
    case Term::Kind::Susp:
      return "suspension";
  }
  return "term";
}

}  // namespace detail

/// Runs the two-phase algorithm on `eqs` with atoms drawn from `avail`.
/// On success the permutation moves only atoms of `avail`. Throws
/// std::invalid_argument if some equation mentions an atom outside `avail`.
inline EquivResult solve_equivariance(std::span<const EquivEquation> eqs, const FreshnessContext& ctx,
                                      const AtomSet& avail, NameSupply& supply,
                                      const EquivOptions& opts = {}) {
  for (const auto& e : eqs)
    if (!is_based_on(e.lhs, avail) || !is_based_on(e.rhs, avail))
      throw std::invalid_argument("equation mentions atoms outside the available set: " + to_string(e.lhs) +
                                  " ~ " + to_string(e.rhs));

  std::optional<std::mt19937_64> rng_storage;
  if (opts.shuffle_seed) rng_storage.emplace(*opts.shuffle_seed);
  std::mt19937_64* rng = rng_storage ? &*rng_storage : nullptr;

  const std::set<Atom> ctx_atoms = ctx.atoms();
  auto fresh_atom = [&] {
    for (;;) {
      Atom c = supply.fresh_atom();
      if (!avail.contains(c) && !ctx_atoms.contains(c)) return c;
    }
  };
  auto fail = [](std::string why) { return EquivResult{std::nullopt, std::move(why)}; };

  const detail::Env id = std::make_shared<const Permutation>();
  std::deque<detail::PendingEq> pending;
  for (const auto& e : eqs) pending.push_back({{id, e.lhs}, {id, e.rhs}});
  std::deque<detail::AtomEq> atom_eqs;

  std::size_t avail_size = avail.size();
  auto notify = [&](const char* rule, std::size_t left) {
    if (opts.observer) opts.observer({rule, left, avail_size});
  };

  // Phase 1
  while (!pending.empty()) {
    detail::PendingEq eq = detail::take(pending, rng);
    const Term& l = eq.lhs.term;
    const Term& r = eq.rhs.term;
    if (l.kind() != r.kind())
      return fail("shape clash: " + detail::kind_name(l) + " " + to_string(l) + " against " +
                  detail::kind_name(r) + " " + to_string(r));
    switch (l.kind()) {
      case Term::Kind::Atom:
        atom_eqs.push_back({eq.lhs.env->apply(l.atom_name()), eq.rhs.env->apply(r.atom_name())});
        notify("Atom", pending.size() + atom_eqs.size());
        break;
      case Term::Kind::App:
        if (l.symbol() != r.symbol() || l.args().size() != r.args().size())
          return fail("Dec-E: symbol clash " + l.symbol() + "/" + std::to_string(l.args().size()) + " against " +
                      r.symbol() + "/" + std::to_string(r.args().size()));
        for (std::size_t i = 0; i < l.args().size(); ++i)
          pending.push_back({{eq.lhs.env, l.args()[i]}, {eq.rhs.env, r.args()[i]}});
        notify("Dec-E", pending.size() + atom_eqs.size());
        break;
      case Term::Kind::Abs: {
        const Atom c = fresh_atom();
        auto shift = [&](const detail::EnvTerm& side) {
          const Atom binder = side.env->apply(side.term.binder());
          return detail::EnvTerm{
              std::make_shared<const Permutation>(side.env->prepended({c, binder})), side.term.body()};
        };
        pending.push_back({shift(eq.lhs), shift(eq.rhs)});
        notify("Alp-E", pending.size() + atom_eqs.size());
        break;
      }
      case Term::Kind::Susp: {
        if (l.var_name() != r.var_name())
          return fail("Sus-E: different variables " + l.var_name().str() + " and " + r.var_name().str());
        for (const Atom& a : avail) {
          if (ctx.contains(a, l.var_name())) continue;
          atom_eqs.push_back({eq.lhs.env->apply(l.perm().apply(a)), eq.rhs.env->apply(r.perm().apply(a))});
        }
        notify("Sus-E", pending.size() + atom_eqs.size());
        break;
      }
    }
  }

  // Phase 2
  std::unordered_set<Atom> left(avail.begin(), avail.end());
  Permutation pi;
  while (!atom_eqs.empty()) {
    detail::AtomEq eq = detail::take(atom_eqs, rng);
    const Atom image = pi.apply(eq.lhs);
    if (image == eq.rhs) {
      left.erase(eq.rhs);
      avail_size = left.size();
      notify("Rem-E", atom_eqs.size());
      continue;
    }
    if (!left.contains(image) || !left.contains(eq.rhs)) {
      const Atom& missing = left.contains(image) ? eq.rhs : image;
      return fail("Sol-E guard: " + eq.lhs.str() + " ~ " + eq.rhs.str() + " needs " + image.str() + " -> " +
                  eq.rhs.str() + " but " + missing.str() + " is not available");
    }
    pi.prepend({image, eq.rhs});
    left.erase(eq.rhs);
    avail_size = left.size();
    notify("Sol-E", atom_eqs.size());
  }
  return {pi.restricted_to(avail), {}};
}

inline EquivResult solve_equivariance(std::initializer_list<EquivEquation> eqs, const FreshnessContext& ctx,
                                      const AtomSet& avail, NameSupply& supply,
                                      const EquivOptions& opts = {}) {
  return solve_equivariance(std::span<const EquivEquation>(eqs.begin(), eqs.size()), ctx, avail, supply, opts);
}

/// Single equation over A = Atoms(t, s).
inline EquivResult solve_equivariance(const Term& t, const Term& s, const FreshnessContext& ctx) {
  AtomSet avail(atoms_of(t));
  for (const Atom& a : atoms_of(s)) avail.insert(a);
  NameSupply supply;
  return solve_equivariance({{t, s}}, ctx, avail, supply);
}

}  // namespace nomau

#endif  // NOMAU_EQUIVARIANCE_HPP
