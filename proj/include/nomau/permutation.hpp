#ifndef NOMAU_PERMUTATION_HPP
#define NOMAU_PERMUTATION_HPP

#include <algorithm>
#include <initializer_list>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "nomau/names.hpp"

namespace nomau {

struct Swapping {
  Atom left;
  Atom right;

  friend bool operator==(const Swapping&, const Swapping&) = default;
};

/// Finite permutation of atoms, kept as a forward and an inverse table.
///
/// Only moved atoms have entries, so two permutations compare equal exactly
/// when they act identically on every atom. A sequence of swappings
/// (a1 b1)...(an bn) is read outermost-first: the rightmost swapping is
/// applied to an atom first.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::span<const Swapping> swaps) {
    for (auto it = swaps.rbegin(); it != swaps.rend(); ++it) prepend(*it);
  }
  Permutation(std::initializer_list<Swapping> swaps)
      : Permutation(std::span<const Swapping>(swaps.begin(), swaps.size())) {}

  static Permutation swap(const Atom& a, const Atom& b) {
    Permutation p;
    p.prepend({a, b});
    return p;
  }

  /// Builds the bijection that sends from[i] to to[i]; atoms outside `from`
  /// are fixed. The caller guarantees `to` is a rearrangement of `from`.
  static Permutation from_mapping(std::span<const Atom> from, std::span<const Atom> to) {
    Permutation p;
    for (std::size_t i = 0; i < from.size(); ++i) {
      if (from[i] != to[i]) {
        p.fwd_.emplace(from[i], to[i]);
        p.inv_.emplace(to[i], from[i]);
      }
    }
    return p;
  }

  Atom apply(const Atom& a) const {
    auto it = fwd_.find(a);
    return it == fwd_.end() ? a : it->second;
  }

  Atom apply_inverse(const Atom& a) const {
    auto it = inv_.find(a);
    return it == inv_.end() ? a : it->second;
  }

  Permutation inverse() const {
    Permutation p;
    p.fwd_ = inv_;
    p.inv_ = fwd_;
    return p;
  }

  /// Replaces this permutation by (a b) composed after it, updating both
  /// tables in constant time.
  Permutation& prepend(const Swapping& s) {
    if (s.left == s.right) return *this;
    const Atom c = apply_inverse(s.left);
    const Atom d = apply_inverse(s.right);
    set(c, s.right);
    set(d, s.left);
    return *this;
  }

  Permutation prepended(const Swapping& s) const {
    Permutation p = *this;
    p.prepend(s);
    return p;
  }

  /// outer after inner: x -> outer(inner(x)).
  friend Permutation compose(const Permutation& outer, const Permutation& inner) {
    if (outer.is_identity()) return inner;
    if (inner.is_identity()) return outer;
    Permutation p;
    auto add = [&](const Atom& x) {
      Atom y = outer.apply(inner.apply(x));
      if (y != x && !p.fwd_.contains(x)) {
        p.inv_.emplace(y, x);
        p.fwd_.emplace(x, std::move(y));
      }
    };
    for (const auto& [x, _] : inner.fwd_) add(x);
    for (const auto& [x, _] : outer.fwd_) add(x);
    return p;
  }

  bool is_identity() const noexcept { return fwd_.empty(); }
  std::size_t support_size() const noexcept { return fwd_.size(); }

  /// Atoms moved by the permutation, ascending.
  std::vector<Atom> support() const {
    std::vector<Atom> out;
    out.reserve(fwd_.size());
    for (const auto& [a, _] : fwd_) out.push_back(a);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Canonical swap sequence: each cycle c0 -> c1 -> ... -> ck is written
  /// (c0 ck)...(c0 c2)(c0 c1) with c0 its least atom; cycles ascend by c0.
  std::vector<Swapping> swaps() const {
    std::vector<Swapping> out;
    std::set<Atom> seen;
    for (const Atom& start : support()) {
      if (seen.contains(start)) continue;
      std::vector<Atom> cycle{start};
      seen.insert(start);
      for (Atom next = apply(start); next != start; next = apply(next)) {
        cycle.push_back(next);
        seen.insert(next);
      }
      for (std::size_t i = cycle.size() - 1; i >= 1; --i) out.push_back({start, cycle[i]});
    }
    return out;
  }

  template <class Range>
  bool agrees_on(const Permutation& other, const Range& atoms) const {
    return std::all_of(std::begin(atoms), std::end(atoms),
                       [&](const Atom& a) { return apply(a) == other.apply(a); });
  }

  /// The part of the action on `keep`; every atom outside `keep` is fixed.
  /// Only meaningful when the permutation maps `keep` onto itself.
  Permutation restricted_to(const AtomSet& keep) const {
    Permutation p;
    for (const auto& [a, b] : fwd_) {
      if (keep.contains(a)) {
        p.fwd_.emplace(a, b);
        p.inv_.emplace(b, a);
      }
    }
    return p;
  }

  friend bool operator==(const Permutation& l, const Permutation& r) { return l.fwd_ == r.fwd_; }

 private:
  void set(const Atom& from, const Atom& to) {
    if (from == to) {
      fwd_.erase(from);
      inv_.erase(to);
    } else {
      fwd_.insert_or_assign(from, to);
      inv_.insert_or_assign(to, from);
    }
  }

  std::unordered_map<Atom, Atom> fwd_;
  std::unordered_map<Atom, Atom> inv_;
};

/// Atoms on which the two permutations disagree, drawn from `domain` and from
/// the atoms either permutation moves.
template <class Range>
std::set<Atom> perm_disagreement(const Permutation& p1, const Permutation& p2, const Range& domain) {
  std::set<Atom> out;
  auto check = [&](const Atom& a) {
    if (p1.apply(a) != p2.apply(a)) out.insert(a);
  };
  for (const Atom& a : domain) check(a);
  for (const Atom& a : p1.support()) check(a);
  for (const Atom& a : p2.support()) check(a);
  return out;
}

inline std::set<Atom> perm_disagreement(const Permutation& p1, const Permutation& p2) {
  return perm_disagreement(p1, p2, std::vector<Atom>{});
}

}  // namespace nomau

#endif  // NOMAU_PERMUTATION_HPP
