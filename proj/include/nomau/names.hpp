#ifndef NOMAU_NAMES_HPP
#define NOMAU_NAMES_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace nomau {

/// A name of one syntactic category. Atoms and variables get distinct
/// instantiations so they cannot be mixed up at compile time.
template <class Tag>
class Name {
 public:
  Name() = default;

  explicit Name(std::string name) : name_(std::move(name)) {
    if (name_.empty()) throw std::invalid_argument("empty name");
  }

  explicit Name(const char* name) : Name(std::string(name)) {}

  const std::string& str() const noexcept { return name_; }
  bool empty() const noexcept { return name_.empty(); }

  /// Names emitted by a NameSupply start with '#', which user syntax rejects.
  bool is_internal() const noexcept { return !name_.empty() && name_.front() == '#'; }

  friend bool operator==(const Name&, const Name&) = default;
  friend std::strong_ordering operator<=>(const Name& l, const Name& r) {
    return l.name_.compare(r.name_) <=> 0;
  }

 private:
  std::string name_;
};

struct AtomTag {};
struct VarTag {};

using Atom = Name<AtomTag>;
using VarName = Name<VarTag>;

}  // namespace nomau

template <class Tag>
struct std::hash<nomau::Name<Tag>> {
  std::size_t operator()(const nomau::Name<Tag>& n) const noexcept {
    return std::hash<std::string>{}(n.str());
  }
};

namespace nomau {

/// Finite set of atoms: a hash membership table plus the member list kept in
/// ascending atom order.
class AtomSet {
 public:
  AtomSet() = default;
  AtomSet(std::initializer_list<Atom> atoms) {
    for (const auto& a : atoms) insert(a);
  }
  template <class Range>
  explicit AtomSet(const Range& atoms) {
    for (const auto& a : atoms) insert(Atom(a));
  }

  bool contains(const Atom& a) const { return member_.contains(a); }

  bool insert(const Atom& a) {
    if (!member_.insert(a).second) return false;
    list_.insert(std::lower_bound(list_.begin(), list_.end(), a), a);
    return true;
  }

  bool erase(const Atom& a) {
    if (member_.erase(a) == 0) return false;
    list_.erase(std::lower_bound(list_.begin(), list_.end(), a));
    return true;
  }

  std::span<const Atom> list() const noexcept { return list_; }
  std::size_t size() const noexcept { return list_.size(); }
  bool empty() const noexcept { return list_.empty(); }
  using const_iterator = std::vector<Atom>::const_iterator;
  const_iterator begin() const noexcept { return list_.begin(); }
  const_iterator end() const noexcept { return list_.end(); }

  bool is_subset_of(const AtomSet& other) const {
    return std::all_of(list_.begin(), list_.end(),
                       [&](const Atom& a) { return other.contains(a); });
  }

  friend bool operator==(const AtomSet& l, const AtomSet& r) { return l.list_ == r.list_; }

 private:
  std::unordered_set<Atom> member_;
  std::vector<Atom> list_;
};

/// Source of fresh variable and atom names ("#v0", "#a0", ...).
///
/// Not thread-safe: serialize access to one supply or give each task its own.
class NameSupply {
 public:
  NameSupply() = default;

  void reserve(std::string name) { reserved_.insert(std::move(name)); }
  void reserve(const Atom& a) { reserve(a.str()); }
  void reserve(const VarName& v) { reserve(v.str()); }
  template <class Range>
  void reserve_all(const Range& names) {
    for (const auto& n : names) reserve(n);
  }

  VarName fresh_var() { return VarName(next('v', var_counter_)); }
  Atom fresh_atom() { return Atom(next('a', atom_counter_)); }

  std::size_t emitted() const noexcept { return var_counter_ + atom_counter_; }

 private:
  std::string next(char kind, std::size_t& counter) {
    for (;;) {
      std::string name = "#";
      name += kind;
      name += std::to_string(counter++);
      if (!reserved_.contains(name)) return name;
    }
  }

  std::size_t var_counter_ = 0;
  std::size_t atom_counter_ = 0;
  std::unordered_set<std::string> reserved_;
};

}  // namespace nomau

#endif  // NOMAU_NAMES_HPP
