#ifndef NOMAU_PROBLEM_HPP
#define NOMAU_PROBLEM_HPP

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nomau/antiunify.hpp"
#include "nomau/equivariance.hpp"
#include "nomau/freshness.hpp"
#include "nomau/oracle.hpp"
#include "nomau/subsumption.hpp"
#include "nomau/syntax.hpp"

// Problem files and result reports for the command-line front end.
//
// A problem file is a list of "key: value" lines:
//
//   atoms:   a, b, c, d
//   context: {a#X}
//   left:    f(a, b)
//   right:   f(b, c)
//   sig:     f/2, g/1
//
// Lines of the form "t ~ s" are equivariance equations. Blank lines and lines
// starting with ';' are ignored. Without an "atoms" line the atom set is
// everything mentioned by the terms and the context.

namespace nomau {

struct ProblemFile {
  std::optional<AtomSet> atoms;
  FreshnessContext context;
  std::optional<Term> left;
  std::optional<Term> right;
  std::vector<EquivEquation> equations;
  Signature signature;

  /// The declared atoms, or every atom the problem mentions.
  AtomSet atom_set() const {
    if (atoms) return *atoms;
    AtomSet out;
    auto add = [&](const Term& t) {
      for (const Atom& a : atoms_of(t)) out.insert(a);
    };
    if (left) add(*left);
    if (right) add(*right);
    for (const auto& e : equations) {
      add(e.lhs);
      add(e.rhs);
    }
    for (const Atom& a : context.atoms()) out.insert(a);
    return out;
  }

  /// Throws std::invalid_argument when something mentions an undeclared atom.
  void validate() const {
    if (!atoms) return;
    if (!context.is_based_on(*atoms)) throw std::invalid_argument("context uses atoms outside 'atoms'");
    if (left && !is_based_on(*left, *atoms)) throw std::invalid_argument("left term uses atoms outside 'atoms'");
    if (right && !is_based_on(*right, *atoms)) throw std::invalid_argument("right term uses atoms outside 'atoms'");
    for (const auto& e : equations)
      if (!is_based_on(e.lhs, *atoms) || !is_based_on(e.rhs, *atoms))
        throw std::invalid_argument("equation uses atoms outside 'atoms'");
  }
};

inline Signature load_signature_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open signature file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_signature(buf.str());
}

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

/// Splits "t ~ s" at the '~' outside parentheses.
inline EquivEquation parse_equation(std::string_view text, const ParseOptions& opts = {}) {
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '~' && depth == 0)
      return {parse_term(text.substr(0, i), opts), parse_term(text.substr(i + 1), opts)};
  }
  throw ParseError("expected 't ~ s'", 0);
}

/// "<ctx, t>" (angle brackets optional).
inline TermInContext parse_term_in_context(std::string_view text, const ParseOptions& opts = {}) {
  return detail::parse_whole(text, opts, [](detail::Parser& p) {
    bool open = p.consume_literal("<") || p.consume_literal("⟨");
    TermInContext out{p.context(), Term::var(VarName("X"))};
    p.expect(',');
    out.term = p.term();
    if (open && !p.consume_literal(">") && !p.consume_literal("⟩")) p.fail("expected '>'");
    return out;
  });
}

inline ProblemFile parse_problem(std::string_view text, const Signature& default_signature = {},
                                 bool allow_internal_names = false) {
  struct Line {
    std::string key, value;
    std::size_t number;
  };
  std::vector<Line> lines;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++number;
    std::string line = trim(raw);
    if (line.empty() || line.front() == ';') continue;
    const auto colon = line.find(':');
    std::string key = colon == std::string::npos ? std::string() : trim(line.substr(0, colon));
    bool keyed = !key.empty() && std::all_of(key.begin(), key.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
    if (keyed)
      lines.push_back({key, trim(line.substr(colon + 1)), number});
    else
      lines.push_back({"", line, number});
  }

  ProblemFile out;
  out.signature = default_signature;
  for (const auto& l : lines)
    if (l.key == "sig") out.signature = parse_signature(l.value);

  ParseOptions opts;
  opts.signature = out.signature.empty() ? nullptr : &out.signature;
  opts.allow_internal_names = allow_internal_names;
  for (const auto& l : lines) {
    try {
      if (l.key == "sig") continue;
      if (l.key == "atoms")
        out.atoms = parse_atom_list(l.value, opts);
      else if (l.key == "context")
        out.context = parse_context(l.value, opts);
      else if (l.key == "left")
        out.left = parse_term(l.value, opts);
      else if (l.key == "right")
        out.right = parse_term(l.value, opts);
      else if (l.key.empty() || l.key == "eq")
        out.equations.push_back(parse_equation(l.value, opts));
      else
        throw std::invalid_argument("unknown key '" + l.key + "'");
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(l.number) + ": " + e.what(), e.position());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

enum class ReportKind { Generalization, Permutation, Boolean, Context, Failure };

inline const char* kind_name(ReportKind k) {
  switch (k) {
    case ReportKind::Generalization:
      return "generalization";
    case ReportKind::Permutation:
      return "permutation";
    case ReportKind::Boolean:
      return "boolean";
    case ReportKind::Context:
      return "context";
    case ReportKind::Failure:
      return "failure";
  }
  return "failure";
}

inline ReportKind kind_from_name(const std::string& s) {
  for (ReportKind k : {ReportKind::Generalization, ReportKind::Permutation, ReportKind::Boolean,
                       ReportKind::Context, ReportKind::Failure})
    if (s == kind_name(k)) return k;
  throw std::invalid_argument("unknown report kind '" + s + "'");
}

struct ResultReport {
  ReportKind kind = ReportKind::Failure;
  // generalization
  std::optional<AtomSet> atoms;
  std::optional<TermInContext> generalization;
  std::vector<AUT> store;
  Substitution witness_left;
  Substitution witness_right;
  // permutation
  std::optional<Permutation> perm;
  // boolean
  bool value = false;
  // context
  std::optional<FreshnessContext> context;

  std::vector<std::string> diagnostics;
};

/// 0 for success or true, 1 for false or failure.
inline int exit_code(const ResultReport& r) {
  switch (r.kind) {
    case ReportKind::Boolean:
      return r.value ? 0 : 1;
    case ReportKind::Failure:
      return 1;
    default:
      return 0;
  }
}

inline bool same_result(const ResultReport& l, const ResultReport& r) {
  if (l.kind != r.kind || l.diagnostics != r.diagnostics) return false;
  switch (l.kind) {
    case ReportKind::Generalization: {
      if (l.atoms != r.atoms || !l.generalization || !r.generalization) return false;
      if (!(l.generalization->ctx == r.generalization->ctx) || !(l.generalization->term == r.generalization->term))
        return false;
      if (l.store.size() != r.store.size()) return false;
      for (std::size_t i = 0; i < l.store.size(); ++i)
        if (l.store[i].var != r.store[i].var || !(l.store[i].lhs == r.store[i].lhs) ||
            !(l.store[i].rhs == r.store[i].rhs))
          return false;
      return l.witness_left == r.witness_left && l.witness_right == r.witness_right;
    }
    case ReportKind::Permutation:
      return l.perm == r.perm;
    case ReportKind::Boolean:
      return l.value == r.value;
    case ReportKind::Context:
      return l.context == r.context;
    case ReportKind::Failure:
      return true;
  }
  return false;
}

// Machine format. Field order is fixed: kind, then the payload fields of
// that kind in the order written below, then diagnostics. Terms are strings
// in the term syntax with constants written "c()".

inline nlohmann::ordered_json to_json(const ResultReport& r) {
  const PrintOptions p{.explicit_constants = true};
  nlohmann::ordered_json j;
  j["kind"] = kind_name(r.kind);
  switch (r.kind) {
    case ReportKind::Generalization: {
      if (r.atoms) {
        auto& arr = j["atoms"] = nlohmann::ordered_json::array();
        for (const Atom& a : *r.atoms) arr.push_back(a.str());
      }
      j["context"] = to_string(r.generalization->ctx);
      j["term"] = to_string(r.generalization->term, p);
      auto& store = j["store"] = nlohmann::ordered_json::array();
      for (const AUT& a : r.store)
        store.push_back({{"var", a.var.str()}, {"left", to_string(a.lhs, p)}, {"right", to_string(a.rhs, p)}});
      j["witness_left"] = to_string(r.witness_left, p);
      j["witness_right"] = to_string(r.witness_right, p);
      break;
    }
    case ReportKind::Permutation:
      j["permutation"] = to_string(*r.perm);
      break;
    case ReportKind::Boolean:
      j["value"] = r.value;
      break;
    case ReportKind::Context:
      j["context"] = to_string(*r.context);
      break;
    case ReportKind::Failure:
      break;
  }
  j["diagnostics"] = r.diagnostics;
  return j;
}

inline ResultReport report_from_json(const nlohmann::json& j) {
  ParseOptions opts;
  opts.allow_internal_names = true;
  ResultReport r;
  r.kind = kind_from_name(j.at("kind").get<std::string>());
  switch (r.kind) {
    case ReportKind::Generalization: {
      if (j.contains("atoms")) {
        AtomSet atoms;
        for (const auto& a : j.at("atoms")) atoms.insert(parse_atom(a.get<std::string>(), opts));
        r.atoms = std::move(atoms);
      }
      r.generalization = TermInContext{parse_context(j.at("context").get<std::string>(), opts),
                                       parse_term(j.at("term").get<std::string>(), opts)};
      for (const auto& a : j.at("store")) {
        ParseOptions vo = opts;
        r.store.push_back({detail::parse_whole(a.at("var").get<std::string>(), vo,
                                               [](detail::Parser& p) { return p.var(); }),
                           parse_term(a.at("left").get<std::string>(), opts),
                           parse_term(a.at("right").get<std::string>(), opts)});
      }
      r.witness_left = parse_substitution(j.at("witness_left").get<std::string>(), opts);
      r.witness_right = parse_substitution(j.at("witness_right").get<std::string>(), opts);
      break;
    }
    case ReportKind::Permutation:
      r.perm = parse_permutation(j.at("permutation").get<std::string>(), opts);
      break;
    case ReportKind::Boolean:
      r.value = j.at("value").get<bool>();
      break;
    case ReportKind::Context:
      r.context = parse_context(j.at("context").get<std::string>(), opts);
      break;
    case ReportKind::Failure:
      break;
  }
  r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  return r;
}

inline std::string to_text(const ResultReport& r) {
  std::string out;
  switch (r.kind) {
    case ReportKind::Generalization:
      if (r.atoms) out += "atoms: " + to_string(*r.atoms) + "\n";
      out += "generalization: " + to_string(*r.generalization) + "\n";
      out += "store:\n";
      for (const AUT& a : r.store)
        out += "  " + a.var.str() + ": " + to_string(a.lhs) + " =^= " + to_string(a.rhs) + "\n";
      out += "left witness: " + to_string(r.witness_left) + "\n";
      out += "right witness: " + to_string(r.witness_right) + "\n";
      break;
    case ReportKind::Permutation:
      out += to_string(*r.perm) + "\n";
      break;
    case ReportKind::Boolean:
      out += r.value ? "true\n" : "false\n";
      break;
    case ReportKind::Context:
      out += to_string(*r.context) + "\n";
      break;
    case ReportKind::Failure:
      out += "bot\n";
      break;
  }
  for (const auto& d : r.diagnostics) out += "note: " + d + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Commands

namespace detail {

/// Renames supply-generated variables to X1, X2, ... avoiding `taken`.
class VarRenamer {
 public:
  explicit VarRenamer(std::set<VarName> taken) : taken_(std::move(taken)) {}

  VarName operator()(const VarName& x) {
    if (!x.is_internal()) return x;
    auto it = map_.find(x);
    if (it != map_.end()) return it->second;
    VarName y;
    do {
      y = VarName("X" + std::to_string(++counter_));
    } while (taken_.contains(y));
    taken_.insert(y);
    return map_.emplace(x, y).first->second;
  }

  Term operator()(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Atom:
        return t;
      case Term::Kind::Abs:
        return Term::abs(t.binder(), (*this)(t.body()));
      case Term::Kind::App: {
        std::vector<Term> args;
        for (const Term& a : t.args()) args.push_back((*this)(a));
        return Term::app(t.symbol(), std::move(args));
      }
      case Term::Kind::Susp:
        return Term::susp(t.perm(), (*this)(t.var_name()));
    }
    return t;
  }

 private:
  std::set<VarName> taken_;
  std::map<VarName, VarName> map_;
  std::size_t counter_ = 0;
};

}  // namespace detail

struct AntiUnifyCommand {
  bool saturate = false;
  std::optional<std::uint64_t> seed;
};

inline ResultReport run_antiunify(const ProblemFile& pb, const AntiUnifyCommand& cmd = {}) {
  if (!pb.left || !pb.right) throw std::invalid_argument("antiunify needs 'left' and 'right'");
  pb.validate();
  NameSupply supply;
  AtomSet avail = pb.atom_set();
  for (const Atom& a : avail) supply.reserve(a);
  ResultReport r;
  r.kind = ReportKind::Generalization;
  if (cmd.saturate) {
    // The added atoms occur nowhere in the input, so they can take readable
    // names z1, z2, ... instead of supply names.
    AtomSet extended = avail;
    std::size_t counter = 0;
    for (const Atom& c : saturate(avail, *pb.left, *pb.right, pb.context, supply)) {
      if (avail.contains(c)) continue;
      Atom z;
      do {
        z = Atom("z" + std::to_string(++counter));
      } while (avail.contains(z));
      supply.reserve(z);
      extended.insert(z);
    }
    if (extended.size() != avail.size())
      r.diagnostics.push_back("saturation added " + std::to_string(extended.size() - avail.size()) + " atom(s)");
    avail = std::move(extended);
  } else if (!is_saturated(avail, *pb.left, *pb.right, pb.context)) {
    r.diagnostics.push_back("atom set is not saturated");
  }
  AntiUnifyOptions opts;
  opts.seed = cmd.seed;
  GenResult g = antiunify(*pb.left, *pb.right, pb.context, avail, supply, opts);

  std::set<VarName> taken = vars_of(*pb.left);
  taken.merge(vars_of(*pb.right));
  taken.merge(pb.context.vars());
  detail::VarRenamer rename(std::move(taken));
  FreshnessContext gamma;
  for (const auto& c : g.gamma) gamma.insert(c.atom, rename(c.var));
  r.atoms = avail;
  r.generalization = TermInContext{std::move(gamma), rename(g.term)};
  for (const AUT& a : g.store) {
    const VarName v = rename(a.var);
    r.store.push_back({v, a.lhs, a.rhs});
    r.witness_left.insert_or_assign(v, a.lhs);
    r.witness_right.insert_or_assign(v, a.rhs);
  }
  return r;
}

struct EquivCommand {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> oracle_max_atoms;  // cross-check with enumeration
};

inline ResultReport run_equiv(const ProblemFile& pb, const EquivCommand& cmd = {}) {
  std::vector<EquivEquation> eqs = pb.equations;
  if (pb.left && pb.right) eqs.push_back({*pb.left, *pb.right});
  if (eqs.empty()) throw std::invalid_argument("equiv needs 'left'/'right' or 't ~ s' lines");
  pb.validate();
  const AtomSet avail = pb.atom_set();
  NameSupply supply;
  EquivOptions opts;
  opts.shuffle_seed = cmd.seed;
  EquivResult res = solve_equivariance(eqs, pb.context, avail, supply, opts);
  ResultReport r;
  if (res) {
    r.kind = ReportKind::Permutation;
    r.perm = *res.perm;
  } else {
    r.kind = ReportKind::Failure;
    r.diagnostics.push_back(res.diagnostic);
  }
  if (cmd.oracle_max_atoms) {
    auto sols = all_equivariance_solutions(eqs, pb.context, avail, *cmd.oracle_max_atoms);
    const bool agree = sols.empty() != res.perm.has_value();
    r.diagnostics.push_back(std::string("enumeration over ") + std::to_string(avail.size()) + " atoms found " +
                            std::to_string(sols.size()) + " solution(s): " + (agree ? "agrees" : "DISAGREES"));
  }
  return r;
}

inline ResultReport run_alphaeq(const FreshnessContext& ctx, const Term& t, const Term& s) {
  ResultReport r;
  r.kind = ReportKind::Boolean;
  r.value = alpha_eq(ctx, t, s);
  return r;
}

inline ResultReport run_fresh(const FreshnessContext& ctx, const FreshnessFormula& f) {
  ResultReport r;
  r.kind = ReportKind::Boolean;
  r.value = derives_fresh(ctx, f.atom, f.term);
  return r;
}

inline ResultReport run_fc(std::span<const FreshnessFormula> formulas) {
  ResultReport r;
  if (auto ctx = fc(formulas)) {
    r.kind = ReportKind::Context;
    r.context = std::move(*ctx);
  } else {
    r.kind = ReportKind::Failure;
    r.diagnostics.push_back("an atom is required to be fresh for itself");
  }
  return r;
}

inline ResultReport run_subsumes(const TermInContext& p1, const TermInContext& p2,
                                 std::optional<std::size_t> exhaustive_depth = std::nullopt) {
  NameSupply supply;
  ResultReport r;
  r.kind = ReportKind::Boolean;
  auto witness = subsumption_witness(p1, p2, supply);
  r.value = witness.has_value();
  if (witness) r.diagnostics.push_back("witness " + to_string(*witness));
  if (exhaustive_depth) {
    const bool found = subsumes_exhaustive(p1, p2, subsumption_candidates(p1, p2, *exhaustive_depth));
    r.diagnostics.push_back("exhaustive search to depth " + std::to_string(*exhaustive_depth) + ": " +
                            (found ? "witness exists" : "no witness") +
                            (found == r.value ? "" : " (matcher missed it)"));
    r.value = r.value || found;
  }
  return r;
}

}  // namespace nomau

#endif  // NOMAU_PROBLEM_HPP
