// nomau: command-line front end for the nominal anti-unification library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nomau/problem.hpp"

namespace {

struct Inputs {
  std::string file;
  std::string atoms;
  std::string context;
  std::string left;
  std::string right;
  bool json = false;
  std::string strategy = "default";
  std::size_t max_atoms = 0;
  std::size_t max_depth = 0;
  bool saturate = false;
  std::string positional1;
  std::string positional2;
  std::string positional3;
};

nomau::Signature default_signature() {
  if (const char* path = std::getenv("NOMAU_SIGNATURE"); path && *path) return nomau::load_signature_file(path);
  return {};
}

nomau::ProblemFile load_problem(const Inputs& in) {
  std::string text;
  if (!in.file.empty()) {
    std::ifstream f(in.file);
    if (!f) throw std::runtime_error("cannot open " + in.file);
    std::stringstream buf;
    buf << f.rdbuf();
    text = buf.str();
  }
  // Flags override or extend the file.
  if (!in.atoms.empty()) text += "\natoms: " + in.atoms;
  if (!in.context.empty()) text += "\ncontext: " + in.context;
  if (!in.left.empty()) text += "\nleft: " + in.left;
  if (!in.right.empty()) text += "\nright: " + in.right;
  return nomau::parse_problem(text, default_signature());
}

std::optional<std::uint64_t> strategy_seed(const std::string& s) {
  if (s == "default") return std::nullopt;
  std::size_t used = 0;
  std::uint64_t seed = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument("--strategy expects 'default' or a seed");
  return seed;
}

nomau::ParseOptions term_options(const nomau::Signature& sig) {
  nomau::ParseOptions opts;
  opts.signature = sig.empty() ? nullptr : &sig;
  return opts;
}

int emit(const nomau::ResultReport& r, bool json) {
  if (json)
    std::cout << nomau::to_json(r).dump(2) << "\n";
  else
    std::cout << nomau::to_text(r);
  return nomau::exit_code(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nominal anti-unification and related decision procedures"};
  app.require_subcommand(1);
  Inputs in;

  auto add_problem_flags = [&](CLI::App* cmd) {
    cmd->add_option("--file", in.file, "problem file");
    cmd->add_option("--atoms", in.atoms, "atom set, e.g. \"a, b, c\"");
    cmd->add_option("--context", in.context, "freshness context, e.g. \"{a#X}\"");
    cmd->add_option("--left", in.left, "left term");
    cmd->add_option("--right", in.right, "right term");
  };

  auto* antiunify = app.add_subcommand("antiunify", "least general generalization of two terms-in-context");
  add_problem_flags(antiunify);
  antiunify->add_flag("--saturate", in.saturate, "extend the atom set until it is saturated");
  antiunify->add_option("--strategy", in.strategy, "'default' or a seed for a randomized rule order");

  auto* equiv = app.add_subcommand("equiv", "find a permutation p with ctx |- p.t ~ s");
  add_problem_flags(equiv);
  equiv->add_option("--strategy", in.strategy, "'default' or a seed for a randomized equation order");
  equiv->add_option("--max-atoms", in.max_atoms, "also enumerate all permutations when |A| is at most this");

  auto* alphaeq = app.add_subcommand("alphaeq", "decide ctx |- t ~ s");
  alphaeq->add_option("--context", in.context, "freshness context");
  alphaeq->add_option("left", in.positional1, "t")->required();
  alphaeq->add_option("right", in.positional2, "s")->required();

  auto* fresh = app.add_subcommand("fresh", "decide ctx |- a # t");
  fresh->add_option("--context", in.context, "freshness context");
  fresh->add_option("formula", in.positional1, "\"a # t\"")->required();

  auto* fc = app.add_subcommand("fc", "least context justifying freshness formulas");
  fc->add_option("formulas", in.positional1, "\"{a # t, ...}\"")->required();

  auto* subsumes = app.add_subcommand("subsumes", "decide <ctx1, t1> <= <ctx2, t2>");
  subsumes->add_option("general", in.positional1, "\"<{a#X}, f(X)>\"")->required();
  subsumes->add_option("specific", in.positional2, "\"<{}, f(Y)>\"")->required();
  subsumes->add_option("--max-depth", in.max_depth, "also search substitutions up to this term depth");

  for (CLI::App* cmd : {antiunify, equiv, alphaeq, fresh, fc, subsumes})
    cmd->add_flag("--json", in.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (antiunify->parsed()) {
      nomau::AntiUnifyCommand cmd{in.saturate, strategy_seed(in.strategy)};
      return emit(nomau::run_antiunify(load_problem(in), cmd), in.json);
    }
    if (equiv->parsed()) {
      nomau::EquivCommand cmd{strategy_seed(in.strategy), std::nullopt};
      if (in.max_atoms > 0) cmd.oracle_max_atoms = in.max_atoms;
      return emit(nomau::run_equiv(load_problem(in), cmd), in.json);
    }
    const nomau::Signature sig = default_signature();
    const auto opts = term_options(sig);
    const nomau::FreshnessContext ctx =
        in.context.empty() ? nomau::FreshnessContext{} : nomau::parse_context(in.context, opts);
    if (alphaeq->parsed())
      return emit(nomau::run_alphaeq(ctx, nomau::parse_term(in.positional1, opts),
                                     nomau::parse_term(in.positional2, opts)),
                  in.json);
    if (fresh->parsed()) {
      auto formulas = nomau::parse_formulas(in.positional1, opts);
      if (formulas.size() != 1) throw std::invalid_argument("fresh expects a single formula \"a # t\"");
      return emit(nomau::run_fresh(ctx, formulas.front()), in.json);
    }
    if (fc->parsed()) return emit(nomau::run_fc(nomau::parse_formulas(in.positional1, opts)), in.json);
    if (subsumes->parsed()) {
      std::optional<std::size_t> depth;
      if (in.max_depth > 0) depth = in.max_depth;
      return emit(nomau::run_subsumes(nomau::parse_term_in_context(in.positional1, opts),
                                      nomau::parse_term_in_context(in.positional2, opts), depth),
                  in.json);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
