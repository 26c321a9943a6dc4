#include <gtest/gtest.h>

#include <map>

#include "nomau/antiunify.hpp"
#include "nomau/oracle.hpp"
#include "nomau/subsumption.hpp"
#include "nomau/syntax.hpp"
#include "support/checks.hpp"

using namespace nomau;

namespace {

Term T(std::string_view s) { return parse_term(s); }
FreshnessContext C(std::string_view s) { return parse_context(s); }
AtomSet As(std::string_view s) { return parse_atom_list(s); }
Atom A(const char* s) { return Atom(s); }

GenResult run(std::string_view t, std::string_view s, std::string_view ctx, std::string_view avail) {
  return antiunify(T(t), T(s), C(ctx), As(avail));
}

bool same_up_to_renaming(const GenResult& g, std::string_view ctx, std::string_view term) {
  return equi_general({g.gamma, g.term}, {C(ctx), T(term)});
}

}  // namespace

TEST(AntiUnify, WorkedExamples) {
  auto g = run("f(a, b)", "f(b, c)", "{}", "a, b, c, d");
  EXPECT_TRUE(same_up_to_renaming(g, "{c#Y, d#Y}", "f(Y, (a b)(b c)*Y)")) << to_string(g.gamma) << to_string(g.term);
  ASSERT_EQ(g.store.size(), 1u);
  EXPECT_EQ(g.witness_left.begin()->second, T("a"));
  EXPECT_EQ(g.witness_right.begin()->second, T("b"));

  g = run("f(b, a)", "f(Y, (a b)*Y)", "{b#Y}", "a, b");
  EXPECT_TRUE(same_up_to_renaming(g, "{}", "f(Z, (a b)*Z)"));

  g = run("f(g(X), X)", "f(g(Y), Y)", "{}", "");
  EXPECT_TRUE(same_up_to_renaming(g, "{}", "f(g(Z), Z)"));

  g = run("f(a.b, X)", "f(b.a, Y)", "{c#X}", "a, b, c, d");
  EXPECT_TRUE(same_up_to_renaming(g, "{c#Z, d#Z}", "f(c.Z, W)"));

  g = run("a.b", "b.a", "{}", "a, b");
  EXPECT_TRUE(same_up_to_renaming(g, "{}", "X"));
  g = run("a.b", "b.a", "{}", "a, b, c");
  EXPECT_TRUE(same_up_to_renaming(g, "{c#X}", "c.X"));

  g = run("f(a, c.g(c))", "f(a, c.g(c))", "{}", "a, c");
  EXPECT_TRUE(same_up_to_renaming(g, "{}", "f(a, c.g(c))"));
  EXPECT_TRUE(g.store.empty());
}

TEST(AntiUnify, RejectsInputsOutsideAvail) {
  EXPECT_THROW(run("a", "b", "{}", "a"), std::invalid_argument);
  EXPECT_THROW(run("a", "a", "{b#X}", "a"), std::invalid_argument);
}

TEST(AntiUnify, RootVariableAvoidsInputVariables) {
  NameSupply supply;
  auto g = antiunify(T("X"), T("Y"), {}, {}, supply);
  EXPECT_NE(g.root, VarName("X"));
  EXPECT_NE(g.root, VarName("Y"));
  ASSERT_EQ(g.store.size(), 1u);
  EXPECT_EQ(g.term, Term::var(g.store.front().var));
}

TEST(SolGamma, Examples) {
  const VarName Y("Y");
  EXPECT_EQ(sol_gamma(T("a"), T("b"), Y, As("a, b, c, d"), {}), C("{c#Y, d#Y}"));
  EXPECT_TRUE(sol_gamma(T("a"), T("b"), Y, {}, {}).empty());
  EXPECT_EQ(sol_gamma(T("(a b)*X"), T("c"), Y, As("a, b, c"), C("{b#X}")), C("{a#Y}"));
}

TEST(ChooseAbsAtom, Examples) {
  EXPECT_EQ(choose_abs_atom(T("a.b"), T("b.a"), As("a, b, c"), {}), A("c"));
  EXPECT_FALSE(choose_abs_atom(T("a.b"), T("b.a"), As("a, b"), {}));
  // a and b are each bound on one side and absent from the other; c is free
  // in both bodies.
  EXPECT_EQ(choose_abs_atom(T("a.c"), T("b.c"), As("a, b, c, d"), {}), A("a"));
  EXPECT_EQ(abs_atom_candidates(T("a.c"), T("b.c"), As("a, b, c, d"), {}), (std::vector<Atom>{A("a"), A("b"), A("d")}));
}

TEST(MergeStep, Examples) {
  auto pi = merge_step({VarName("Y"), T("a"), T("b")}, {VarName("Z"), T("b"), T("c")}, {});
  ASSERT_TRUE(pi);
  EXPECT_EQ(pi->apply(A("a")), A("b"));
  EXPECT_EQ(pi->apply(A("b")), A("c"));

  AUT same{VarName("Y"), T("f(a, X)"), T("b.X")};
  pi = merge_step(same, {VarName("Z"), same.lhs, same.rhs}, {});
  ASSERT_TRUE(pi);
  EXPECT_TRUE(pi->is_identity());

  AUT y{VarName("Y"), T("a"), T("b")}, z{VarName("Z"), T("b"), T("a")};
  pi = merge_step(y, z, {});
  auto oracle = all_equivariance_solutions(std::vector<EquivEquation>{{y.lhs, z.lhs}, {y.rhs, z.rhs}}, {},
                                           As("a, b"));
  ASSERT_EQ(oracle.size(), 1u);
  ASSERT_TRUE(pi);
  EXPECT_EQ(*pi, oracle.front());

  EXPECT_FALSE(merge_step({VarName("Y"), T("a"), T("a")}, {VarName("Z"), T("a"), T("b")}, {}));
}

TEST(Saturation, FreshAtoms) {
  EXPECT_EQ(fresh_atoms_for(As("a, b, c"), T("a.b"), T("b.a"), {}), As("c"));
  EXPECT_TRUE(fresh_atoms_for(As("a, b"), T("a.b"), T("b.a"), {}).empty());
  EXPECT_EQ(fresh_atoms_for(As("a, b, c, d"), T("f(a, b)"), T("f(b, c)"), {}), As("d"));
  EXPECT_TRUE(fresh_atoms_for(As("a, b, c, d"), T("f(a, b)"), T("f(b, X)"), C("{c#X, d#X}")).empty());
}

TEST(Saturation, IsSaturated) {
  EXPECT_TRUE(is_saturated(As("a, b, c"), T("a.b"), T("b.a"), {}));
  EXPECT_TRUE(is_saturated(As("a"), T("f(a)"), T("g(a)"), {}));
  EXPECT_FALSE(is_saturated(As("a, b"), T("a.b"), T("b.a"), {}));
}

TEST(Saturation, Saturate) {
  NameSupply supply;
  EXPECT_EQ(saturate(As("a, b, c"), T("a.b"), T("b.a"), {}, supply), As("a, b, c"));
  AtomSet one = saturate(As("a, b"), T("a.b"), T("b.a"), {}, supply);
  EXPECT_EQ(one.size(), 3u);
  EXPECT_TRUE(is_saturated(one, T("a.b"), T("b.a"), {}));
  AtomSet three = saturate(As("a, b, c"), T("a.b.c.X"), T("c.a.b.Y"), {}, supply);
  EXPECT_EQ(three.size(), 6u);
  AtomSet two = saturate(As("a, b, c"), T("a.b.c"), T("c.a.b"), {}, supply);
  EXPECT_EQ(two.size(), 5u);
  EXPECT_TRUE(is_saturated(two, T("a.b.c"), T("c.a.b"), {}));
}

TEST(AntiUnifyProperty, Soundness) {
  gen::Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    auto in = checks::au_instance(rng, 5, 4, 4, gen::below(rng, 3));
    GenResult g = antiunify(in.t, in.s, in.ctx, in.avail);
    EXPECT_EQ(checks::check_soundness(in, g), "");
    EXPECT_EQ(checks::check_store_irreducible(in, g), "");
  }
}

TEST(AntiUnifyProperty, SingleOccurrenceOfGeneralizationVariables) {
  gen::Rng rng(37);
  for (int i = 0; i < 150; ++i) {
    auto in = checks::au_instance(rng, 4, 4, 3, 1);
    AntiUnifyOptions opts;
    if (i % 2) opts.seed = i;
    opts.observer = [&](const std::string& rule, const NState& st) {
      std::map<VarName, int> count;
      for (const AUT& a : st.pending) ++count[a.var];
      for (const AUT& a : st.store) ++count[a.var];
      for (const auto& [v, n] : count) {
        EXPECT_EQ(n, 1) << rule << " " << v.str();
        EXPECT_FALSE(st.bindings.contains(v)) << rule << " " << v.str();
        for (const auto& c : st.gamma) EXPECT_TRUE(c.var.is_internal());
      }
    };
    antiunify(in.t, in.s, in.ctx, in.avail, opts);
  }
}

TEST(AntiUnifyProperty, UniqueModuloEquiGenerality) {
  gen::Rng rng(41);
  for (int i = 0; i < 40; ++i) {
    auto in = checks::au_instance(rng, 4, 3, 3, gen::below(rng, 2));
    EXPECT_EQ(checks::check_uniqueness(in, 6, 100 * i), "");
  }
}

TEST(AntiUnifyProperty, MonotoneInAtomSetAndStableWhenSaturated) {
  gen::Rng rng(43);
  std::size_t saturated_cases = 0;
  for (int i = 0; i < 120; ++i) {
    auto in = checks::au_instance(rng, 4, 3, 3, gen::below(rng, 3));
    bool saturated = false;
    EXPECT_EQ(checks::check_atom_set_growth(in, 1 + gen::below(rng, 2), saturated), "");
    saturated_cases += saturated ? 1 : 0;
  }
  EXPECT_GT(saturated_cases, 20u);
}

// Every generalization found by enumeration is at least as general as the
// computed one.
TEST(AntiUnifyProperty, LeastGeneralAgainstEnumeration) {
  gen::Rng rng(47);
  std::size_t compared = 0;
  for (int i = 0; i < 25; ++i) {
    gen::Shape shape{gen::atom_names(1 + gen::below(rng, 3)), gen::var_names(gen::below(rng, 2))};
    shape.symbols = {{"f", 2}, {"g", 1}};
    shape.max_depth = 2;
    Term t = gen::term(rng, shape), s = gen::term(rng, shape);
    FreshnessContext ctx = gen::context(rng, shape.atoms, shape.vars, 0.3);
    AtomSet avail = gen::atom_set(shape.atoms);
    GenResult g = antiunify(t, s, ctx, avail);
    TermInContext lgg{g.gamma, g.term};
    NameSupply supply;
    for (const auto& r : enumerate_generalizations({ctx, t}, {ctx, s}, avail, 2, supply)) {
      ++compared;
      EXPECT_TRUE(subsumes(r, lgg, supply))
          << to_string(r) << " not below " << to_string(lgg) << " for " << to_string(t) << " / " << to_string(s);
    }
  }
  EXPECT_GT(compared, 50u);
}
