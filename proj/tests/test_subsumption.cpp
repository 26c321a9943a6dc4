#include <gtest/gtest.h>

#include "nomau/antiunify.hpp"
#include "nomau/oracle.hpp"
#include "nomau/problem.hpp"
#include "nomau/subsumption.hpp"
#include "support/checks.hpp"
#include "support/golden.hpp"

using namespace nomau;

namespace {

Term T(std::string_view s) { return parse_term(s); }
FreshnessContext C(std::string_view s) { return parse_context(s); }
TermInContext P(std::string_view s) { return parse_term_in_context(s); }

bool holds(const golden::RelationCase& c) {
  const TermInContext l = P(c.left), r = P(c.right);
  return c.relation == "~=" ? equi_general(l, r) : subsumes(l, r);
}

bool holds_exhaustive(const golden::RelationCase& c) {
  const TermInContext l = P(c.left), r = P(c.right);
  const bool forward = subsumes_exhaustive(l, r, subsumption_candidates(l, r, 2));
  if (c.relation == "<=") return forward;
  return forward && subsumes_exhaustive(r, l, subsumption_candidates(r, l, 2));
}

}  // namespace

TEST(MatchTerms, Examples) {
  auto s = match_terms(T("f(Z, (a b)*Z)"), T("f(Y, (a b)*Y)"), {});
  ASSERT_TRUE(s);
  EXPECT_EQ(*s, (Substitution{{VarName("Z"), T("Y")}}));

  Term ground = T("f(a, b.g(b))");
  s = match_terms(ground, ground, {});
  ASSERT_TRUE(s);
  EXPECT_TRUE(s->empty());

  s = match_terms(T("(a b)*X"), T("(a c)*X"), C("{b#X}"));
  ASSERT_TRUE(s);
  EXPECT_EQ(*s, (Substitution{{VarName("X"), T("(a b)(a c)*X")}}));

  EXPECT_FALSE(match_terms(T("f(X, X)"), T("f(a, b)"), {}));
  EXPECT_FALSE(match_terms(T("a.X"), T("b.a"), {}));
  s = match_terms(T("a.X"), T("b.b"), {});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->at(VarName("X")), T("a"));
}

TEST(TermSubsumes, Examples) {
  EXPECT_TRUE(term_subsumes({}, T("f(X)"), T("f(Y)")));
  EXPECT_TRUE(term_subsumes(C("{c#X}"), T("X"), T("c.X")));
  EXPECT_FALSE(term_subsumes(C("{c#X}"), T("c.X"), T("X")));
  EXPECT_FALSE(term_equi_general(C("{c#X}"), T("X"), T("c.X")));
}

TEST(Subsumes, Examples) {
  EXPECT_TRUE(subsumes(P("<{a#X}, f(a)>"), P("<{}, f(a)>")));
  EXPECT_TRUE(subsumes(P("<{}, f(X)>"), P("<{a#X}, f(X)>")));
  EXPECT_FALSE(subsumes(P("<{a#X}, f(X)>"), P("<{}, f(Y)>")));
  EXPECT_FALSE(subsumes(P("<{a#X}, f(X)>"), P("<{a#X}, f(a)>")));
}

TEST(Subsumes, WitnessSendsUnusedVariablesToUnusedAtom) {
  NameSupply supply;
  auto w = subsumption_witness(P("<{a#X}, f(a)>"), P("<{}, f(a)>"), supply);
  ASSERT_TRUE(w);
  const Term& image = w->at(VarName("X"));
  ASSERT_TRUE(image.is_atom());
  EXPECT_NE(image.atom_name(), Atom("a"));
}

TEST(EquiGeneral, Examples) {
  EXPECT_TRUE(equi_general(P("<{b#X}, (a b)*X>"), P("<{c#X}, (a c)*X>")));
  const TermInContext p = P("<{a#X}, f(X, b.Y)>");
  EXPECT_TRUE(equi_general(p, p));
  EXPECT_FALSE(equi_general(P("<{}, X>"), P("<{a#X}, X>")));
}

TEST(Relations, WorkedExamplesReproduce) {
  for (const auto& c : golden::relation_cases()) EXPECT_EQ(holds(c), c.expected) << c.name;
}

// The matcher's answers agree with search over every substitution built from
// terms of depth <= 2, on the negatives and positives alike.
TEST(Relations, ExhaustiveSearchAgrees) {
  for (const auto& c : golden::relation_cases()) EXPECT_EQ(holds_exhaustive(c), c.expected) << c.name;
}

TEST(Oracle, EnumeratedGeneralizations) {
  NameSupply supply;
  const AtomSet a{Atom("a")};
  auto gs = enumerate_generalizations(P("<{}, a>"), P("<{}, a>"), a, 1, supply);
  auto has = [&](std::string_view t) {
    return std::any_of(gs.begin(), gs.end(), [&](const TermInContext& g) { return g.term == T(t); });
  };
  EXPECT_TRUE(has("a"));
  EXPECT_TRUE(std::any_of(gs.begin(), gs.end(), [](const TermInContext& g) { return g.term.is_susp(); }));

  gs = enumerate_generalizations(P("<{}, a>"), P("<{}, b>"), AtomSet{Atom("a"), Atom("b")}, 1, supply);
  EXPECT_FALSE(gs.empty());
  for (const auto& g : gs) EXPECT_FALSE(g.term.is_atom()) << to_string(g);
  EXPECT_THROW(enumerate_generalizations(P("<{}, a>"), P("<{}, a>"), parse_atom_list("a, b, c, d"), 1, supply),
               std::length_error);
}

// Chains built from generalizations of the same pair, where the matcher
// succeeds at every link.
TEST(SubsumptionProperty, ReflexiveAndTransitive) {
  gen::Rng rng(53);
  std::size_t chains = 0;
  for (int i = 0; i < 200; ++i) {
    auto in = checks::au_instance(rng, 4, 3, 3);
    TermInContext t{in.ctx, in.t};
    GenResult g = antiunify(in.t, in.s, in.ctx, in.avail);
    TermInContext r{g.gamma, g.term};
    GenResult gg = antiunify(g.term, in.t, g.gamma, in.avail);
    TermInContext top{gg.gamma, gg.term};
    NameSupply supply;
    EXPECT_TRUE(subsumes(t, t, supply));
    EXPECT_TRUE(subsumes(r, r, supply));
    if (subsumes(top, r, supply) && subsumes(r, t, supply)) {
      ++chains;
      EXPECT_TRUE(subsumes(top, t, supply)) << to_string(top) << " " << to_string(r) << " " << to_string(t);
    }
  }
  EXPECT_GT(chains, 100u);
}

TEST(SubsumptionProperty, EquiGeneralIsAnEquivalence) {
  gen::Rng rng(59);
  std::size_t triples = 0;
  for (int i = 0; i < 150; ++i) {
    auto in = checks::au_instance(rng, 3, 3, 2);
    std::vector<TermInContext> rs;
    for (std::uint64_t k = 0; k < 3; ++k) {
      AntiUnifyOptions opts;
      if (k) opts.seed = 7 * i + k;
      GenResult g = antiunify(in.t, in.s, in.ctx, in.avail, opts);
      rs.push_back({g.gamma, g.term});
    }
    NameSupply supply;
    if (equi_general(rs[0], rs[1], supply) && equi_general(rs[1], rs[2], supply)) {
      ++triples;
      EXPECT_TRUE(equi_general(rs[1], rs[0], supply));
      EXPECT_TRUE(equi_general(rs[0], rs[2], supply));
    }
  }
  EXPECT_GT(triples, 100u);
}
