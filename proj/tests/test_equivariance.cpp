#include <gtest/gtest.h>

#include "nomau/equivariance.hpp"
#include "nomau/oracle.hpp"
#include "nomau/syntax.hpp"
#include "support/checks.hpp"

using namespace nomau;

namespace {

Term T(std::string_view s) { return parse_term(s); }
FreshnessContext C(std::string_view s) { return parse_context(s); }
Atom A(const char* s) { return Atom(s); }

EquivResult solve(std::vector<EquivEquation> eqs, std::string_view ctx, std::string_view avail,
                  const EquivOptions& opts = {}) {
  NameSupply supply;
  return solve_equivariance(eqs, C(ctx), parse_atom_list(avail), supply, opts);
}

}  // namespace

TEST(Equivariance, TraceExampleEndsWithCD) {
  std::vector<std::string> rules;
  std::size_t final_avail = 99;
  EquivOptions opts;
  opts.observer = [&](const EquivStep& s) {
    rules.push_back(s.rule);
    final_avail = s.available;
  };
  auto r = solve({{T("a"), T("a")}, {T("a.(a b)(c d)*X"), T("b.X")}}, "{a#X}", "a, b, c, d", opts);
  ASSERT_TRUE(r);
  EXPECT_EQ(*r.perm, parse_permutation("(c d)"));
  EXPECT_EQ(final_avail, 1u);  // only b is left
  EXPECT_EQ(rules, (std::vector<std::string>{"Atom", "Alp-E", "Sus-E", "Rem-E", "Rem-E", "Sol-E", "Rem-E"}));
}

TEST(Equivariance, WorkedInstances) {
  EXPECT_FALSE(solve({{T("a.f(b, X)"), T("b.f(a, X)")}}, "{a#X}", "a, b"));
  auto r = solve({{T("a.f(b, (a b)*X)"), T("b.f(a, X)")}}, "{a#X}", "a, b");
  ASSERT_TRUE(r);
  EXPECT_EQ(*r.perm, parse_permutation("(b a)"));
  r = solve({{T("a.b.(a b)(a c)*X"), T("b.a.(a c)*X")}}, "{}", "a, b, c");
  ASSERT_TRUE(r);
  EXPECT_TRUE(r.perm->is_identity());
  EXPECT_FALSE(solve({{T("a.b.(a b)(a c)*X"), T("a.b.(b c)*X")}}, "{}", "a, b, c"));
}

TEST(Equivariance, GroundSelfEquationFixesFreeAtoms) {
  Term t = T("f(a, b.g(b, c), d)");
  auto r = solve({{t, t}}, "{}", "a, b, c, d");
  ASSERT_TRUE(r);
  EXPECT_TRUE(r.perm->agrees_on(Permutation{}, free_atoms(t)));
}

TEST(Equivariance, ShapeClashesFailWithDiagnostic) {
  auto r = solve({{T("f(a)"), T("g(a)")}}, "{}", "a");
  EXPECT_FALSE(r);
  EXPECT_NE(r.diagnostic.find("symbol clash"), std::string::npos);
  r = solve({{T("a.a"), T("a")}}, "{}", "a");
  EXPECT_NE(r.diagnostic.find("shape clash"), std::string::npos);
  r = solve({{T("X"), T("Y")}}, "{}", "a");
  EXPECT_NE(r.diagnostic.find("different variables"), std::string::npos);
}

TEST(Equivariance, RejectsEquationsOutsideAvail) {
  EXPECT_THROW(solve({{T("a"), T("b")}}, "{}", "a"), std::invalid_argument);
}

TEST(Equivariance, FreshAtomsNeverEscape) {
  gen::Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    auto in = checks::equiv_instance(rng, 4, 4);
    NameSupply supply;
    auto r = solve_equivariance(in.eqs, in.ctx, in.avail, supply);
    if (!r) continue;
    for (const Atom& a : r.perm->support()) {
      EXPECT_FALSE(a.is_internal());
      EXPECT_TRUE(in.avail.contains(a));
    }
  }
}

// Every Rem-E/Sol-E step consumes one atom equation and shrinks A by at most
// one atom (equations between Alp-E atoms remove nothing from A).
TEST(Equivariance, PhaseTwoProgress) {
  gen::Rng rng(19);
  for (int i = 0; i < 300; ++i) {
    auto in = checks::equiv_instance(rng, 4, 3);
    std::size_t prev_pending = 0, prev_avail = in.avail.size();
    bool phase2 = false;
    EquivOptions opts;
    opts.observer = [&](const EquivStep& s) {
      const bool second = s.rule == "Rem-E" || s.rule == "Sol-E";
      if (second) {
        EXPECT_EQ(s.pending + 1, prev_pending);
        EXPECT_LE(prev_avail - s.available, 1u);
        if (s.rule == "Sol-E") {
          EXPECT_EQ(prev_avail - s.available, 1u);
        }
      }
      phase2 = phase2 || second;
      if (!phase2) {
        EXPECT_EQ(s.available, in.avail.size());
      }
      prev_pending = s.pending;
      prev_avail = s.available;
    };
    NameSupply supply;
    solve_equivariance(in.eqs, in.ctx, in.avail, supply, opts);
  }
}

TEST(EquivarianceProperty, AgreesWithEnumeration) {
  gen::Rng rng(23);
  std::size_t solved = 0;
  for (int i = 0; i < 400; ++i) {
    auto in = checks::equiv_instance(rng, 4, 3);
    NameSupply supply;
    auto r = solve_equivariance(in.eqs, in.ctx, in.avail, supply);
    solved += r ? 1 : 0;
    EXPECT_EQ(checks::check_equivariance(in, r), "");
  }
  EXPECT_GT(solved, 100u);
}

TEST(EquivarianceProperty, StrategyIndependence) {
  gen::Rng rng(29);
  for (int i = 0; i < 150; ++i) {
    auto in = checks::equiv_instance(rng, 4, 3);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      EquivOptions opts;
      opts.shuffle_seed = seed * 1000 + i;
      NameSupply supply;
      auto r = solve_equivariance(in.eqs, in.ctx, in.avail, supply, opts);
      EXPECT_EQ(checks::check_equivariance(in, r), "");
    }
  }
}

TEST(BruteEquivariance, Examples) {
  auto id = brute_equivariance(T("f(a, b)"), T("f(a, b)"), {}, AtomSet{A("a"), A("b")});
  ASSERT_TRUE(id);
  EXPECT_TRUE(id->is_identity());
  auto sw = brute_equivariance(T("a"), T("b"), {}, AtomSet{A("a"), A("b")});
  ASSERT_TRUE(sw);
  EXPECT_EQ(*sw, Permutation::swap(A("a"), A("b")));
  EXPECT_THROW(brute_equivariance(T("a"), T("a"), {}, parse_atom_list("a, b, c, d, e, f")), std::length_error);
  EXPECT_EQ(all_permutations(parse_atom_list("a, b, c")).size(), 6u);
}
