#include <gtest/gtest.h>

#include "mres/families.hpp"
#include "support.hpp"

using namespace mres;

namespace {

const Var x{1}, u{2}, t{3};

MergeMap u_eq(NodeStore& s, bool negated) {
  return MergeMap{u, negated ? s.query(x, 1, 0) : s.query(x, 0, 1)};
}

}  // namespace

TEST(Axiom, FalsifiesUniversalLiterals) {
  const auto f = example_formula();
  NodeStore s;
  const auto l1 = axiom_line(f, s, 0);
  EXPECT_EQ(l1.clause, Clause::from_dimacs({1, 3}));
  EXPECT_EQ(l1.maps[0].root, s.leaf(false));
  const auto l2 = axiom_line(f, s, 1);
  EXPECT_EQ(l2.clause, Clause::from_dimacs({-1, 3}));
  EXPECT_EQ(l2.maps[0].root, s.leaf(true));
  EXPECT_EQ(axiom_line(f, s, 3).clause, Clause::from_dimacs({-1, -3}));
  EXPECT_THROW(axiom_line(f, s, 4), RuleError);
}

TEST(Axiom, PurelyExistentialClauseGetsTrivialMaps) {
  const auto f = generate(FamilyId::kEq2, 2);
  NodeStore s;
  const auto b = axiom_line(f, s, f.matrix().size() - 1);
  EXPECT_EQ(b.clause.size(), 4U);
  for (const auto& m : b.maps) EXPECT_TRUE(m.is_trivial());
}

TEST(Resolve, ExampleDerivation) {
  const auto f = example_formula();
  NodeStore s;
  const auto l3 = resolve_lines(f, s, axiom_line(f, s, 0), axiom_line(f, s, 1), x);
  EXPECT_EQ(l3.clause, Clause::from_dimacs({3}));
  EXPECT_TRUE(is_isomorphic(l3.maps[0], u_eq(s, false)));
  const auto l6 = resolve_lines(f, s, axiom_line(f, s, 2), axiom_line(f, s, 3), x);
  EXPECT_EQ(l6.clause, Clause::from_dimacs({-3}));
  const auto l7 = resolve_lines(f, s, l3, l6, t);
  EXPECT_TRUE(l7.clause.empty());
  EXPECT_TRUE(is_isomorphic(l7.maps[0], u_eq(s, false)));
}

TEST(Resolve, TrivialSideTakesOther) {
  const Pcnf f(3, {{Quantifier::kExists, {x}}, {Quantifier::kForall, {u}}, {Quantifier::kExists, {t}}}, {});
  NodeStore s;
  const ProofLine a{Clause{Lit(t, true)}, {MergeMap{u, kTrivialRoot}}};
  const ProofLine b{Clause{Lit(t, false)}, {u_eq(s, true)}};
  EXPECT_TRUE(is_isomorphic(resolve_lines(f, s, a, b, t).maps[0], u_eq(s, true)));
  const ProofLine c{Clause{Lit(t, true)}, {u_eq(s, true)}};
  const ProofLine d{Clause{Lit(t, false)}, {MergeMap{u, kTrivialRoot}}};
  EXPECT_TRUE(is_isomorphic(resolve_lines(f, s, c, d, t).maps[0], u_eq(s, true)));
  const ProofLine e{Clause{Lit(t, false)}, {MergeMap{u, kTrivialRoot}}};
  EXPECT_TRUE(resolve_lines(f, s, a, e, t).maps[0].is_trivial());
}

TEST(Resolve, BlockedAfterUniversal) {
  const Pcnf f(3, {{Quantifier::kExists, {x}}, {Quantifier::kForall, {u}}, {Quantifier::kExists, {t}}}, {});
  NodeStore s;
  const ProofLine a{Clause{Lit(t, true)}, {u_eq(s, false)}};
  const ProofLine b{Clause{Lit(t, false)}, {u_eq(s, true)}};
  try {
    resolve_lines(f, s, a, b, t);
    FAIL();
  } catch (const BlockedResolution& e) {
    EXPECT_EQ(e.universal(), u);
  }
}

TEST(Resolve, RejectsBadPivots) {
  const auto f = example_formula();
  NodeStore s;
  const auto l1 = axiom_line(f, s, 0);
  const auto l2 = axiom_line(f, s, 1);
  EXPECT_THROW(resolve_lines(f, s, l2, l1, x), RuleError);
  EXPECT_THROW(resolve_lines(f, s, l1, l2, u), RuleError);
}

TEST(WeakenExist, AddsLiteral) {
  const auto f = example_formula();
  NodeStore s;
  const ProofLine l{Clause{Lit(t, true)}, {u_eq(s, false)}};
  const auto w = weaken_exist(f, l, Lit(x, true));
  EXPECT_EQ(w.clause, Clause::from_dimacs({1, 3}));
  EXPECT_EQ(w.maps, l.maps);
  EXPECT_EQ(weaken_exist(f, w, Lit(x, true)), w);
  EXPECT_THROW(weaken_exist(f, w, Lit(x, false)), RuleError);
  EXPECT_THROW(weaken_exist(f, w, Lit(u, true)), RuleError);
}

TEST(WeakenStrategy, FillsTrivialMap) {
  const auto heq = generate(FamilyId::kHEq2, 2);
  const auto eq = generate(FamilyId::kEq2, 2);
  NodeStore s;
  bool matched = false;
  for (std::size_t c = 0; c < heq.matrix().size(); ++c) {
    auto line = axiom_line(heq, s, c);
    const auto& eq_line_src = eq.matrix()[c];
    const auto target = axiom_line(eq, s, c);
    for (std::size_t k = 0; k < line.maps.size(); ++k) {
      if (line.maps[k].is_trivial() && !target.maps[k].is_trivial()) {
        line = weaken_strategy(heq, s, line, heq.universals()[k], target.maps[k].root == s.leaf(true));
        matched = true;
      }
    }
    EXPECT_EQ(line, target) << eq_line_src.to_string();
  }
  EXPECT_TRUE(matched);
}

TEST(WeakenStrategy, RejectsProgramMaps) {
  const auto f = example_formula();
  NodeStore s;
  const ProofLine l{Clause{Lit(t, true)}, {MergeMap{u, kTrivialRoot}}};
  const auto w = weaken_strategy(f, s, l, u, true);
  EXPECT_EQ(w.maps[0].root, s.leaf(true));
  EXPECT_THROW(weaken_strategy(f, s, w, u, false), RuleError);
  EXPECT_THROW(weaken_strategy(f, s, l, x, false), Error);
}
