#include <gtest/gtest.h>

#include "mres/circuit.hpp"
#include "mres/families.hpp"
#include "support.hpp"

using namespace mres;
using namespace mres::testing;

namespace {

// exists 1..6, forall 7, exists 8
Pcnf six_then_u() {
  return Pcnf(8, {{Quantifier::kExists, {Var{1}, Var{2}, Var{3}, Var{4}, Var{5}, Var{6}}},
                  {Quantifier::kForall, {Var{7}}},
                  {Quantifier::kExists, {Var{8}}}},
              {});
}

const std::vector<std::uint32_t> kXs = {1, 2, 3, 4, 5, 6};

}  // namespace

TEST(Property, MergeSemantics) {
  std::mt19937_64 rng(1);
  const auto f = six_then_u();
  NodeStore s;
  for (int t = 0; t < 1000; ++t) {
    const auto ta = random_tree(rng, 5, kXs);
    const auto tb = random_tree(rng, 5, kXs);
    const Var p{kXs[rng() % kXs.size()]};
    const MergeMap a{Var{7}, to_store(s, ta)}, b{Var{7}, to_store(s, tb)};
    const auto m = merge(s, f, p, a, b);
    Assignment alpha(8);
    for (auto x : kXs) alpha.set(Var{x}, rng() % 2 == 1);
    EXPECT_EQ(evaluate(s, m, alpha), *alpha.get(p) ? tree_eval(tb, alpha) : tree_eval(ta, alpha));
    EXPECT_EQ(evaluate(s, a, alpha), tree_eval(ta, alpha));
    EXPECT_LE(node_count(s, m), node_count(s, a) + node_count(s, b) + 1);
  }
}

TEST(Property, IsomorphismIsStructuralEquality) {
  std::mt19937_64 rng(2);
  NodeStore s;
  for (int t = 0; t < 500; ++t) {
    const auto ta = random_tree(rng, 3, {1, 2});
    const auto tb = rng() % 2 ? ta : random_tree(rng, 3, {1, 2});
    const MergeMap a{Var{7}, to_store(s, ta, false)}, b{Var{7}, to_store(s, tb, true)};
    EXPECT_EQ(is_isomorphic(a, b), tree_equal(ta, tb));
    EXPECT_TRUE(is_isomorphic(a, a));
    EXPECT_EQ(is_isomorphic(a, b), is_isomorphic(b, a));
  }
}

TEST(Property, IsomorphismIsTransitive) {
  std::mt19937_64 rng(3);
  NodeStore s;
  std::vector<MergeMap> pool;
  for (int t = 0; t < 60; ++t) pool.push_back({Var{7}, to_store(s, random_tree(rng, 2, {1}), t % 2 == 0)});
  for (const auto& a : pool)
    for (const auto& b : pool)
      for (const auto& c : pool)
        if (is_isomorphic(a, b) && is_isomorphic(b, c)) EXPECT_TRUE(is_isomorphic(a, c));
}

TEST(Property, HashConsingIsCanonical) {
  std::mt19937_64 rng(4);
  NodeStore s;
  for (int t = 0; t < 300; ++t) {
    const auto tr = random_tree(rng, 4, kXs);
    EXPECT_EQ(to_store(s, tr, false), to_store(s, tr, true));
    const auto copy = random_tree(rng, 0, kXs);
    EXPECT_EQ(to_store(s, copy), s.leaf(copy->value));
  }
}

// Random derivations on small formulas: whatever the checker accepts must
// satisfy the line invariant.
TEST(Property, AcceptedDerivationsSatisfyInvariant) {
  std::mt19937_64 rng(5);
  std::size_t accepted = 0;
  for (int t = 0; t < 150; ++t) {
    std::vector<QuantBlock> prefix;
    for (std::uint32_t v = 1; v <= 5; ++v) {
      prefix.push_back({v == 2 || v == 4 ? Quantifier::kForall : Quantifier::kExists, {Var{v}}});
    }
    std::vector<Clause> m;
    for (int c = 0; c < 7; ++c) {
      std::vector<Lit> lits;
      for (int k = 0; k < 3; ++k) lits.emplace_back(Var{static_cast<std::uint32_t>(rng() % 5 + 1)}, rng() % 2);
      Clause cl(lits);
      if (!cl.is_tautology()) m.push_back(cl);
    }
    if (m.empty()) continue;
    const Pcnf f(5, prefix, m);
    Proof p;
    for (std::size_t c = 0; c < m.size(); ++c) p.steps.push_back(AxiomStep{c});
    for (int k = 0; k < 12; ++k) {
      const auto cur = replay(f, p, CheckerConfig::plain());
      std::vector<ResolveStep> options;
      for (std::size_t i = 0; i < cur.lines.size(); ++i)
        for (std::size_t j = 0; j < cur.lines.size(); ++j)
          for (std::uint32_t v : {1U, 3U, 5U})
            if (cur.lines[i].clause.contains(Lit(Var{v}, true)) && cur.lines[j].clause.contains(Lit(Var{v}, false)))
              options.push_back(ResolveStep{i, j, Var{v}});
      if (options.empty()) break;
      Proof trial = p;
      trial.steps.push_back(options[rng() % options.size()]);
      const auto d = replay(f, trial, CheckerConfig::plain());
      if (!d.report.valid) continue;
      p = trial;
      ++accepted;
      EXPECT_TRUE(check_line_invariant(f, *d.store, d.lines).holds);
    }
    if (p.steps.size() > m.size()) {
      const auto d = replay(f, p, CheckerConfig::plain());
      if (d.report.refutation) EXPECT_FALSE(eval_qbf(f));
    }
  }
  EXPECT_GT(accepted, 50U);
}

TEST(Property, BlockedExactlyWhenCharacterised) {
  // exists a b, forall u1, exists p, forall u2, exists c
  const Pcnf f(6, {{Quantifier::kExists, {Var{1}, Var{2}}},
                   {Quantifier::kForall, {Var{3}}},
                   {Quantifier::kExists, {Var{4}}},
                   {Quantifier::kForall, {Var{5}}},
                   {Quantifier::kExists, {Var{6}}}},
              {});
  NodeStore s;
  const std::vector<NodeId> early = {kTrivialRoot, 0, 1, s.query(Var{1}, 0, 1), s.query(Var{2}, 1, 0)};
  std::vector<NodeId> late = early;
  late.push_back(s.query(Var{4}, 0, 1));
  std::size_t blocked = 0, total = 0;
  for (std::uint32_t pv : {1U, 4U, 6U}) {
    for (auto l1 : early) for (auto r1 : early) for (auto l2 : late) for (auto r2 : late) {
      if (pv == 4 && (l2 == late.back() || r2 == late.back())) continue;
      const Var pivot{pv};
      const ProofLine left{Clause{Lit(pivot, true)}, {MergeMap{Var{3}, l1}, MergeMap{Var{5}, l2}}};
      const ProofLine right{Clause{Lit(pivot, false)}, {MergeMap{Var{3}, r1}, MergeMap{Var{5}, r2}}};
      auto conflict = [&](NodeId a, NodeId b) { return a != kTrivialRoot && b != kTrivialRoot && a != b; };
      std::optional<Var> expect;
      if (3 < pv && conflict(l1, r1)) expect = Var{3};
      else if (5 < pv && conflict(l2, r2)) expect = Var{5};
      ++total;
      try {
        const auto out = resolve_lines(f, s, left, right, pivot);
        EXPECT_FALSE(expect.has_value());
        for (std::size_t k = 0; k < 2; ++k) {
          const auto lm = left.maps[k], rm = right.maps[k];
          if (lm.is_trivial()) EXPECT_EQ(out.maps[k], rm);
          else if (rm.is_trivial() || lm.root == rm.root) EXPECT_EQ(out.maps[k], lm);
          else EXPECT_EQ(out.maps[k].root, s.query(pivot, lm.root, rm.root));
        }
      } catch (const BlockedResolution& e) {
        ++blocked;
        ASSERT_TRUE(expect.has_value());
        EXPECT_EQ(e.universal(), *expect);
      }
    }
  }
  EXPECT_GT(blocked, 0U);
  EXPECT_LT(blocked, total);
}

TEST(Property, CircuitMatchesStrategy) {
  for (auto bp : {build_example(), build_mparity(2), build_eq2(2), build_kbkf_lq_weak(3)}) {
    const auto d = replay(bp.formula, bp.proof, bp.config);
    const auto st = extract_strategy(d);
    const Circuit c(export_strategy_circuit(bp.formula, st));
    std::size_t nontrivial = 0;
    for (const auto& m : st.maps) nontrivial += m.is_trivial() ? 0 : 1;
    EXPECT_EQ(c.outputs().size(), nontrivial);
    for_each_assignment(bp.formula.num_vars(), bp.formula.existentials(), [&](const Assignment& a) {
      for (const auto& m : st.maps) {
        if (!m.is_trivial()) EXPECT_EQ(c.eval(m.owner.id, a), evaluate(*d.store, m, a));
      }
    });
  }
}

TEST(Property, ExampleCircuitText) {
  const auto bp = build_example();
  const auto text = export_strategy_circuit(bp.formula, bp.proof);
  EXPECT_EQ(text,
            "gate s_2_0 = const 0\n"
            "gate s_2_1 = const 1\n"
            "gate s_2_2 = mux(x1, s_2_0, s_2_1)\n"
            "output u2 = s_2_2\n");
  const Circuit c(text);
  EXPECT_EQ(c.gate_count(), 3U);
}

TEST(Property, ConstantMapCircuitIsOneGate) {
  const auto f = example_formula();
  auto store = std::make_shared<NodeStore>();
  const Strategy st{store, {constant_map(*store, Var{2}, true)}};
  EXPECT_EQ(export_strategy_circuit(f, st), "gate s_2_0 = const 1\noutput u2 = s_2_0\n");
}
