#pragma once

// Independent reference implementations used as oracles by the unit,
// property and acceptance tests.  Nothing here reuses the evaluation or
// hashing paths of the library under test.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "mres/checker.hpp"
#include "mres/refutations.hpp"

namespace mres::testing {

// Plain recursive game evaluation in prefix order, checking the whole
// matrix at the leaves.
inline bool naive_eval(const Pcnf& f) {
  std::vector<Var> order;
  for (const auto& b : f.prefix()) order.insert(order.end(), b.variables.begin(), b.variables.end());
  Assignment a(f.num_vars());
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == order.size()) {
      for (const auto& c : f.matrix()) {
        bool sat = false;
        for (Lit l : c.literals()) sat = sat || *a.value(l);
        if (!sat) return false;
      }
      return true;
    }
    const bool universal = f.is_universal(order[k]);
    for (bool v : {false, true}) {
      a.set(order[k], v);
      const bool r = self(self, k + 1);
      if (universal && !r) return false;
      if (!universal && r) return true;
    }
    return universal;
  };
  return rec(rec, 0);
}

// Tree-shaped program, compared structurally without hash-consing.
struct Tree {
  std::uint32_t var = 0;  // 0 = leaf
  bool value = false;
  std::shared_ptr<Tree> lo, hi;
};
using TreePtr = std::shared_ptr<Tree>;

inline TreePtr leaf(bool b) { return std::make_shared<Tree>(Tree{0, b, nullptr, nullptr}); }
inline TreePtr query(std::uint32_t v, TreePtr lo, TreePtr hi) {
  return std::make_shared<Tree>(Tree{v, false, std::move(lo), std::move(hi)});
}

inline bool tree_equal(const TreePtr& a, const TreePtr& b) {
  if (a->var != b->var) return false;
  if (a->var == 0) return a->value == b->value;
  return tree_equal(a->lo, b->lo) && tree_equal(a->hi, b->hi);
}

inline bool tree_eval(const TreePtr& t, const Assignment& a) {
  const Tree* cur = t.get();
  while (cur->var != 0) cur = *a.get(Var{cur->var}) ? cur->hi.get() : cur->lo.get();
  return cur->value;
}

inline TreePtr random_tree(std::mt19937_64& rng, int depth, const std::vector<std::uint32_t>& vars) {
  std::uniform_int_distribution<int> coin(0, 3);
  if (depth == 0 || coin(rng) == 0) return leaf(coin(rng) % 2 == 1);
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  const auto v = vars[pick(rng)];
  auto lo = random_tree(rng, depth - 1, vars);
  auto hi = random_tree(rng, depth - 1, vars);
  return query(v, lo, hi);
}

// Inserts children in the requested order; hash-consing must not care.
inline NodeId to_store(NodeStore& s, const TreePtr& t, bool hi_first = false) {
  if (t->var == 0) return s.leaf(t->value);
  NodeId lo, hi;
  if (hi_first) {
    hi = to_store(s, t->hi, hi_first);
    lo = to_store(s, t->lo, hi_first);
  } else {
    lo = to_store(s, t->lo, hi_first);
    hi = to_store(s, t->hi, hi_first);
  }
  return s.query(Var{t->var}, lo, hi);
}

// Simulator for exported strategy circuits.
class Circuit {
 public:
  explicit Circuit(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string kind, name, eq;
      ls >> kind >> name >> eq;
      if (kind == "output") {
        std::string target;
        ls >> target;
        outputs_[static_cast<std::uint32_t>(std::stoul(name.substr(1)))] = target;
        continue;
      }
      if (kind != "gate") throw std::runtime_error("bad circuit line: " + line);
      std::string op;
      ls >> op;
      if (op == "const") {
        int b = 0;
        ls >> b;
        gates_[name] = Gate{true, b == 1, 0, {}, {}};
        continue;
      }
      // mux(x<v>, a, b)
      const auto open = line.find("mux(x");
      const auto rest = line.substr(open + 5, line.find(')') - open - 5);
      std::string v, a, b;
      std::istringstream rs(rest);
      std::getline(rs, v, ',');
      std::getline(rs >> std::ws, a, ',');
      std::getline(rs >> std::ws, b);
      if (!gates_.count(a) || !gates_.count(b)) throw std::runtime_error("gate used before definition");
      gates_[name] = Gate{false, false, static_cast<std::uint32_t>(std::stoul(v)), a, b};
    }
  }

  const std::map<std::uint32_t, std::string>& outputs() const { return outputs_; }
  std::size_t gate_count() const { return gates_.size(); }

  bool eval(std::uint32_t u, const Assignment& a) const { return eval_gate(outputs_.at(u), a); }

 private:
  struct Gate {
    bool constant;
    bool value;
    std::uint32_t var;
    std::string if_false, if_true;
  };
  bool eval_gate(const std::string& g, const Assignment& a) const {
    const Gate& gate = gates_.at(g);
    if (gate.constant) return gate.value;
    return eval_gate(*a.get(Var{gate.var}) ? gate.if_true : gate.if_false, a);
  }

  std::map<std::string, Gate> gates_;
  std::map<std::uint32_t, std::string> outputs_;
};

// Mutations of a built proof: flip one axiom's constant map, or swap the
// premises of one resolution step.
struct MutationStats {
  std::size_t total = 0;
  std::size_t caught = 0;
  std::size_t by_checker = 0;
  std::size_t by_invariant = 0;
  double rate() const { return total == 0 ? 1.0 : static_cast<double>(caught) / total; }
};

inline MutationStats run_mutations(const BuiltProof& bp, std::size_t count, std::uint64_t seed) {
  // Candidate sites: (axiom step, universal ordinal) with a constant map,
  // and every resolution step.
  auto clean = replay(bp.formula, bp.proof, bp.config);
  std::vector<std::pair<std::size_t, std::size_t>> flips;
  std::vector<std::size_t> swaps;
  for (std::size_t k = 0; k < bp.proof.steps.size(); ++k) {
    if (std::holds_alternative<AxiomStep>(bp.proof.steps[k])) {
      const auto& maps = clean.lines[k].maps;
      for (std::size_t m = 0; m < maps.size(); ++m) {
        if (!maps[m].is_trivial()) flips.emplace_back(k, m);
      }
    } else if (std::holds_alternative<ResolveStep>(bp.proof.steps[k])) {
      swaps.push_back(k);
    }
  }

  std::mt19937_64 rng(seed);
  MutationStats stats;
  for (std::size_t t = 0; t < count; ++t) {
    const bool flip = !flips.empty() && (swaps.empty() || rng() % 2 == 0);
    Proof proof = bp.proof;
    LineHook hook;
    if (flip) {
      const auto [step, ordinal] = flips[rng() % flips.size()];
      hook = [step = step, ordinal = ordinal](std::size_t k, ProofLine& line) {
        // Constant maps are the leaf ids 0 and 1.
        if (k == step) line.maps[ordinal].root ^= 1U;
      };
    } else {
      auto& r = std::get<ResolveStep>(proof.steps[swaps[rng() % swaps.size()]]);
      std::swap(r.left, r.right);
    }
    ++stats.total;
    auto d = replay(bp.formula, proof, bp.config, hook);
    if (!d.report.valid) {
      ++stats.caught;
      ++stats.by_checker;
      continue;
    }
    if (!check_line_invariant(bp.formula, *d.store, d.lines).holds) {
      ++stats.caught;
      ++stats.by_invariant;
    }
  }
  return stats;
}

template <class Step>
std::optional<std::size_t> first_step_of(const Proof& p) {
  for (std::size_t k = 0; k < p.steps.size(); ++k) {
    if (std::holds_alternative<Step>(p.steps[k])) return k;
  }
  return std::nullopt;
}

// Every total assignment to `vars`, by increasing bitmask.
template <class F>
void for_each_assignment(std::uint32_t num_vars, const std::vector<Var>& vars, F&& fn) {
  Assignment a(num_vars);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << vars.size()); ++bits) {
    for (std::size_t k = 0; k < vars.size(); ++k) a.set(vars[k], (bits >> k) & 1U);
    fn(a);
  }
}

}  // namespace mres::testing
