#include "mres/checker.hpp"

#include <unordered_map>

namespace mres {

namespace {

// Fixed-width bitset over variable ids.
class VarSet {
 public:
  explicit VarSet(std::size_t num_vars) : words_((num_vars + 64) / 64, 0) {}
  bool contains(Var v) const { return (words_[v.id / 64] >> (v.id % 64)) & 1U; }
  void insert(Var v) { words_[v.id / 64] |= std::uint64_t{1} << (v.id % 64); }
  void unite(const VarSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  }

 private:
  std::vector<std::uint64_t> words_;
};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

CheckerConfig CheckerConfig::from_mode(const std::string& mode) {
  if (mode == "plain") return plain();
  if (mode == "we") return with_exist_weakening();
  if (mode == "wf") return with_strategy_weakening();
  if (mode == "wef") return with_both_weakenings();
  throw Error("unknown mode '" + mode + "' (want plain, we, wf or wef)");
}

std::string rule_name(const RuleApp& step) {
  return std::visit(Overloaded{[](const AxiomStep&) { return std::string("axiom"); },
                               [](const ResolveStep&) { return std::string("resolve"); },
                               [](const WeakenExistStep&) { return std::string("weaken-exist"); },
                               [](const WeakenStrategyStep&) {
                                 return std::string("weaken-strategy");
                               }},
                    step);
}

Derivation replay(const Pcnf& f, const Proof& proof, const CheckerConfig& cfg,
                  const LineHook& hook) {
  Derivation d;
  d.store = std::make_shared<NodeStore>();
  auto& store = *d.store;
  auto& report = d.report;
  std::vector<VarSet> pivots;
  std::unordered_map<NodeId, std::size_t> size_cache;

  auto premise = [&](std::size_t id) -> const ProofLine& {
    if (id >= d.lines.size()) {
      throw RuleError("reference to line " + std::to_string(id + 1) +
                      " which does not precede this step");
    }
    return d.lines[id];
  };

  for (std::size_t k = 0; k < proof.steps.size(); ++k) {
    const auto& step = proof.steps[k];
    ProofLine line;
    VarSet pivot_set(f.num_vars());
    try {
      std::visit(
          Overloaded{
              [&](const AxiomStep& s) {
                line = axiom_line(f, store, s.clause);
                ++report.counts.axiom;
              },
              [&](const ResolveStep& s) {
                const auto& left = premise(s.left);
                const auto& right = premise(s.right);
                if (f.is_bound(s.pivot) &&
                    (pivots[s.left].contains(s.pivot) || pivots[s.right].contains(s.pivot))) {
                  if (report.regular) report.first_irregular_step = k + 1;
                  report.regular = false;
                  if (cfg.require_regular) {
                    throw RuleError("pivot " + std::to_string(s.pivot.id) +
                                    " already resolved on a path to this step");
                  }
                }
                line = resolve_lines(f, store, left, right, s.pivot);
                pivot_set.unite(pivots[s.left]);
                pivot_set.unite(pivots[s.right]);
                pivot_set.insert(s.pivot);
                ++report.counts.resolve;
              },
              [&](const WeakenExistStep& s) {
                if (!cfg.allow_weaken_exist) {
                  throw RuleError("existential weakening is not enabled");
                }
                line = weaken_exist(f, premise(s.source), s.lit);
                pivot_set.unite(pivots[s.source]);
                ++report.counts.weaken_exist;
              },
              [&](const WeakenStrategyStep& s) {
                if (!cfg.allow_weaken_strategy) {
                  throw RuleError("strategy weakening is not enabled");
                }
                line = weaken_strategy(f, store, premise(s.source), s.universal, s.value);
                pivot_set.unite(pivots[s.source]);
                ++report.counts.weaken_strategy;
              }},
          step);
      if (line.clause.is_tautology()) {
        report.tautology_free = false;
        if (cfg.forbid_tautologies) throw RuleError("tautological clause " + line.clause.to_string());
      }
    } catch (const Error& e) {
      report.failed_step = k + 1;
      report.message = "step " + std::to_string(k + 1) + " (" + rule_name(step) + "): " + e.what();
      report.steps = d.lines.size();
      return d;
    }

    if (hook) hook(k, line);
    for (const auto& m : line.maps) {
      if (m.is_trivial()) continue;
      auto [it, fresh] = size_cache.try_emplace(m.root, 0);
      if (fresh) it->second = store.reachable_count(m.root);
      report.max_map_nodes = std::max(report.max_map_nodes, it->second);
    }
    d.lines.push_back(std::move(line));
    pivots.push_back(std::move(pivot_set));
  }

  report.steps = d.lines.size();
  report.valid = true;
  report.refutation = !d.lines.empty() && d.lines.back().clause.empty();
  report.message = report.refutation ? "valid refutation"
                                     : "valid derivation, not a refutation";

  if (cfg.semantic_invariant == InvariantMode::kExhaustive) {
    auto inv = check_line_invariant(f, store, d.lines, cfg.invariant_budget);
    report.invariant_holds = inv.holds;
    if (!inv.holds) {
      report.valid = false;
      report.refutation = false;
      report.invariant_failed_line = *inv.failed_line + 1;
      report.failed_step = *inv.failed_line + 1;
      report.message = "line invariant violated at step " + std::to_string(*inv.failed_line + 1);
    }
  }
  return d;
}

CheckReport check_proof(const Pcnf& f, const Proof& proof, const CheckerConfig& cfg) {
  return replay(f, proof, cfg).report;
}

InvariantReport check_line_invariant(const Pcnf& f, const NodeStore& store,
                                     std::span<const ProofLine> lines, std::size_t max_exist) {
  const auto& exist = f.existentials();
  const auto& univ = f.universals();
  if (exist.size() > max_exist) {
    throw BudgetError("formula has " + std::to_string(exist.size()) +
                      " existential variables, invariant budget is " + std::to_string(max_exist));
  }

  Assignment alpha(f.num_vars());
  std::vector<Var> free_exist;
  std::vector<Var> free_univ;
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const auto& line = lines[idx];
    // A tautological clause is never falsified.
    if (line.clause.is_tautology()) continue;

    for (Var v : exist) alpha.unset(v);
    for (Lit l : line.clause.literals()) alpha.set(l.var(), !l.positive());
    free_exist.clear();
    for (Var v : exist) {
      if (!alpha.is_assigned(v)) free_exist.push_back(v);
    }
    free_univ.clear();
    for (std::size_t k = 0; k < univ.size(); ++k) {
      alpha.unset(univ[k]);
      if (line.maps[k].is_trivial()) free_univ.push_back(univ[k]);
    }

    const std::uint64_t limit = std::uint64_t{1} << free_exist.size();
    for (std::uint64_t bits = 0; bits < limit; ++bits) {
      for (std::size_t k = 0; k < free_exist.size(); ++k) {
        alpha.set(free_exist[k], (bits >> k) & 1U);
      }
      for (std::size_t k = 0; k < univ.size(); ++k) {
        if (!line.maps[k].is_trivial()) alpha.set(univ[k], evaluate(store, line.maps[k], alpha));
      }
      if (auto sat = find_satisfying_completion(f, alpha, free_univ)) {
        return InvariantReport{false, idx, std::move(sat)};
      }
    }
  }
  return {};
}

bool check_line_invariant(const Pcnf& f, const Proof& proof, std::size_t max_exist) {
  auto d = replay(f, proof, CheckerConfig::with_both_weakenings());
  if (!d.report.valid) return false;
  return check_line_invariant(f, *d.store, d.lines, max_exist).holds;
}

Strategy extract_strategy(const Derivation& d) {
  if (!d.report.valid) throw Error("cannot extract a strategy: " + d.report.message);
  if (d.lines.empty() || !d.lines.back().clause.empty()) {
    throw Error("cannot extract a strategy: final clause is not empty");
  }
  return Strategy{d.store, d.lines.back().maps};
}

Strategy extract_strategy(const Pcnf& f, const Proof& proof) {
  return extract_strategy(replay(f, proof, CheckerConfig::with_both_weakenings()));
}

}  // namespace mres
