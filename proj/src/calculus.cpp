#include "mres/calculus.hpp"

#include <sstream>

namespace mres {

ProofLine axiom_line(const Pcnf& f, NodeStore& store, std::size_t clause_index) {
  if (clause_index >= f.matrix().size()) {
    throw RuleError("axiom index " + std::to_string(clause_index + 1) + " outside 1.." +
                    std::to_string(f.matrix().size()));
  }
  const auto& axiom = f.matrix()[clause_index];
  const auto& univ = f.universals();
  ProofLine line;
  line.maps.reserve(univ.size());
  for (Var u : univ) line.maps.push_back(MergeMap{u, kTrivialRoot});

  std::vector<Lit> exist;
  for (Lit l : axiom.literals()) {
    if (f.is_existential(l.var())) {
      exist.push_back(l);
      continue;
    }
    auto& m = line.maps[f.universal_ordinal(l.var())];
    const bool falsifying = !l.positive();
    if (!m.is_trivial() && store.node(m.root).value != falsifying) {
      throw RuleError("axiom " + std::to_string(clause_index + 1) + " contains both " +
                      std::to_string(l.var().id) + " and its negation");
    }
    m = constant_map(store, l.var(), falsifying);
  }
  line.clause = Clause(std::move(exist));
  return line;
}

ProofLine resolve_lines(const Pcnf& f, NodeStore& store, const ProofLine& pos,
                        const ProofLine& neg, Var pivot) {
  if (!f.is_existential(pivot)) {
    throw RuleError("pivot " + std::to_string(pivot.id) + " is not existential");
  }
  const Lit p(pivot, true);
  if (!pos.clause.contains(p)) {
    throw RuleError("left premise does not contain +" + std::to_string(pivot.id));
  }
  if (!neg.clause.contains(~p)) {
    throw RuleError("right premise does not contain -" + std::to_string(pivot.id));
  }

  const auto& univ = f.universals();
  if (pos.maps.size() != univ.size() || neg.maps.size() != univ.size()) {
    throw RuleError("premise does not carry one map per universal");
  }
  for (std::size_t k = 0; k < univ.size(); ++k) {
    const auto& a = pos.maps[k];
    const auto& b = neg.maps[k];
    if (f.precedes(univ[k], pivot) && !a.is_trivial() && !b.is_trivial() &&
        !is_isomorphic(a, b)) {
      throw BlockedResolution(univ[k]);
    }
  }

  ProofLine out;
  out.maps.reserve(univ.size());
  for (std::size_t k = 0; k < univ.size(); ++k) {
    const auto& a = pos.maps[k];
    const auto& b = neg.maps[k];
    if (a.is_trivial()) {
      out.maps.push_back(b);
    } else if (b.is_trivial() || is_isomorphic(a, b)) {
      out.maps.push_back(a);
    } else {
      out.maps.push_back(merge(store, f, pivot, a, b));
    }
  }

  std::vector<Lit> lits;
  lits.reserve(pos.clause.size() + neg.clause.size());
  for (Lit l : pos.clause.literals()) {
    if (l != p) lits.push_back(l);
  }
  for (Lit l : neg.clause.literals()) {
    if (l != ~p) lits.push_back(l);
  }
  out.clause = Clause(std::move(lits));
  return out;
}

ProofLine weaken_exist(const Pcnf& f, const ProofLine& line, Lit lit) {
  if (!f.is_existential(lit.var())) {
    throw RuleError("weakening literal " + std::to_string(lit.dimacs()) + " is not existential");
  }
  if (line.clause.contains(~lit)) {
    throw RuleError("clause already contains the complement of " + std::to_string(lit.dimacs()));
  }
  ProofLine out = line;
  out.clause.insert(lit);
  return out;
}

ProofLine weaken_strategy(const Pcnf& f, NodeStore& store, const ProofLine& line, Var u,
                          bool value) {
  const auto k = f.universal_ordinal(u);
  if (!line.maps[k].is_trivial()) {
    throw RuleError("map of " + std::to_string(u.id) + " is not trivial");
  }
  ProofLine out = line;
  out.maps[k] = constant_map(store, u, value);
  return out;
}

std::string describe_line(const Pcnf& f, const NodeStore& store, const ProofLine& line) {
  std::ostringstream os;
  os << '(' << line.clause.to_string() << ", {";
  bool first = true;
  for (const auto& m : line.maps) {
    if (m.is_trivial()) continue;
    if (!first) os << ", ";
    first = false;
    os << f.name(m.owner) << '=';
    const Node& n = store.node(m.root);
    if (n.is_leaf()) {
      os << (n.value ? 1 : 0);
    } else {
      os << "bp[" << store.reachable_count(m.root) << ']';
    }
  }
  os << "})";
  return os.str();
}

}  // namespace mres
