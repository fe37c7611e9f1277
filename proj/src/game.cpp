#include "mres/game.hpp"

#include <cstdint>

namespace mres {

namespace {

class GameEvaluator {
 public:
  explicit GameEvaluator(const Pcnf& f) : f_(f), occurs_(f.num_vars() + 1) {
    for (const auto& block : f.prefix()) {
      for (Var v : block.variables) order_.push_back(v);
    }
    const auto& m = f.matrix();
    sat_.assign(m.size(), 0);
    free_.resize(m.size());
    for (std::size_t c = 0; c < m.size(); ++c) {
      free_[c] = static_cast<std::uint32_t>(m[c].size());
      if (free_[c] == 0) ++falsified_;
      for (Lit l : m[c].literals()) occurs_[l.var().id].push_back({c, l.positive()});
    }
    unsatisfied_ = m.size();
  }

  bool run(std::size_t pos = 0) {
    if (falsified_ > 0) return false;
    if (unsatisfied_ == 0) return true;
    Var v = order_[pos];
    const bool universal = f_.is_universal(v);
    for (bool value : {false, true}) {
      assign(v, value);
      bool result = run(pos + 1);
      unassign(v, value);
      if (universal && !result) return false;
      if (!universal && result) return true;
    }
    return universal;
  }

 private:
  struct Occ {
    std::size_t clause;
    bool positive;
  };

  void assign(Var v, bool value) {
    for (const auto& o : occurs_[v.id]) {
      --free_[o.clause];
      if (o.positive == value) {
        if (sat_[o.clause]++ == 0) --unsatisfied_;
      } else if (sat_[o.clause] == 0 && free_[o.clause] == 0) {
        ++falsified_;
      }
    }
  }

  void unassign(Var v, bool value) {
    for (const auto& o : occurs_[v.id]) {
      if (o.positive == value) {
        if (--sat_[o.clause] == 0) ++unsatisfied_;
      } else if (sat_[o.clause] == 0 && free_[o.clause] == 0) {
        --falsified_;
      }
      ++free_[o.clause];
    }
  }

  const Pcnf& f_;
  std::vector<Var> order_;
  std::vector<std::vector<Occ>> occurs_;
  std::vector<std::uint32_t> sat_;
  std::vector<std::uint32_t> free_;
  std::size_t unsatisfied_ = 0;
  std::size_t falsified_ = 0;
};

}  // namespace

bool eval_qbf(const Pcnf& f, std::size_t max_vars) {
  const std::size_t total = f.existentials().size() + f.universals().size();
  if (total > max_vars) {
    throw BudgetError("formula has " + std::to_string(total) + " variables, budget is " +
                      std::to_string(max_vars));
  }
  GameEvaluator game(f);
  return game.run();
}

std::optional<Assignment> find_satisfying_completion(const Pcnf& f, const Assignment& partial,
                                                     std::span<const Var> free_universals) {
  for (const auto& c : f.matrix()) {
    bool falsified = true;
    for (Lit l : c.literals()) {
      auto val = partial.value(l);
      if (!val || *val) {
        falsified = false;
        break;
      }
    }
    if (falsified) return std::nullopt;
  }

  // Residual clauses: what is left over the free universals once the
  // assigned variables are accounted for.
  std::vector<std::vector<Lit>> residual;
  for (const auto& c : f.matrix()) {
    bool satisfied = false;
    std::vector<Lit> rest;
    for (Lit l : c.literals()) {
      auto val = partial.value(l);
      if (!val) {
        rest.push_back(l);
      } else if (*val) {
        satisfied = true;
        break;
      }
    }
    if (satisfied) continue;
    if (rest.empty()) return std::nullopt;
    residual.push_back(std::move(rest));
  }

  Assignment probe = partial;
  if (residual.empty()) {
    for (Var u : free_universals) probe.set(u, false);
    return probe;
  }
  if (free_universals.size() > 30) {
    throw BudgetError("too many unconstrained universals to enumerate");
  }
  const std::uint64_t limit = std::uint64_t{1} << free_universals.size();
  for (std::uint64_t bits = 0; bits < limit; ++bits) {
    for (std::size_t k = 0; k < free_universals.size(); ++k) {
      probe.set(free_universals[k], (bits >> k) & 1U);
    }
    bool all = true;
    for (const auto& rest : residual) {
      bool sat = false;
      for (Lit l : rest) {
        if (probe.value(l).value_or(false)) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return probe;
  }
  return std::nullopt;
}

StrategyVerdict check_universal_strategy(const Pcnf& f, const Strategy& s,
                                         std::size_t max_exist) {
  const auto& exist = f.existentials();
  const auto& univ = f.universals();
  if (s.maps.size() != univ.size()) {
    throw Error("strategy has " + std::to_string(s.maps.size()) + " maps for " +
                std::to_string(univ.size()) + " universals");
  }
  if (exist.size() > max_exist) {
    throw BudgetError("formula has " + std::to_string(exist.size()) +
                      " existential variables, budget is " + std::to_string(max_exist));
  }
  std::vector<Var> free_univ;
  for (std::size_t k = 0; k < univ.size(); ++k) {
    if (s.maps[k].owner != univ[k]) {
      throw Error("strategy map " + std::to_string(k) + " belongs to variable " +
                  std::to_string(s.maps[k].owner.id) + ", expected " +
                  std::to_string(univ[k].id));
    }
    if (s.maps[k].is_trivial()) {
      free_univ.push_back(univ[k]);
    } else {
      validate_map(*s.store, f, s.maps[k]);
    }
  }

  Assignment alpha(f.num_vars());
  const std::uint64_t limit = std::uint64_t{1} << exist.size();
  for (std::uint64_t bits = 0; bits < limit; ++bits) {
    for (std::size_t k = 0; k < exist.size(); ++k) alpha.set(exist[k], (bits >> k) & 1U);
    for (std::size_t k = 0; k < univ.size(); ++k) {
      if (!s.maps[k].is_trivial()) alpha.set(univ[k], evaluate(*s.store, s.maps[k], alpha));
    }
    if (auto win = find_satisfying_completion(f, alpha, free_univ)) {
      return StrategyVerdict{false, std::move(win)};
    }
  }
  return StrategyVerdict{true, std::nullopt};
}

}  // namespace mres
