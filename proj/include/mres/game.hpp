#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "mres/merge_map.hpp"
#include "mres/qbf.hpp"

namespace mres {

inline constexpr std::size_t kDefaultGameVarBudget = 24;

/// Raised when an exhaustive oracle would exceed its variable budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Truth value of `f` by evaluating the two-player game tree in prefix
/// order.  Refuses formulas with more than `max_vars` quantified variables.
bool eval_qbf(const Pcnf& f, std::size_t max_vars = kDefaultGameVarBudget);

struct StrategyVerdict {
  bool winning = false;
  // A total assignment on which the strategy loses, when not winning.
  std::optional<Assignment> counterexample;
};

/// Checks that `s` wins for the universal player: for every total
/// existential assignment, the universal answers given by the programs
/// together with every completion of trivially-mapped universals falsify
/// some clause.  Refuses more than `max_exist` existential variables.
StrategyVerdict check_universal_strategy(const Pcnf& f, const Strategy& s,
                                         std::size_t max_exist = kDefaultGameVarBudget);

/// Searches for an assignment to `free_universals` that, together with
/// `partial` (which must assign every other matrix variable), satisfies all
/// clauses of `f`.  Returns the satisfying completion if one exists.
std::optional<Assignment> find_satisfying_completion(const Pcnf& f, const Assignment& partial,
                                                     std::span<const Var> free_universals);

}  // namespace mres
