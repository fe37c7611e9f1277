#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mres/calculus.hpp"
#include "mres/game.hpp"

namespace mres {

enum class InvariantMode { kOff, kExhaustive };

inline constexpr std::size_t kDefaultInvariantBudget = 20;

/// Which rules the checker admits and which extra properties it enforces.
struct CheckerConfig {
  bool allow_weaken_exist = false;
  bool allow_weaken_strategy = false;
  bool require_regular = false;
  bool forbid_tautologies = false;
  InvariantMode semantic_invariant = InvariantMode::kOff;
  std::size_t invariant_budget = kDefaultInvariantBudget;

  static CheckerConfig plain() { return {}; }
  static CheckerConfig with_exist_weakening() { return {.allow_weaken_exist = true}; }
  static CheckerConfig with_strategy_weakening() { return {.allow_weaken_strategy = true}; }
  static CheckerConfig with_both_weakenings() {
    return {.allow_weaken_exist = true, .allow_weaken_strategy = true};
  }
  /// Parses `plain`, `we`, `wf` or `wef`.
  static CheckerConfig from_mode(const std::string& mode);
};

struct RuleCounts {
  std::size_t axiom = 0;
  std::size_t resolve = 0;
  std::size_t weaken_exist = 0;
  std::size_t weaken_strategy = 0;
};

struct CheckReport {
  bool valid = false;
  std::optional<std::size_t> failed_step;  // 1-based step id
  std::string message;
  std::size_t steps = 0;  // lines successfully reconstructed
  RuleCounts counts;
  std::size_t max_map_nodes = 0;
  bool refutation = false;  // valid and final clause empty
  bool regular = true;      // no pivot repeats along any path
  std::optional<std::size_t> first_irregular_step;
  bool tautology_free = true;
  std::optional<bool> invariant_holds;  // set when the invariant was checked
  std::optional<std::size_t> invariant_failed_line;  // 1-based
};

/// Lines reconstructed from a proof, plus the node table they share.
struct Derivation {
  std::shared_ptr<NodeStore> store;
  std::vector<ProofLine> lines;
  CheckReport report;
};

/// Called after each line is reconstructed; may modify the line.  Used by
/// mutation tests to corrupt a proof at the line level.
using LineHook = std::function<void(std::size_t step, ProofLine& line)>;

/// Replays `proof` left to right, stopping at the first failing step.
Derivation replay(const Pcnf& f, const Proof& proof, const CheckerConfig& cfg,
                  const LineHook& hook = {});

CheckReport check_proof(const Pcnf& f, const Proof& proof, const CheckerConfig& cfg);

struct InvariantReport {
  bool holds = true;
  std::optional<std::size_t> failed_line;  // 0-based index into the lines
  std::optional<Assignment> counterexample;
};

/// For every line (C, {M^u}) and every existential assignment falsifying C,
/// the universal answers of the non-trivial maps together with every
/// completion of the trivial ones falsify some matrix clause.
InvariantReport check_line_invariant(const Pcnf& f, const NodeStore& store,
                                     std::span<const ProofLine> lines,
                                     std::size_t max_exist = kDefaultInvariantBudget);

/// Replays `proof` with every rule enabled and checks the invariant on the
/// reconstructed lines.  Returns false if replay fails.
bool check_line_invariant(const Pcnf& f, const Proof& proof,
                          std::size_t max_exist = kDefaultInvariantBudget);

/// The final line's maps of a valid refutation.  Throws if the derivation
/// is invalid or its final clause is not empty.
Strategy extract_strategy(const Derivation& d);
Strategy extract_strategy(const Pcnf& f, const Proof& proof);

std::string rule_name(const RuleApp& step);

}  // namespace mres
