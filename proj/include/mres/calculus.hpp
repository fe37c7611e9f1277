#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mres/merge_map.hpp"
#include "mres/qbf.hpp"

namespace mres {

/// One line of an M-Res derivation: a clause over existential variables and
/// one merge-map per universal variable (indexed by universal ordinal).
struct ProofLine {
  Clause clause;
  std::vector<MergeMap> maps;

  bool operator==(const ProofLine&) const = default;
};

/// Raised when an inference rule is applied outside its side conditions.
class RuleError : public Error {
 public:
  using Error::Error;
};

/// A resolution step whose merge-maps for `universal` are both non-trivial
/// and non-isomorphic although `universal` precedes the pivot.
class BlockedResolution : public RuleError {
 public:
  explicit BlockedResolution(Var universal)
      : RuleError("BLOCKED(" + std::to_string(universal.id) + ")"), universal_(universal) {}
  Var universal() const { return universal_; }

 private:
  Var universal_;
};

// Rule applications.  Line and clause references are 0-based here; the
// proof file format uses 1-based ids.
struct AxiomStep {
  std::size_t clause = 0;
  bool operator==(const AxiomStep&) const = default;
};
struct ResolveStep {
  std::size_t left = 0;   // holds the positive pivot literal
  std::size_t right = 0;  // holds the negative pivot literal
  Var pivot{};
  bool operator==(const ResolveStep&) const = default;
};
struct WeakenExistStep {
  std::size_t source = 0;
  Lit lit{};
  bool operator==(const WeakenExistStep&) const = default;
};
struct WeakenStrategyStep {
  std::size_t source = 0;
  Var universal{};
  bool value = false;
  bool operator==(const WeakenStrategyStep&) const = default;
};

using RuleApp = std::variant<AxiomStep, ResolveStep, WeakenExistStep, WeakenStrategyStep>;

/// A proof stores rule applications only; lines are rebuilt by replay.
struct Proof {
  std::uint64_t formula_hash = 0;
  std::vector<RuleApp> steps;
  std::vector<std::string> comments;
};

/// Line for matrix clause `clause_index`: its existential part, constant
/// maps falsifying each universal literal, trivial maps elsewhere.
ProofLine axiom_line(const Pcnf& f, NodeStore& store, std::size_t clause_index);

/// Resolves `pos` (containing +pivot) with `neg` (containing -pivot).
/// Throws BlockedResolution naming the earliest offending universal.
ProofLine resolve_lines(const Pcnf& f, NodeStore& store, const ProofLine& pos,
                        const ProofLine& neg, Var pivot);

ProofLine weaken_exist(const Pcnf& f, const ProofLine& line, Lit lit);

ProofLine weaken_strategy(const Pcnf& f, NodeStore& store, const ProofLine& line, Var u,
                          bool value);

std::string describe_line(const Pcnf& f, const NodeStore& store, const ProofLine& line);

}  // namespace mres
