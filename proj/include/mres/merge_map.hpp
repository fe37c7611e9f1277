#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mres/qbf.hpp"

namespace mres {

using NodeId = std::uint32_t;

/// A branching-program node: a 0/1 leaf, or a query on an existential
/// variable that continues at `if_false` / `if_true`.
struct Node {
  Var var{};  // id 0 marks a leaf
  bool value = false;
  NodeId if_false = 0;
  NodeId if_true = 0;

  bool is_leaf() const { return var.id == 0; }
  bool operator==(const Node&) const = default;
};

/// Hash-consed node table shared by every merge-map of one proof.
///
/// Structurally identical nodes always receive the same id, so two programs
/// are structurally identical exactly when their roots coincide.  No BDD
/// reduction is performed: a query whose children coincide is kept.
///
/// Not thread-safe; build on one thread, then share for reads.
class NodeStore {
 public:
  NodeStore();

  NodeId leaf(bool value) const { return value ? 1 : 0; }
  NodeId query(Var var, NodeId if_false, NodeId if_true);

  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }

  /// Number of nodes reachable from `root`, leaves included.
  std::size_t reachable_count(NodeId root) const;
  /// Reachable nodes in post-order (children before parents, root last).
  std::vector<NodeId> post_order(NodeId root) const;
  /// Variables queried anywhere below `root`.
  std::vector<Var> queried_vars(NodeId root) const;

 private:
  struct Key {
    std::uint32_t var;
    NodeId lo;
    NodeId hi;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = k.var;
      h = h * 0x9e3779b97f4a7c15ULL + k.lo;
      h = h * 0x9e3779b97f4a7c15ULL + k.hi;
      return h ^ (h >> 29);
    }
  };

  std::vector<Node> nodes_;
  std::unordered_map<Key, NodeId, KeyHash> unique_;
};

inline constexpr NodeId kTrivialRoot = std::numeric_limits<NodeId>::max();

/// The strategy object of one universal variable: trivial (unconstrained)
/// or a branching program rooted in a NodeStore.
struct MergeMap {
  Var owner{};
  NodeId root = kTrivialRoot;

  bool is_trivial() const { return root == kTrivialRoot; }
  bool operator==(const MergeMap&) const = default;
};

/// Raised when a merge-map operation is applied outside its contract.
class MergeMapError : public Error {
 public:
  using Error::Error;
};

MergeMap trivial_map(const Pcnf& f, Var u);
MergeMap constant_map(NodeStore& store, Var u, bool value);

/// Follows the program on `alpha`.  Throws on a trivial map or when a
/// queried variable is unassigned.
bool evaluate(const NodeStore& store, const MergeMap& m, const Assignment& alpha);

/// Structural identity of two programs of the same owner.  Trivial maps are
/// never isomorphic to anything, including each other.
bool is_isomorphic(const MergeMap& a, const MergeMap& b);

/// Program that runs `if_false` when pivot=0 and `if_true` when pivot=1.
/// Shared nodes are represented once.
MergeMap merge(NodeStore& store, const Pcnf& f, Var pivot,
               const MergeMap& if_false, const MergeMap& if_true);

/// Smallest ordered program over `vars` (= x_i..x_n) computing the parity
/// of `vars` (odd_parity = true) or its complement.  `i` ranges over
/// 1..n+1; for i = n+1, `vars` is empty and the map is a single leaf.
MergeMap build_parity_map(NodeStore& store, std::size_t i, std::size_t n,
                          bool odd_parity, std::span<const Var> vars, Var owner);

/// Throws unless every query of `m` is on an existential quantified before
/// the owner.
void validate_map(const NodeStore& store, const Pcnf& f, const MergeMap& m);

std::size_t node_count(const NodeStore& store, const MergeMap& m);

/// A universal strategy: one map per universal of the formula, in prefix
/// order, plus the node table they live in.
struct Strategy {
  std::shared_ptr<const NodeStore> store;
  std::vector<MergeMap> maps;
};

/// Text dump: `map <u> root <id>` then `node <id> leaf <0|1>` or
/// `node <id> q <var> <ifFalse> <ifTrue>`, with ids local to the map and
/// children listed before parents.  Trivial maps are written `map <u> trivial`.
std::string dump_map(const NodeStore& store, const MergeMap& m);
std::string dump_strategy(const Strategy& s);

/// Reads a dump back into `store`.  Maps are returned in file order.
std::vector<MergeMap> parse_maps(std::istream& in, NodeStore& store);

}  // namespace mres
