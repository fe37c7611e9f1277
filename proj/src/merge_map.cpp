#include "mres/merge_map.hpp"

#include <algorithm>
#include <sstream>

namespace mres {

NodeStore::NodeStore() {
  nodes_.push_back(Node{Var{0}, false, 0, 0});
  nodes_.push_back(Node{Var{0}, true, 1, 1});
}

NodeId NodeStore::query(Var var, NodeId if_false, NodeId if_true) {
  if (var.id == 0) throw MergeMapError("query node needs a variable");
  if (if_false >= nodes_.size() || if_true >= nodes_.size()) {
    throw MergeMapError("query node child out of range");
  }
  Key key{var.id, if_false, if_true};
  auto [it, inserted] = unique_.try_emplace(key, static_cast<NodeId>(nodes_.size()));
  if (inserted) nodes_.push_back(Node{var, false, if_false, if_true});
  return it->second;
}

std::vector<NodeId> NodeStore::post_order(NodeId root) const {
  std::vector<NodeId> order;
  std::vector<char> seen(nodes_.size(), 0);
  // (node, children pushed)
  std::vector<std::pair<NodeId, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      order.push_back(id);
      continue;
    }
    if (seen[id]) continue;
    seen[id] = 1;
    stack.emplace_back(id, true);
    const Node& n = nodes_[id];
    if (!n.is_leaf()) {
      // if_false is visited first.
      if (!seen[n.if_true]) stack.emplace_back(n.if_true, false);
      if (!seen[n.if_false]) stack.emplace_back(n.if_false, false);
    }
  }
  return order;
}

std::size_t NodeStore::reachable_count(NodeId root) const {
  return post_order(root).size();
}

std::vector<Var> NodeStore::queried_vars(NodeId root) const {
  std::vector<Var> vars;
  for (NodeId id : post_order(root)) {
    if (!nodes_[id].is_leaf()) vars.push_back(nodes_[id].var);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

MergeMap trivial_map(const Pcnf& f, Var u) {
  if (!f.is_universal(u)) {
    throw MergeMapError("variable " + std::to_string(u.id) + " is not universal");
  }
  return MergeMap{u, kTrivialRoot};
}

MergeMap constant_map(NodeStore& store, Var u, bool value) {
  return MergeMap{u, store.leaf(value)};
}

bool evaluate(const NodeStore& store, const MergeMap& m, const Assignment& alpha) {
  if (m.is_trivial()) {
    throw MergeMapError("cannot evaluate the trivial map of " + std::to_string(m.owner.id));
  }
  NodeId id = m.root;
  for (;;) {
    const Node& n = store.node(id);
    if (n.is_leaf()) return n.value;
    auto v = alpha.get(n.var);
    if (!v) {
      throw MergeMapError("map of " + std::to_string(m.owner.id) + " queries unassigned variable " +
                          std::to_string(n.var.id));
    }
    id = *v ? n.if_true : n.if_false;
  }
}

bool is_isomorphic(const MergeMap& a, const MergeMap& b) {
  if (a.owner != b.owner) {
    throw MergeMapError("isomorphism check across owners " + std::to_string(a.owner.id) +
                        " and " + std::to_string(b.owner.id));
  }
  if (a.is_trivial() || b.is_trivial()) return false;
  return a.root == b.root;
}

MergeMap merge(NodeStore& store, const Pcnf& f, Var pivot, const MergeMap& if_false,
               const MergeMap& if_true) {
  if (if_false.owner != if_true.owner) {
    throw MergeMapError("merge of maps with different owners");
  }
  if (if_false.is_trivial() || if_true.is_trivial()) {
    throw MergeMapError("merge needs two non-trivial maps");
  }
  if (!f.is_existential(pivot) || !f.precedes(pivot, if_false.owner)) {
    throw MergeMapError("pivot " + std::to_string(pivot.id) +
                        " is not an existential quantified before " +
                        std::to_string(if_false.owner.id));
  }
  return MergeMap{if_false.owner, store.query(pivot, if_false.root, if_true.root)};
}

MergeMap build_parity_map(NodeStore& store, std::size_t i, std::size_t n, bool odd_parity,
                          std::span<const Var> vars, Var owner) {
  if (i < 1 || i > n + 1) {
    throw MergeMapError("parity map index " + std::to_string(i) + " outside 1.." +
                        std::to_string(n + 1));
  }
  if (vars.size() != n + 1 - i) {
    throw MergeMapError("parity map over x_i..x_n needs " + std::to_string(n + 1 - i) +
                        " variables");
  }
  // level[s] computes (parity of the remaining suffix) xor s, negated for
  // the complement; built from the last variable backwards.
  NodeId level[2] = {store.leaf(!odd_parity), store.leaf(odd_parity)};
  for (std::size_t k = vars.size(); k-- > 0;) {
    NodeId even = store.query(vars[k], level[0], level[1]);
    NodeId odd = store.query(vars[k], level[1], level[0]);
    level[0] = even;
    level[1] = odd;
  }
  return MergeMap{owner, level[0]};
}

void validate_map(const NodeStore& store, const Pcnf& f, const MergeMap& m) {
  if (m.is_trivial()) return;
  for (Var v : store.queried_vars(m.root)) {
    if (!f.is_existential(v) || !f.precedes(v, m.owner)) {
      throw MergeMapError("map of " + std::to_string(m.owner.id) + " queries variable " +
                          std::to_string(v.id) + " which is not an earlier existential");
    }
  }
}

std::size_t node_count(const NodeStore& store, const MergeMap& m) {
  return m.is_trivial() ? 0 : store.reachable_count(m.root);
}

std::string dump_map(const NodeStore& store, const MergeMap& m) {
  std::ostringstream os;
  if (m.is_trivial()) {
    os << "map " << m.owner.id << " trivial\n";
    return os.str();
  }
  auto order = store.post_order(m.root);
  std::unordered_map<NodeId, std::size_t> local;
  for (std::size_t k = 0; k < order.size(); ++k) local[order[k]] = k;
  os << "map " << m.owner.id << " root " << local[m.root] << '\n';
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Node& n = store.node(order[k]);
    if (n.is_leaf()) {
      os << "node " << k << " leaf " << (n.value ? 1 : 0) << '\n';
    } else {
      os << "node " << k << " q " << n.var.id << ' ' << local[n.if_false] << ' '
         << local[n.if_true] << '\n';
    }
  }
  return os.str();
}

std::string dump_strategy(const Strategy& s) {
  std::string out;
  for (const auto& m : s.maps) out += dump_map(*s.store, m);
  return out;
}

std::vector<MergeMap> parse_maps(std::istream& in, NodeStore& store) {
  std::vector<MergeMap> maps;
  struct Pending {
    Var owner;
    std::size_t root;
    std::unordered_map<std::size_t, NodeId> ids;
  };
  std::optional<Pending> cur;
  auto finish = [&](std::size_t lineno) {
    if (!cur) return;
    auto it = cur->ids.find(cur->root);
    if (it == cur->ids.end()) {
      throw MergeMapError("line " + std::to_string(lineno) + ": map " +
                          std::to_string(cur->owner.id) + " has no root node");
    }
    maps.push_back(MergeMap{cur->owner, it->second});
    cur.reset();
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw == "c") continue;
    auto fail = [&](const std::string& what) {
      throw MergeMapError("line " + std::to_string(lineno) + ": " + what);
    };
    if (kw == "map") {
      finish(lineno);
      std::uint32_t u = 0;
      std::string what;
      if (!(ls >> u >> what) || u == 0) fail("malformed map line");
      if (what == "trivial") {
        maps.push_back(MergeMap{Var{u}, kTrivialRoot});
      } else if (what == "root") {
        std::size_t root = 0;
        if (!(ls >> root)) fail("malformed map line");
        cur = Pending{Var{u}, root, {}};
      } else {
        fail("expected 'root' or 'trivial'");
      }
    } else if (kw == "node") {
      if (!cur) fail("node line outside a map");
      std::size_t id = 0;
      std::string kind;
      if (!(ls >> id >> kind)) fail("malformed node line");
      if (cur->ids.count(id)) fail("duplicate node id " + std::to_string(id));
      if (kind == "leaf") {
        int v = -1;
        if (!(ls >> v) || (v != 0 && v != 1)) fail("leaf label must be 0 or 1");
        cur->ids[id] = store.leaf(v == 1);
      } else if (kind == "q") {
        std::uint32_t var = 0;
        std::size_t lo = 0, hi = 0;
        if (!(ls >> var >> lo >> hi) || var == 0) fail("malformed query node");
        auto a = cur->ids.find(lo), b = cur->ids.find(hi);
        if (a == cur->ids.end() || b == cur->ids.end()) {
          fail("query node refers to a node not yet defined");
        }
        cur->ids[id] = store.query(Var{var}, a->second, b->second);
      } else {
        fail("unknown node kind '" + kind + "'");
      }
    } else {
      fail("unexpected keyword '" + kw + "'");
    }
  }
  finish(lineno);
  return maps;
}

}  // namespace mres
