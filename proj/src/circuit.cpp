#include "mres/circuit.hpp"

#include <sstream>
#include <unordered_map>

#include "mres/checker.hpp"

namespace mres {

std::string export_strategy_circuit(const Pcnf& f, const Strategy& s) {
  const auto& univ = f.universals();
  if (s.maps.size() != univ.size()) {
    throw Error("strategy has " + std::to_string(s.maps.size()) + " maps for " +
                std::to_string(univ.size()) + " universals");
  }
  std::ostringstream os;
  for (const auto& m : s.maps) {
    if (m.is_trivial()) continue;
    const auto u = m.owner.id;
    const auto order = s.store->post_order(m.root);
    std::unordered_map<NodeId, std::size_t> local;
    for (std::size_t k = 0; k < order.size(); ++k) {
      local.emplace(order[k], k);
      const Node& n = s.store->node(order[k]);
      os << "gate s_" << u << '_' << k << " = ";
      if (n.is_leaf()) {
        os << "const " << (n.value ? 1 : 0);
      } else {
        os << "mux(x" << n.var.id << ", s_" << u << '_' << local.at(n.if_false) << ", s_" << u
           << '_' << local.at(n.if_true) << ')';
      }
      os << '\n';
    }
    os << "output u" << u << " = s_" << u << '_' << local.at(m.root) << '\n';
  }
  return os.str();
}

std::string export_strategy_circuit(const Pcnf& f, const Proof& proof) {
  return export_strategy_circuit(f, extract_strategy(f, proof));
}

}  // namespace mres
