#pragma once

#include <string>

#include "mres/calculus.hpp"
#include "mres/merge_map.hpp"

namespace mres {

/// Extension-variable encoding of a strategy.  For every universal with a
/// program map, one gate per reachable node (children first):
///
///   gate s_<u>_<k> = const <0|1>
///   gate s_<u>_<k> = mux(x<var>, s_<u>_<ifFalse>, s_<u>_<ifTrue>)
///   output u<u> = s_<u>_<root>
///
/// `k` is the node's post-order position within its map.  Universals with
/// a trivial map get no gates.
std::string export_strategy_circuit(const Pcnf& f, const Strategy& s);

/// Replays `proof` and exports the final line's strategy.  Throws if the
/// proof is not a valid refutation.
std::string export_strategy_circuit(const Pcnf& f, const Proof& proof);

}  // namespace mres
