#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mres/calculus.hpp"
#include "mres/checker.hpp"
#include "mres/families.hpp"

namespace mres {

/// A proof line expected to carry the parity map M^b_index on both z maps.
struct ParityCheckpoint {
  std::size_t step = 0;  // 0-based
  std::size_t index = 0;
  bool odd = false;  // b = 1: computes x_index xor ... xor x_n
};

struct BuiltProof {
  Pcnf formula;
  Proof proof;
  CheckerConfig config;         // the checker configuration the proof targets
  std::size_t expected_steps = 0;
  std::string strategy;         // e.g. "x_i = d_i"
  std::vector<std::string> labels;  // one per step
  std::vector<ParityCheckpoint> parity_lines;
};

std::size_t kbkf_lq_weak_steps(std::size_t n);   // 8n + 1
std::size_t kbkf_lq_split_steps(std::size_t n);  // 12n + 1
std::size_t kbkf_lq_we_steps(std::size_t n);     // 10n + 1
std::size_t mparity_steps(std::size_t n);        // 13n^2 - 11n + 7
std::size_t eq2_steps(std::size_t n);            // 8n^2 + 1
std::size_t heq2_wf_steps(std::size_t n);        // 12n^2 + 1

/// Chains A_0 with A^e_i, A^d_i to L'_1, then each L''_i (from weak-B^0_i,
/// weak-B^1_i on d_i) into the chain on f_i.  Plain M-Res, regular.
BuiltProof build_kbkf_lq_weak(std::size_t n);

/// Every weak-B^k_i line is first derived from split-B^k_i and T^k_i on t.
BuiltProof build_kbkf_lq_split(std::size_t n);

/// KBKF-lq: every B^k_i line is weakened by d_i (k = 0) or -d_i (k = 1).
BuiltProof build_kbkf_lq_we(std::size_t n);

/// Phase 1 pushes the parity maps into every psi_i line through the
/// B-clauses; phase 2 eliminates t_n .. t_1.  Requires n >= 2.
BuiltProof build_mparity(std::size_t n);

/// Per cell: two resolutions on y_j, one on x_i, giving (t_ij, u_i=x_i,
/// v_j=y_j); then B is folded through the cells row-major on t_ij.
BuiltProof build_eq2(std::size_t n);

/// Strategy-weakens every H-Eq2 axiom to its Eq2 counterpart, then runs
/// the Eq2 construction.
BuiltProof build_heq2_wf(std::size_t n, const CoveringPartition& partition);
BuiltProof build_heq2_wf(std::size_t n);

/// The seven-step refutation of example_formula() ending in (empty, u=x).
BuiltProof build_example();

/// Builder for a family in the given checker mode, or an error naming the
/// reason no short refutation is provided.
BuiltProof build_for(FamilyId id, std::size_t n, const std::string& mode);

}  // namespace mres
