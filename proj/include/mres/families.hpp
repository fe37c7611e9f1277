#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mres/qbf.hpp"

namespace mres {

enum class FamilyId {
  kKbkfLq,
  kKbkfLqWeak,
  kKbkfLqSplit,
  kQParity,
  kLqParity,
  kQuParity,
  kMParity,
  kEq2,
  kHEq2,
};

inline constexpr std::array<FamilyId, 9> kAllFamilies = {
    FamilyId::kKbkfLq,  FamilyId::kKbkfLqWeak, FamilyId::kKbkfLqSplit,
    FamilyId::kQParity, FamilyId::kLqParity,   FamilyId::kQuParity,
    FamilyId::kMParity, FamilyId::kEq2,        FamilyId::kHEq2,
};

/// CLI name, e.g. `kbkf-lq-weak`.
std::string_view family_name(FamilyId id);
std::optional<FamilyId> parse_family(std::string_view name);
/// Smallest supported n.
std::size_t family_min_n(FamilyId id);

/// Two-colouring of the n x n grid.  Cells are 1-based.
class CoveringPartition {
 public:
  CoveringPartition() = default;
  CoveringPartition(std::size_t n, std::vector<std::uint8_t> regions);

  std::size_t n() const { return n_; }
  int region(std::size_t i, std::size_t j) const { return regions_.at((i - 1) * n_ + (j - 1)); }
  /// Each region has a cell in every row and every column.
  bool is_covering() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> regions_;
};

/// Block-diagonal partition with h = floor(n/2):
/// R0 = [1,h]^2 u [h+1,n]^2, R1 = the rest.  Requires n >= 2.
CoveringPartition default_partition(std::size_t n);

struct GenOptions {
  std::optional<CoveringPartition> partition;  // HEQ2 only
};

/// Generates the family instance with canonical numbering (prefix order,
/// left to right) and variable names.  Clauses follow definition order.
Pcnf generate(FamilyId id, std::size_t n, const GenOptions& opts = {});

/// Header comments: `family <name> n <n>` and one `var <idx> <name>` per
/// variable.
std::vector<std::string> family_comments(FamilyId id, std::size_t n, const Pcnf& f);

/// Clauses of parity^c(y_1..y_k): one clause per odd-size set S of
/// negated positions, S enumerated by increasing bitmask (bit 0 = y_1).
std::vector<Clause> parity_clauses(std::span<const Var> ys);

/// ∃x ∀u ∃t with (x,u,t), (-x,-u,t), (x,u,-t), (-x,-u,-t); x=1, u=2, t=3.
Pcnf example_formula();

// Canonical numbering, 1-based family indices.

/// KBKF-lq and its variants.  With `split`, t = 1 and everything else
/// shifts by one.
struct KbkfVars {
  std::size_t n = 0;
  bool split = false;

  std::uint32_t off() const { return split ? 1U : 0U; }
  Var t() const { return Var{1}; }
  Var d(std::size_t i) const { return Var{off() + static_cast<std::uint32_t>(3 * (i - 1) + 1)}; }
  Var e(std::size_t i) const { return Var{off() + static_cast<std::uint32_t>(3 * (i - 1) + 2)}; }
  Var x(std::size_t i) const { return Var{off() + static_cast<std::uint32_t>(3 * (i - 1) + 3)}; }
  Var f(std::size_t i) const { return Var{off() + static_cast<std::uint32_t>(3 * n + i)}; }
  std::uint32_t num_vars() const { return off() + static_cast<std::uint32_t>(4 * n); }
};

/// QParity / LQParity (`duplicated` = false) and QUParity (true):
/// x_1..x_n, z (or z_1 z_2), t_1..t_n.
struct QParityVars {
  std::size_t n = 0;
  bool duplicated = false;

  std::uint32_t nz() const { return duplicated ? 2U : 1U; }
  Var x(std::size_t i) const { return Var{static_cast<std::uint32_t>(i)}; }
  Var z(std::size_t k = 1) const { return Var{static_cast<std::uint32_t>(n + k)}; }
  Var t(std::size_t i) const { return Var{static_cast<std::uint32_t>(n + nz() + i)}; }
  std::uint32_t num_vars() const { return static_cast<std::uint32_t>(2 * n) + nz(); }
};

/// MParity: a_{i,j} row-major, x_1..x_n, z_1, z_2, t_1..t_n.
struct MParityVars {
  std::size_t n = 0;

  Var a(std::size_t i, std::size_t j) const {
    return Var{static_cast<std::uint32_t>((i - 1) * n + j)};
  }
  Var x(std::size_t i) const { return Var{static_cast<std::uint32_t>(n * n + i)}; }
  Var z(std::size_t k) const { return Var{static_cast<std::uint32_t>(n * n + n + k)}; }
  Var t(std::size_t i) const { return Var{static_cast<std::uint32_t>(n * n + n + 2 + i)}; }
  std::uint32_t num_vars() const { return static_cast<std::uint32_t>(n * n + 2 * n + 2); }
};

/// Eq2 / H-Eq2: x_1 y_1 .. x_n y_n, u_1 v_1 .. u_n v_n, t_{i,j} row-major.
struct Eq2Vars {
  std::size_t n = 0;

  Var x(std::size_t i) const { return Var{static_cast<std::uint32_t>(2 * i - 1)}; }
  Var y(std::size_t i) const { return Var{static_cast<std::uint32_t>(2 * i)}; }
  Var u(std::size_t i) const { return Var{static_cast<std::uint32_t>(2 * n + 2 * i - 1)}; }
  Var v(std::size_t i) const { return Var{static_cast<std::uint32_t>(2 * n + 2 * i)}; }
  Var t(std::size_t i, std::size_t j) const {
    return Var{static_cast<std::uint32_t>(4 * n + (i - 1) * n + j)};
  }
  std::uint32_t num_vars() const { return static_cast<std::uint32_t>(4 * n + n * n); }
};

}  // namespace mres
