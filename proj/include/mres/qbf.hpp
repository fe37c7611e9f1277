#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mres {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A QDIMACS variable index (1-based).
struct Var {
  std::uint32_t id = 0;

  constexpr auto operator<=>(const Var&) const = default;
};

/// A literal in DIMACS convention: +v or -v.
class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool positive)
      : value_(positive ? static_cast<std::int32_t>(v.id)
                        : -static_cast<std::int32_t>(v.id)) {}

  static Lit from_dimacs(std::int32_t value) {
    if (value == 0) throw Error("literal 0 is not a valid literal");
    Lit l;
    l.value_ = value;
    return l;
  }

  constexpr Var var() const {
    return Var{static_cast<std::uint32_t>(value_ < 0 ? -value_ : value_)};
  }
  constexpr bool positive() const { return value_ > 0; }
  constexpr std::int32_t dimacs() const { return value_; }
  constexpr Lit operator~() const {
    Lit l;
    l.value_ = -value_;
    return l;
  }

  constexpr bool operator==(const Lit&) const = default;
  // Orders by variable first, then negative before positive.
  constexpr std::strong_ordering operator<=>(const Lit& o) const {
    if (auto c = var().id <=> o.var().id; c != 0) return c;
    return positive() <=> o.positive();
  }

 private:
  std::int32_t value_ = 0;
};

/// A clause with set semantics: literals are kept sorted and unique.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Lit> lits);
  Clause(std::initializer_list<Lit> lits)
      : Clause(std::vector<Lit>(lits)) {}
  static Clause from_dimacs(std::initializer_list<std::int32_t> lits);

  std::span<const Lit> literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Lit l) const;
  bool is_tautology() const;

  /// Adds a literal; no-op if already present.
  void insert(Lit l);
  /// Removes a literal; no-op if absent.
  void erase(Lit l);

  bool operator==(const Clause&) const = default;
  auto operator<=>(const Clause& o) const { return lits_ <=> o.lits_; }

  std::string to_string() const;

 private:
  std::vector<Lit> lits_;
};

enum class Quantifier : std::uint8_t { kExists, kForall };

struct QuantBlock {
  Quantifier quantifier = Quantifier::kExists;
  std::vector<Var> variables;

  bool operator==(const QuantBlock&) const = default;
};

/// Per-variable placement in the quantifier prefix.
struct VarInfo {
  bool bound = false;
  Quantifier quantifier = Quantifier::kExists;
  std::uint32_t block = 0;     // index into the prefix
  std::uint32_t position = 0;  // global position in prefix order
  std::uint32_t ordinal = 0;   // index among existentials / universals
};

/// A prenex CNF QBF.
///
/// The prefix is normalised on construction: empty blocks are dropped and
/// adjacent blocks with equal quantifiers are merged.  Every variable of the
/// matrix must be bound by the prefix.
class Pcnf {
 public:
  Pcnf() = default;
  Pcnf(std::uint32_t num_vars, std::vector<QuantBlock> prefix,
       std::vector<Clause> matrix);

  std::uint32_t num_vars() const { return num_vars_; }
  const std::vector<QuantBlock>& prefix() const { return prefix_; }
  const std::vector<Clause>& matrix() const { return matrix_; }

  const VarInfo& info(Var v) const;
  bool is_bound(Var v) const {
    return v.id >= 1 && v.id <= num_vars_ && infos_[v.id].bound;
  }
  bool is_existential(Var v) const {
    return is_bound(v) && infos_[v.id].quantifier == Quantifier::kExists;
  }
  bool is_universal(Var v) const {
    return is_bound(v) && infos_[v.id].quantifier == Quantifier::kForall;
  }
  /// True iff `a` is quantified in a strictly earlier block than `b`.
  bool precedes(Var a, Var b) const { return info(a).block < info(b).block; }

  /// Existential / universal variables in prefix order.
  const std::vector<Var>& existentials() const { return existentials_; }
  const std::vector<Var>& universals() const { return universals_; }
  std::size_t universal_ordinal(Var u) const;

  /// Optional human-readable names, indexed by variable id (may be empty).
  const std::vector<std::string>& names() const { return names_; }
  void set_names(std::vector<std::string> names);
  std::string name(Var v) const;

  /// Same prefix blocks and same clause multiset.
  bool structurally_equal(const Pcnf& o) const;

 private:
  std::uint32_t num_vars_ = 0;
  std::vector<QuantBlock> prefix_;
  std::vector<Clause> matrix_;
  std::vector<VarInfo> infos_;
  std::vector<Var> existentials_;
  std::vector<Var> universals_;
  std::vector<std::string> names_;
};

/// A partial assignment over variables 1..num_vars.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::uint32_t num_vars) : values_(num_vars + 1, -1) {}

  std::uint32_t num_vars() const {
    return values_.empty() ? 0 : static_cast<std::uint32_t>(values_.size() - 1);
  }
  std::optional<bool> get(Var v) const {
    if (v.id >= values_.size() || values_[v.id] < 0) return std::nullopt;
    return values_[v.id] != 0;
  }
  bool is_assigned(Var v) const { return get(v).has_value(); }
  /// Assigns v; throws if v is out of range or already bound to the
  /// other value.
  void assign(Var v, bool value);
  /// Overwrites v without the at-most-once check.
  void set(Var v, bool value) { values_.at(v.id) = value ? 1 : 0; }
  void unset(Var v) { values_.at(v.id) = -1; }

  /// Value of a literal, nullopt if its variable is unassigned.
  std::optional<bool> value(Lit l) const {
    auto v = get(l.var());
    if (!v) return std::nullopt;
    return *v == l.positive();
  }

  std::vector<Var> domain() const;

 private:
  std::vector<std::int8_t> values_;
};

/// Restricts `f` by an assignment to existential variables.
///
/// Satisfied clauses are dropped, falsified literals removed and assigned
/// variables removed from the prefix.  Variable indices are kept.
Pcnf restrict(const Pcnf& f, const Assignment& rho);

/// Renumbers variables densely in prefix order, sorts the clause list and
/// drops names.  Two formulas that are equal up to variable renaming in
/// prefix order and clause order normalise to identical objects.
Pcnf normalize(const Pcnf& f);

/// Parses comma-separated `var=0|1` tokens into an assignment.
Assignment parse_assignment(const std::string& text, std::uint32_t num_vars);

}  // namespace mres
