#include "mres/qbf.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mres {

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

Clause Clause::from_dimacs(std::initializer_list<std::int32_t> lits) {
  std::vector<Lit> out;
  out.reserve(lits.size());
  for (auto v : lits) out.push_back(Lit::from_dimacs(v));
  return Clause(std::move(out));
}

bool Clause::contains(Lit l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

bool Clause::is_tautology() const {
  // Sorted by variable, so complementary literals are adjacent.
  for (std::size_t i = 1; i < lits_.size(); ++i) {
    if (lits_[i].var() == lits_[i - 1].var()) return true;
  }
  return false;
}

void Clause::insert(Lit l) {
  auto it = std::lower_bound(lits_.begin(), lits_.end(), l);
  if (it == lits_.end() || *it != l) lits_.insert(it, l);
}

void Clause::erase(Lit l) {
  auto it = std::lower_bound(lits_.begin(), lits_.end(), l);
  if (it != lits_.end() && *it == l) lits_.erase(it);
}

std::string Clause::to_string() const {
  if (lits_.empty()) return "[]";
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    if (i) os << ' ';
    os << lits_[i].dimacs();
  }
  os << '}';
  return os.str();
}

Pcnf::Pcnf(std::uint32_t num_vars, std::vector<QuantBlock> prefix,
           std::vector<Clause> matrix)
    : num_vars_(num_vars), matrix_(std::move(matrix)), infos_(num_vars + 1) {
  for (auto& block : prefix) {
    if (block.variables.empty()) continue;
    if (!prefix_.empty() && prefix_.back().quantifier == block.quantifier) {
      auto& vars = prefix_.back().variables;
      vars.insert(vars.end(), block.variables.begin(), block.variables.end());
    } else {
      prefix_.push_back(std::move(block));
    }
  }

  std::uint32_t position = 0;
  for (std::uint32_t b = 0; b < prefix_.size(); ++b) {
    const auto q = prefix_[b].quantifier;
    for (Var v : prefix_[b].variables) {
      if (v.id == 0 || v.id > num_vars_) {
        throw Error("variable " + std::to_string(v.id) +
                    " in prefix exceeds declared count " +
                    std::to_string(num_vars_));
      }
      auto& info = infos_[v.id];
      if (info.bound) {
        throw Error("variable " + std::to_string(v.id) +
                    " is quantified more than once");
      }
      info.bound = true;
      info.quantifier = q;
      info.block = b;
      info.position = position++;
      if (q == Quantifier::kExists) {
        info.ordinal = static_cast<std::uint32_t>(existentials_.size());
        existentials_.push_back(v);
      } else {
        info.ordinal = static_cast<std::uint32_t>(universals_.size());
        universals_.push_back(v);
      }
    }
  }

  for (const auto& c : matrix_) {
    for (Lit l : c.literals()) {
      if (l.var().id > num_vars_) {
        throw Error("literal " + std::to_string(l.dimacs()) +
                    " exceeds declared variable count");
      }
      if (!infos_[l.var().id].bound) {
        throw Error("free variable " + std::to_string(l.var().id) +
                    " (every matrix variable must be quantified)");
      }
    }
  }
}

const VarInfo& Pcnf::info(Var v) const {
  if (!is_bound(v)) {
    throw Error("variable " + std::to_string(v.id) + " is not in the prefix");
  }
  return infos_[v.id];
}

std::size_t Pcnf::universal_ordinal(Var u) const {
  if (!is_universal(u)) {
    throw Error("variable " + std::to_string(u.id) + " is not universal");
  }
  return infos_[u.id].ordinal;
}

void Pcnf::set_names(std::vector<std::string> names) {
  names_ = std::move(names);
  names_.resize(num_vars_ + 1);
}

std::string Pcnf::name(Var v) const {
  if (v.id < names_.size() && !names_[v.id].empty()) return names_[v.id];
  return std::to_string(v.id);
}

bool Pcnf::structurally_equal(const Pcnf& o) const {
  if (prefix_ != o.prefix_) return false;
  auto a = matrix_;
  auto b = o.matrix_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

void Assignment::assign(Var v, bool value) {
  if (v.id == 0 || v.id >= values_.size()) {
    throw Error("assignment to unknown variable " + std::to_string(v.id));
  }
  auto& slot = values_[v.id];
  if (slot >= 0 && (slot != 0) != value) {
    throw Error("variable " + std::to_string(v.id) + " assigned twice");
  }
  slot = value ? 1 : 0;
}

std::vector<Var> Assignment::domain() const {
  std::vector<Var> out;
  for (std::uint32_t i = 1; i < values_.size(); ++i) {
    if (values_[i] >= 0) out.push_back(Var{i});
  }
  return out;
}

Pcnf restrict(const Pcnf& f, const Assignment& rho) {
  for (Var v : rho.domain()) {
    if (!f.is_bound(v)) {
      throw Error("restriction touches unknown variable " +
                  std::to_string(v.id));
    }
    if (f.is_universal(v)) {
      throw Error("restriction touches universal variable " +
                  std::to_string(v.id));
    }
  }

  std::vector<QuantBlock> prefix;
  for (const auto& block : f.prefix()) {
    QuantBlock b{block.quantifier, {}};
    for (Var v : block.variables) {
      if (!rho.is_assigned(v)) b.variables.push_back(v);
    }
    prefix.push_back(std::move(b));
  }

  std::vector<Clause> matrix;
  for (const auto& c : f.matrix()) {
    bool satisfied = false;
    std::vector<Lit> kept;
    for (Lit l : c.literals()) {
      auto val = rho.value(l);
      if (!val) {
        kept.push_back(l);
      } else if (*val) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) matrix.emplace_back(std::move(kept));
  }

  Pcnf out(f.num_vars(), std::move(prefix), std::move(matrix));
  if (!f.names().empty()) out.set_names(f.names());
  return out;
}

Pcnf normalize(const Pcnf& f) {
  std::vector<std::uint32_t> renumber(f.num_vars() + 1, 0);
  std::uint32_t next = 0;
  std::vector<QuantBlock> prefix;
  for (const auto& block : f.prefix()) {
    QuantBlock b{block.quantifier, {}};
    for (Var v : block.variables) {
      renumber[v.id] = ++next;
      b.variables.push_back(Var{next});
    }
    prefix.push_back(std::move(b));
  }
  std::vector<Clause> matrix;
  matrix.reserve(f.matrix().size());
  for (const auto& c : f.matrix()) {
    std::vector<Lit> lits;
    for (Lit l : c.literals()) lits.emplace_back(Var{renumber[l.var().id]}, l.positive());
    matrix.emplace_back(std::move(lits));
  }
  std::sort(matrix.begin(), matrix.end());
  return Pcnf(next, std::move(prefix), std::move(matrix));
}

Assignment parse_assignment(const std::string& text, std::uint32_t num_vars) {
  Assignment rho(num_vars);
  std::istringstream is(text);
  std::string token;
  while (std::getline(is, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(),
                               [](unsigned char ch) { return std::isspace(ch); }),
                token.end());
    if (token.empty()) continue;
    auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 2 != token.size() ||
        (token[eq + 1] != '0' && token[eq + 1] != '1')) {
      throw Error("malformed assignment token '" + token + "' (want var=0|1)");
    }
    std::uint32_t id = 0;
    for (std::size_t i = 0; i < eq; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(token[i]))) {
        throw Error("malformed variable index in '" + token + "'");
      }
      id = id * 10 + static_cast<std::uint32_t>(token[i] - '0');
      if (id > num_vars) break;
    }
    if (id == 0 || id > num_vars) {
      throw Error("assignment to unknown variable in '" + token + "'");
    }
    rho.assign(Var{id}, token[eq + 1] == '1');
  }
  return rho;
}

}  // namespace mres
