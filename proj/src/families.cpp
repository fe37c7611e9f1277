#include "mres/families.hpp"

#include <bit>

namespace mres {

namespace {

Lit pos(Var v) { return Lit(v, true); }
Lit neg(Var v) { return Lit(v, false); }

QuantBlock exists(std::vector<Var> vs) { return {Quantifier::kExists, std::move(vs)}; }
QuantBlock forall(std::vector<Var> vs) { return {Quantifier::kForall, std::move(vs)}; }

std::vector<Lit> join(std::vector<Lit> a, std::span<const Lit> b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Pcnf kbkf(FamilyId id, std::size_t n) {
  const KbkfVars v{n, id == FamilyId::kKbkfLqSplit};
  std::vector<std::string> names(v.num_vars() + 1);
  std::vector<QuantBlock> prefix;
  if (v.split) {
    prefix.push_back(exists({v.t()}));
    names[v.t().id] = "t";
  }
  for (std::size_t i = 1; i <= n; ++i) {
    prefix.push_back(exists({v.d(i), v.e(i)}));
    prefix.push_back(forall({v.x(i)}));
    names[v.d(i).id] = "d" + std::to_string(i);
    names[v.e(i).id] = "e" + std::to_string(i);
    names[v.x(i).id] = "x" + std::to_string(i);
  }
  std::vector<Var> fs;
  for (std::size_t i = 1; i <= n; ++i) {
    fs.push_back(v.f(i));
    names[v.f(i).id] = "f" + std::to_string(i);
  }
  prefix.push_back(exists(fs));

  std::vector<Lit> neg_f;
  for (Var f : fs) neg_f.push_back(neg(f));

  std::vector<Clause> m;
  m.emplace_back(join({neg(v.d(1)), neg(v.e(1))}, neg_f));
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Lit> next;
    if (i < n) next = {neg(v.d(i + 1)), neg(v.e(i + 1))};
    m.emplace_back(join(join({pos(v.d(i)), pos(v.x(i))}, next), neg_f));
    m.emplace_back(join(join({pos(v.e(i)), neg(v.x(i))}, next), neg_f));
  }
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Lit> tail = {pos(v.f(i))};
    for (std::size_t k = i + 1; k <= n; ++k) tail.push_back(neg(v.f(k)));
    auto b0 = join({pos(v.x(i))}, tail);
    auto b1 = join({neg(v.x(i))}, tail);
    switch (id) {
      case FamilyId::kKbkfLq:
        m.emplace_back(b0);
        m.emplace_back(b1);
        break;
      case FamilyId::kKbkfLqWeak:
        m.emplace_back(join({pos(v.d(i))}, b0));
        m.emplace_back(join({neg(v.d(i))}, b1));
        break;
      default:
        m.emplace_back(join({pos(v.t())}, b0));
        m.emplace_back(join({pos(v.t())}, b1));
        m.push_back(Clause{neg(v.t()), pos(v.d(i))});
        m.push_back(Clause{neg(v.t()), neg(v.d(i))});
        break;
    }
  }
  Pcnf f(v.num_vars(), std::move(prefix), std::move(m));
  f.set_names(std::move(names));
  return f;
}

// The parity^c constraints zeta_1..zeta_n shared by the parity families.
std::vector<std::vector<Clause>> parity_chain(std::size_t n, auto x, auto t) {
  std::vector<std::vector<Clause>> zeta;
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Var> ys;
    if (i > 1) ys.push_back(t(i - 1));
    ys.push_back(x(i));
    ys.push_back(t(i));
    zeta.push_back(parity_clauses(ys));
  }
  return zeta;
}

Pcnf qparity(FamilyId id, std::size_t n) {
  const QParityVars v{n, id == FamilyId::kQuParity};
  std::vector<std::string> names(v.num_vars() + 1);
  std::vector<Var> xs, zs, ts;
  for (std::size_t i = 1; i <= n; ++i) {
    xs.push_back(v.x(i));
    ts.push_back(v.t(i));
    names[v.x(i).id] = "x" + std::to_string(i);
    names[v.t(i).id] = "t" + std::to_string(i);
  }
  for (std::uint32_t k = 1; k <= v.nz(); ++k) {
    zs.push_back(v.z(k));
    names[v.z(k).id] = v.duplicated ? "z" + std::to_string(k) : "z";
  }
  auto zlits = [&](bool positive) {
    std::vector<Lit> out;
    for (Var z : zs) out.emplace_back(z, positive);
    return out;
  };

  std::vector<Clause> m;
  auto zeta = parity_chain(n, [&](std::size_t i) { return v.x(i); },
                           [&](std::size_t i) { return v.t(i); });
  for (const auto& block : zeta) {
    for (const auto& c : block) {
      std::vector<Lit> lits(c.literals().begin(), c.literals().end());
      if (id == FamilyId::kQParity) {
        m.emplace_back(lits);
      } else {
        m.emplace_back(join(lits, zlits(true)));
        m.emplace_back(join(lits, zlits(false)));
      }
    }
  }
  m.emplace_back(join({pos(v.t(n))}, zlits(true)));
  m.emplace_back(join({neg(v.t(n))}, zlits(false)));

  Pcnf f(v.num_vars(), {exists(xs), forall(zs), exists(ts)}, std::move(m));
  f.set_names(std::move(names));
  return f;
}

Pcnf mparity(std::size_t n) {
  const MParityVars v{n};
  std::vector<std::string> names(v.num_vars() + 1);
  std::vector<Var> as, xs, ts;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      as.push_back(v.a(i, j));
      names[v.a(i, j).id] = "a" + std::to_string(i) + "_" + std::to_string(j);
    }
  }
  for (std::size_t i = 1; i <= n; ++i) {
    xs.push_back(v.x(i));
    ts.push_back(v.t(i));
    names[v.x(i).id] = "x" + std::to_string(i);
    names[v.t(i).id] = "t" + std::to_string(i);
  }
  names[v.z(1).id] = "z1";
  names[v.z(2).id] = "z2";

  std::vector<Clause> m;
  auto zeta = parity_chain(n, [&](std::size_t i) { return v.x(i); },
                           [&](std::size_t i) { return v.t(i); });
  for (std::size_t i = 1; i <= n; ++i) {
    for (const auto& c : zeta[i - 1]) {
      std::vector<Lit> lits(c.literals().begin(), c.literals().end());
      if (i < n) lits.push_back(pos(v.a(i, n)));
      m.emplace_back(join(lits, std::vector<Lit>{pos(v.z(1)), pos(v.z(2))}));
      m.emplace_back(join(lits, std::vector<Lit>{neg(v.z(1)), neg(v.z(2))}));
    }
  }
  m.push_back(Clause{pos(v.t(n)), pos(v.z(1)), pos(v.z(2))});
  m.push_back(Clause{neg(v.t(n)), neg(v.z(1)), neg(v.z(2))});
  for (std::size_t i = 1; i + 1 <= n; ++i) {
    for (std::size_t j = n; j >= i + 2; --j) {
      m.push_back(Clause{neg(v.a(i, j)), pos(v.x(j)), pos(v.a(i, j - 1))});
      m.push_back(Clause{neg(v.a(i, j)), neg(v.x(j)), pos(v.a(i, j - 1))});
    }
    m.push_back(Clause{neg(v.a(i, i + 1)), pos(v.x(i + 1))});
    m.push_back(Clause{neg(v.a(i, i + 1)), neg(v.x(i + 1))});
  }

  Pcnf f(v.num_vars(),
         {exists(as), exists(xs), forall({v.z(1), v.z(2)}), exists(ts)}, std::move(m));
  f.set_names(std::move(names));
  return f;
}

Pcnf squared_equality(std::size_t n, const CoveringPartition* holes) {
  const Eq2Vars v{n};
  std::vector<std::string> names(v.num_vars() + 1);
  std::vector<Var> xy, uv, ts;
  for (std::size_t i = 1; i <= n; ++i) {
    xy.push_back(v.x(i));
    xy.push_back(v.y(i));
    uv.push_back(v.u(i));
    uv.push_back(v.v(i));
    names[v.x(i).id] = "x" + std::to_string(i);
    names[v.y(i).id] = "y" + std::to_string(i);
    names[v.u(i).id] = "u" + std::to_string(i);
    names[v.v(i).id] = "v" + std::to_string(i);
  }
  // Universal literals kept per clause of a cell: bit 0 = u, bit 1 = v.
  static constexpr std::array<int, 4> kFull = {3, 3, 3, 3};
  static constexpr std::array<int, 4> kRegion0 = {3, 1, 2, 0};
  static constexpr std::array<int, 4> kRegion1 = {0, 2, 1, 3};

  std::vector<Clause> m;
  std::vector<Lit> b;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const Var t = v.t(i, j);
      ts.push_back(t);
      names[t.id] = "t" + std::to_string(i) + "_" + std::to_string(j);
      b.push_back(neg(t));
      const auto& keep =
          holes == nullptr ? kFull : (holes->region(i, j) == 0 ? kRegion0 : kRegion1);
      for (int k = 0; k < 4; ++k) {
        const bool px = k < 2;
        const bool py = k % 2 == 0;
        std::vector<Lit> lits = {Lit(v.x(i), px), Lit(v.y(j), py)};
        if (keep[k] & 1) lits.emplace_back(v.u(i), px);
        if (keep[k] & 2) lits.emplace_back(v.v(j), py);
        lits.push_back(pos(t));
        m.emplace_back(std::move(lits));
      }
    }
  }
  m.emplace_back(std::move(b));
  Pcnf f(v.num_vars(), {exists(xy), forall(uv), exists(ts)}, std::move(m));
  f.set_names(std::move(names));
  return f;
}

}  // namespace

std::string_view family_name(FamilyId id) {
  switch (id) {
    case FamilyId::kKbkfLq: return "kbkf-lq";
    case FamilyId::kKbkfLqWeak: return "kbkf-lq-weak";
    case FamilyId::kKbkfLqSplit: return "kbkf-lq-split";
    case FamilyId::kQParity: return "qparity";
    case FamilyId::kLqParity: return "lqparity";
    case FamilyId::kQuParity: return "quparity";
    case FamilyId::kMParity: return "mparity";
    case FamilyId::kEq2: return "eq2";
    case FamilyId::kHEq2: return "heq2";
  }
  return "?";
}

std::optional<FamilyId> parse_family(std::string_view name) {
  for (auto id : kAllFamilies) {
    if (family_name(id) == name) return id;
  }
  return std::nullopt;
}

std::size_t family_min_n(FamilyId id) {
  return id == FamilyId::kMParity || id == FamilyId::kHEq2 ? 2 : 1;
}

CoveringPartition::CoveringPartition(std::size_t n, std::vector<std::uint8_t> regions)
    : n_(n), regions_(std::move(regions)) {
  if (regions_.size() != n * n) throw Error("partition needs n*n cells");
  for (auto r : regions_) {
    if (r > 1) throw Error("partition regions are 0 or 1");
  }
}

bool CoveringPartition::is_covering() const {
  if (n_ == 0) return false;
  for (std::size_t a = 1; a <= n_; ++a) {
    std::array<bool, 2> row{}, col{};
    for (std::size_t b = 1; b <= n_; ++b) {
      row[region(a, b)] = true;
      col[region(b, a)] = true;
    }
    if (!row[0] || !row[1] || !col[0] || !col[1]) return false;
  }
  return true;
}

CoveringPartition default_partition(std::size_t n) {
  if (n < 2) throw Error("no covering partition exists for n < 2");
  const std::size_t h = n / 2;
  std::vector<std::uint8_t> cells(n * n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) cells[(i - 1) * n + (j - 1)] = (i <= h) != (j <= h);
  }
  CoveringPartition p(n, std::move(cells));
  if (!p.is_covering()) throw Error("default partition is not covering");
  return p;
}

std::vector<Clause> parity_clauses(std::span<const Var> ys) {
  std::vector<Clause> out;
  const std::uint32_t k = static_cast<std::uint32_t>(ys.size());
  for (std::uint32_t mask = 1; mask < (1U << k); ++mask) {
    if (std::popcount(mask) % 2 == 0) continue;
    std::vector<Lit> lits;
    for (std::uint32_t b = 0; b < k; ++b) lits.emplace_back(ys[b], ((mask >> b) & 1U) == 0);
    out.emplace_back(std::move(lits));
  }
  return out;
}

Pcnf example_formula() {
  const Var x{1}, u{2}, t{3};
  Pcnf f(3, {exists({x}), forall({u}), exists({t})},
         {Clause{pos(x), pos(u), pos(t)}, Clause{neg(x), neg(u), pos(t)},
          Clause{pos(x), pos(u), neg(t)}, Clause{neg(x), neg(u), neg(t)}});
  f.set_names({"", "x", "u", "t"});
  return f;
}

Pcnf generate(FamilyId id, std::size_t n, const GenOptions& opts) {
  if (n < family_min_n(id)) {
    throw Error(std::string(family_name(id)) + " needs n >= " +
                std::to_string(family_min_n(id)));
  }
  switch (id) {
    case FamilyId::kKbkfLq:
    case FamilyId::kKbkfLqWeak:
    case FamilyId::kKbkfLqSplit:
      return kbkf(id, n);
    case FamilyId::kQParity:
    case FamilyId::kLqParity:
    case FamilyId::kQuParity:
      return qparity(id, n);
    case FamilyId::kMParity:
      return mparity(n);
    case FamilyId::kEq2:
      return squared_equality(n, nullptr);
    case FamilyId::kHEq2: {
      const auto p = opts.partition ? *opts.partition : default_partition(n);
      if (p.n() != n) throw Error("partition size does not match n");
      if (!p.is_covering()) throw Error("partition is not covering");
      return squared_equality(n, &p);
    }
  }
  throw Error("unknown family");
}

std::vector<std::string> family_comments(FamilyId id, std::size_t n, const Pcnf& f) {
  std::vector<std::string> out;
  out.push_back("family " + std::string(family_name(id)) + " n " + std::to_string(n));
  for (std::uint32_t k = 1; k <= f.num_vars(); ++k) {
    out.push_back("var " + std::to_string(k) + " " + f.name(Var{k}));
  }
  return out;
}

}  // namespace mres
