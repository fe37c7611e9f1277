#include "mres/refutations.hpp"

#include <array>
#include <functional>
#include <map>

#include "mres/proof_io.hpp"
#include "mres/qdimacs.hpp"

namespace mres {

namespace {

Lit pos(Var v) { return Lit(v, true); }
Lit neg(Var v) { return Lit(v, false); }

class Builder {
 public:
  Builder(Pcnf f, std::string family, std::size_t n) : out_{} {
    for (std::size_t k = 0; k < f.matrix().size(); ++k) index_.emplace(f.matrix()[k], k);
    out_.proof.formula_hash = formula_hash(f);
    out_.proof.comments.push_back(family_directive(family, n));
    out_.formula = std::move(f);
  }

  std::size_t axiom(const Clause& c, std::string label) {
    auto it = index_.find(c);
    if (it == index_.end()) throw Error("builder: clause " + c.to_string() + " not in formula");
    return push(AxiomStep{it->second}, std::move(label));
  }
  std::size_t resolve(std::size_t left, std::size_t right, Var pivot, std::string label = {}) {
    return push(ResolveStep{left, right, pivot}, std::move(label));
  }
  std::size_t weaken(std::size_t src, Lit lit, std::string label = {}) {
    return push(WeakenExistStep{src, lit}, std::move(label));
  }
  std::size_t weaken(std::size_t src, Var u, bool value, std::string label = {}) {
    return push(WeakenStrategyStep{src, u, value}, std::move(label));
  }

  BuiltProof& out() { return out_; }
  BuiltProof finish(CheckerConfig cfg, std::size_t expected, std::string strategy) {
    out_.config = cfg;
    out_.expected_steps = expected;
    out_.strategy = std::move(strategy);
    return std::move(out_);
  }

 private:
  std::size_t push(RuleApp step, std::string label) {
    out_.proof.steps.push_back(step);
    out_.labels.push_back(std::move(label));
    return out_.proof.steps.size() - 1;
  }

  BuiltProof out_;
  std::map<Clause, std::size_t> index_;
};

std::string idx(const std::string& s, std::size_t i) { return s + "_" + std::to_string(i); }

using WeakBLine = std::function<std::size_t(Builder&, std::size_t i, int k)>;

// The chained derivation over the KBKF-lq A-clauses; `weak_b`
// supplies the weak-B^k_i line on demand.
void kbkf_chain(Builder& b, const KbkfVars& v, const WeakBLine& weak_b) {
  const std::size_t n = v.n;
  std::vector<Lit> neg_f;
  for (std::size_t i = 1; i <= n; ++i) neg_f.push_back(neg(v.f(i)));
  auto with_f = [&](std::vector<Lit> lits) {
    lits.insert(lits.end(), neg_f.begin(), neg_f.end());
    return Clause(std::move(lits));
  };

  std::size_t acc = b.axiom(with_f({neg(v.d(1)), neg(v.e(1))}), "A0");
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Lit> next;
    if (i < n) next = {neg(v.d(i + 1)), neg(v.e(i + 1))};
    auto ae = next;
    ae.insert(ae.begin(), {pos(v.e(i)), neg(v.x(i))});
    auto ad = next;
    ad.insert(ad.begin(), {pos(v.d(i)), pos(v.x(i))});
    const auto le = b.axiom(with_f(ae), idx("Ae", i));
    acc = b.resolve(le, acc, v.e(i), idx("Le", i));
    const auto ld = b.axiom(with_f(ad), idx("Ad", i));
    acc = b.resolve(ld, acc, v.d(i), i < n ? idx("Ld", i) : "L'_1");
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const auto w0 = weak_b(b, i, 0);
    const auto w1 = weak_b(b, i, 1);
    const auto l2 = b.resolve(w0, w1, v.d(i), idx("L''", i));
    acc = b.resolve(l2, acc, v.f(i), i < n ? idx("L'", i + 1) : "empty");
  }
}

std::vector<Lit> kbkf_b(const KbkfVars& v, std::size_t i, int k) {
  std::vector<Lit> lits = {Lit(v.x(i), k == 0), pos(v.f(i))};
  for (std::size_t j = i + 1; j <= v.n; ++j) lits.push_back(neg(v.f(j)));
  return lits;
}

void require_n(std::size_t n, std::size_t min, const char* what) {
  if (n < min) throw Error(std::string(what) + " needs n >= " + std::to_string(min));
}

void eq2_core(Builder& b, const Eq2Vars& v,
              const std::function<std::size_t(Builder&, std::size_t, std::size_t, int)>& cell_line) {
  const std::size_t n = v.n;
  std::vector<std::size_t> cells;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      std::array<std::size_t, 4> c{};
      for (int k = 0; k < 4; ++k) c[k] = cell_line(b, i, j, k);
      const std::string cell = std::to_string(i) + "_" + std::to_string(j);
      const auto r12 = b.resolve(c[0], c[1], v.y(j), "x-side " + cell);
      const auto r34 = b.resolve(c[2], c[3], v.y(j), "-x-side " + cell);
      cells.push_back(b.resolve(r12, r34, v.x(i), "cell " + cell));
    }
  }
  std::vector<Lit> all;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) all.push_back(neg(v.t(i, j)));
  }
  std::size_t acc = b.axiom(Clause(std::move(all)), "B");
  std::size_t k = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j, ++k) acc = b.resolve(cells[k], acc, v.t(i, j), "fold");
  }
}

// Clause k (0..3) of cell (i,j) with the universal literals selected by
// `keep` (bit 0 = u, bit 1 = v).
Clause eq2_clause(const Eq2Vars& v, std::size_t i, std::size_t j, int k, int keep) {
  const bool px = k < 2;
  const bool py = k % 2 == 0;
  std::vector<Lit> lits = {Lit(v.x(i), px), Lit(v.y(j), py), pos(v.t(i, j))};
  if (keep & 1) lits.emplace_back(v.u(i), px);
  if (keep & 2) lits.emplace_back(v.v(j), py);
  return Clause(std::move(lits));
}

}  // namespace

std::size_t kbkf_lq_weak_steps(std::size_t n) { return 8 * n + 1; }
std::size_t kbkf_lq_split_steps(std::size_t n) { return 12 * n + 1; }
std::size_t kbkf_lq_we_steps(std::size_t n) { return 10 * n + 1; }
std::size_t mparity_steps(std::size_t n) { return 13 * n * n - 11 * n + 7; }
std::size_t eq2_steps(std::size_t n) { return 8 * n * n + 1; }
std::size_t heq2_wf_steps(std::size_t n) { return 12 * n * n + 1; }

BuiltProof build_kbkf_lq_weak(std::size_t n) {
  require_n(n, 1, "kbkf-lq-weak");
  const KbkfVars v{n, false};
  Builder b(generate(FamilyId::kKbkfLqWeak, n), "kbkf-lq-weak", n);
  kbkf_chain(b, v, [&](Builder& bb, std::size_t i, int k) {
    auto lits = kbkf_b(v, i, k);
    lits.push_back(Lit(v.d(i), k == 0));
    return bb.axiom(Clause(std::move(lits)), idx("wB" + std::to_string(k), i));
  });
  return b.finish(CheckerConfig::plain(), kbkf_lq_weak_steps(n), "x_i = d_i");
}

BuiltProof build_kbkf_lq_split(std::size_t n) {
  require_n(n, 1, "kbkf-lq-split");
  const KbkfVars v{n, true};
  Builder b(generate(FamilyId::kKbkfLqSplit, n), "kbkf-lq-split", n);
  kbkf_chain(b, v, [&](Builder& bb, std::size_t i, int k) {
    auto lits = kbkf_b(v, i, k);
    lits.push_back(pos(v.t()));
    const auto split = bb.axiom(Clause(std::move(lits)), idx("sB" + std::to_string(k), i));
    const auto t = bb.axiom(Clause{neg(v.t()), Lit(v.d(i), k == 0)}, idx("T" + std::to_string(k), i));
    return bb.resolve(split, t, v.t(), idx("wB" + std::to_string(k), i));
  });
  return b.finish(CheckerConfig::plain(), kbkf_lq_split_steps(n), "x_i = d_i");
}

BuiltProof build_kbkf_lq_we(std::size_t n) {
  require_n(n, 1, "kbkf-lq");
  const KbkfVars v{n, false};
  Builder b(generate(FamilyId::kKbkfLq, n), "kbkf-lq", n);
  kbkf_chain(b, v, [&](Builder& bb, std::size_t i, int k) {
    const auto line = bb.axiom(Clause(kbkf_b(v, i, k)), idx("B" + std::to_string(k), i));
    return bb.weaken(line, Lit(v.d(i), k == 0), idx("wB" + std::to_string(k), i));
  });
  return b.finish(CheckerConfig::with_exist_weakening(), kbkf_lq_we_steps(n), "x_i = d_i");
}

BuiltProof build_mparity(std::size_t n) {
  require_n(n, 2, "mparity");
  const MParityVars v{n};
  Builder b(generate(FamilyId::kMParity, n), "mparity", n);
  const Lit z_pos[] = {pos(v.z(1)), pos(v.z(2))};
  const Lit z_neg[] = {neg(v.z(1)), neg(v.z(2))};

  auto zeta = [&](std::size_t i) {
    std::vector<Var> ys;
    if (i > 1) ys.push_back(v.t(i - 1));
    ys.push_back(v.x(i));
    ys.push_back(v.t(i));
    return parity_clauses(ys);
  };
  auto extend = [](const Clause& c, std::span<const Lit> extra) {
    std::vector<Lit> lits(c.literals().begin(), c.literals().end());
    lits.insert(lits.end(), extra.begin(), extra.end());
    return Clause(std::move(lits));
  };

  // psi[i][C][q]: the line (C, M^q_{i+1}).
  std::vector<std::map<Clause, std::array<std::size_t, 2>>> psi(n + 1);
  for (std::size_t i = 1; i < n; ++i) {
    const auto cs = zeta(i);
    std::vector<std::array<std::size_t, 2>> cur(cs.size());
    for (std::size_t c = 0; c < cs.size(); ++c) {
      const Clause base = extend(cs[c], std::array{pos(v.a(i, n))});
      // A^0 falsifies z with 0 = M^1_{n+1}; A^1 with 1 = M^0_{n+1}.
      cur[c][1] = b.axiom(extend(base, z_pos), "A0 psi_" + std::to_string(i));
      cur[c][0] = b.axiom(extend(base, z_neg), "A1 psi_" + std::to_string(i));
    }
    for (std::size_t j = n; j >= i + 1; --j) {
      const Var a = v.a(i, j);
      std::vector<Lit> tail;
      if (j >= i + 2) tail.push_back(pos(v.a(i, j - 1)));
      auto bk = [&](bool positive) {
        std::vector<Lit> lits = {neg(a), Lit(v.x(j), positive)};
        lits.insert(lits.end(), tail.begin(), tail.end());
        return Clause(std::move(lits));
      };
      const std::string stage = std::to_string(i) + "," + std::to_string(j);
      const auto b0 = b.axiom(bk(true), "B0_" + stage);
      const auto b1 = b.axiom(bk(false), "B1_" + stage);
      for (auto& line : cur) {
        const auto p1 = line[1];
        const auto p0 = line[0];
        const auto r1 = b.resolve(p1, b0, a);
        const auto r2 = b.resolve(p0, b1, a);
        const auto r3 = b.resolve(p1, b1, a);
        const auto r4 = b.resolve(p0, b0, a);
        line[1] = b.resolve(r1, r2, v.x(j), "M1_" + std::to_string(j));
        line[0] = b.resolve(r4, r3, v.x(j), "M0_" + std::to_string(j));
      }
    }
    for (std::size_t c = 0; c < cs.size(); ++c) {
      psi[i][cs[c]] = cur[c];
      for (int q = 0; q < 2; ++q) {
        b.out().parity_lines.push_back({cur[c][q], i + 1, q == 1});
      }
    }
  }
  for (const auto& c : zeta(n)) {
    std::array<std::size_t, 2> line{};
    line[1] = b.axiom(extend(c, z_pos), "A0 psi_" + std::to_string(n));
    line[0] = b.axiom(extend(c, z_neg), "A1 psi_" + std::to_string(n));
    psi[n][c] = line;
    for (int q = 0; q < 2; ++q) b.out().parity_lines.push_back({line[q], n + 1, q == 1});
  }

  std::size_t t1 = b.axiom(Clause{pos(v.t(n)), pos(v.z(1)), pos(v.z(2))}, "psi_n+1");
  std::size_t t0 = b.axiom(Clause{neg(v.t(n)), neg(v.z(1)), neg(v.z(2))}, "psi_n+1");
  auto line = [&](std::size_t i, std::initializer_list<Lit> c, int q) {
    return psi[i].at(Clause(c))[q];
  };
  for (std::size_t i = n; i >= 2; --i) {
    const Var tp = v.t(i - 1);
    const Var ti = v.t(i);
    const Var xi = v.x(i);
    const auto a = b.resolve(t1, line(i, {pos(tp), pos(xi), neg(ti)}, 1), ti);
    const auto c = b.resolve(line(i, {pos(tp), neg(xi), pos(ti)}, 0), t0, ti);
    const auto p = b.resolve(a, c, xi, idx("t", i - 1));
    const auto d = b.resolve(t1, line(i, {neg(tp), neg(xi), neg(ti)}, 1), ti);
    const auto e = b.resolve(line(i, {neg(tp), pos(xi), pos(ti)}, 0), t0, ti);
    const auto q = b.resolve(e, d, xi, idx("-t", i - 1));
    b.out().parity_lines.push_back({p, i, true});
    b.out().parity_lines.push_back({q, i, false});
    t1 = p;
    t0 = q;
  }
  const auto a = b.resolve(t1, line(1, {pos(v.x(1)), neg(v.t(1))}, 1), v.t(1), "x1");
  const auto c = b.resolve(line(1, {neg(v.x(1)), pos(v.t(1))}, 0), t0, v.t(1), "-x1");
  const auto last = b.resolve(a, c, v.x(1), "empty");
  b.out().parity_lines.push_back({last, 1, true});
  return b.finish(CheckerConfig::plain(), mparity_steps(n), "z1 = z2 = x_1 xor ... xor x_n");
}

BuiltProof build_eq2(std::size_t n) {
  require_n(n, 1, "eq2");
  const Eq2Vars v{n};
  Builder b(generate(FamilyId::kEq2, n), "eq2", n);
  eq2_core(b, v, [&](Builder& bb, std::size_t i, std::size_t j, int k) {
    return bb.axiom(eq2_clause(v, i, j, k, 3), "A_" + std::to_string(i) + "_" + std::to_string(j));
  });
  auto cfg = CheckerConfig::plain();
  cfg.require_regular = true;
  return b.finish(cfg, eq2_steps(n), "u_i = x_i, v_j = y_j");
}

BuiltProof build_heq2_wf(std::size_t n, const CoveringPartition& partition) {
  require_n(n, 2, "heq2");
  const Eq2Vars v{n};
  GenOptions opts;
  opts.partition = partition;
  Builder b(generate(FamilyId::kHEq2, n, opts), "heq2", n);
  static constexpr std::array<int, 4> kRegion0 = {3, 1, 2, 0};
  static constexpr std::array<int, 4> kRegion1 = {0, 2, 1, 3};
  eq2_core(b, v, [&](Builder& bb, std::size_t i, std::size_t j, int k) {
    const int keep = (partition.region(i, j) == 0 ? kRegion0 : kRegion1)[k];
    const bool px = k < 2;
    const bool py = k % 2 == 0;
    auto line = bb.axiom(eq2_clause(v, i, j, k, keep),
                         "A_" + std::to_string(i) + "_" + std::to_string(j));
    if (!(keep & 1)) line = bb.weaken(line, v.u(i), !px, "WF u");
    if (!(keep & 2)) line = bb.weaken(line, v.v(j), !py, "WF v");
    return line;
  });
  auto cfg = CheckerConfig::with_strategy_weakening();
  cfg.require_regular = true;
  return b.finish(cfg, heq2_wf_steps(n), "u_i = x_i, v_j = y_j");
}

BuiltProof build_heq2_wf(std::size_t n) {
  require_n(n, 2, "heq2");
  return build_heq2_wf(n, default_partition(n));
}

BuiltProof build_example() {
  const Var x{1}, u{2}, t{3};
  Builder b(example_formula(), "example", 1);
  const auto a1 = b.axiom(Clause{pos(x), pos(u), pos(t)}, "x t, u=0");
  const auto a2 = b.axiom(Clause{neg(x), neg(u), pos(t)}, "-x t, u=1");
  const auto l1 = b.resolve(a1, a2, x, "t, u=x");
  const auto a3 = b.axiom(Clause{pos(x), pos(u), neg(t)}, "x -t, u=0");
  const auto a4 = b.axiom(Clause{neg(x), neg(u), neg(t)}, "-x -t, u=1");
  const auto l2 = b.resolve(a3, a4, x, "-t, u=x");
  b.resolve(l1, l2, t, "empty, u=x");
  return b.finish(CheckerConfig::plain(), 7, "u = x");
}

BuiltProof build_for(FamilyId id, std::size_t n, const std::string& mode) {
  const auto cfg = CheckerConfig::from_mode(mode);
  const bool we = cfg.allow_weaken_exist;
  const bool wf = cfg.allow_weaken_strategy;
  switch (id) {
    case FamilyId::kKbkfLqWeak: return build_kbkf_lq_weak(n);
    case FamilyId::kKbkfLqSplit: return build_kbkf_lq_split(n);
    case FamilyId::kMParity: return build_mparity(n);
    case FamilyId::kEq2: return build_eq2(n);
    case FamilyId::kKbkfLq:
      if (!we) {
        throw Error(
            "kbkf-lq has an exponential lower bound in M-Res and in M-Res with strategy "
            "weakening; use --mode we or wef");
      }
      return build_kbkf_lq_we(n);
    case FamilyId::kHEq2:
      if (!wf) {
        throw Error(
            "heq2 has an exponential lower bound in regular M-Res; use --mode wf or wef");
      }
      return build_heq2_wf(n);
    case FamilyId::kQParity:
    case FamilyId::kLqParity:
    case FamilyId::kQuParity:
      throw Error(std::string(family_name(id)) +
                  " has no short M-Res refutation here: the parity families without the "
                  "a-variables block the isomorphism checks (QUParity requires exponential "
                  "size in LQU+-Res, and no polynomial M-Res upper bound is known)");
  }
  throw Error("unknown family");
}

}  // namespace mres
