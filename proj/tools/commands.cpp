#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iterator>
#include <sstream>
#include <utility>

#include "mres/checker.hpp"
#include "mres/circuit.hpp"
#include "mres/families.hpp"
#include "mres/game.hpp"
#include "mres/proof_io.hpp"
#include "mres/qdimacs.hpp"
#include "mres/refutations.hpp"

namespace mres::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

std::string read_all(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
  if (!file) throw UsageError("write to '" + path + "' failed");
}

void print_kv(std::ostream& out, const KeyValues& kv) {
  for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
}

std::string yes_no(bool b) { return b ? "1" : "0"; }

Pcnf family_formula(const std::string& name, std::size_t n) {
  if (name == "example") return example_formula();
  auto id = parse_family(name);
  if (!id) throw UsageError("unknown family '" + name + "'");
  return generate(*id, n);
}

std::vector<std::string> header_comments(const std::string& name, std::size_t n, const Pcnf& f) {
  std::vector<std::string> out;
  out.push_back("family " + name + " n " + std::to_string(n));
  for (std::uint32_t k = 1; k <= f.num_vars(); ++k) {
    out.push_back("var " + std::to_string(k) + " " + f.name(Var{k}));
  }
  return out;
}

struct Inputs {
  Pcnf formula;
  Proof proof;
};

// [] reads the proof from stdin, [P] reads P, [F P] reads both.  Without a
// formula file the formula is regenerated from the proof's family directive.
Inputs load_inputs(const std::vector<std::string>& pos, std::istream& in) {
  if (pos.size() > 2) throw UsageError("expected [FORMULA] [PROOF]");
  Inputs io;
  io.proof = parse_proof(read_all(pos.empty() ? "-" : pos.back(), in));
  if (pos.size() == 2) {
    io.formula = parse_qdimacs(read_all(pos[0], in));
  } else {
    auto dir = find_family_directive(io.proof);
    if (!dir) throw UsageError("proof has no family directive; pass the formula file");
    io.formula = family_formula(dir->family, dir->n);
  }
  const auto h = formula_hash(io.formula);
  if (h != io.proof.formula_hash) {
    throw UsageError("formula hash mismatch: proof expects " + format_hash(io.proof.formula_hash) +
                     ", formula has " + format_hash(h));
  }
  return io;
}

KeyValues report_kv(const CheckReport& r) {
  KeyValues kv = {
      {"status", r.valid ? "ok" : "rejected"},
      {"valid", yes_no(r.valid)},
      {"refutation", yes_no(r.refutation)},
      {"steps", std::to_string(r.steps)},
      {"axioms", std::to_string(r.counts.axiom)},
      {"resolutions", std::to_string(r.counts.resolve)},
      {"weaken_exist", std::to_string(r.counts.weaken_exist)},
      {"weaken_strategy", std::to_string(r.counts.weaken_strategy)},
      {"max_map_nodes", std::to_string(r.max_map_nodes)},
      {"regular", yes_no(r.regular)},
      {"tautology_free", yes_no(r.tautology_free)},
  };
  if (r.first_irregular_step) kv.emplace_back("first_irregular_step", std::to_string(*r.first_irregular_step));
  if (r.invariant_holds) kv.emplace_back("invariant", yes_no(*r.invariant_holds));
  if (r.failed_step) kv.emplace_back("failed_step", std::to_string(*r.failed_step));
  return kv;
}

void print_report_text(std::ostream& out, const CheckReport& r) {
  out << (r.valid ? r.message : "rejected: " + r.message) << '\n';
  out << "steps " << r.steps << ": " << r.counts.axiom << " axiom, " << r.counts.resolve
      << " resolve, " << r.counts.weaken_exist << " weaken-exist, " << r.counts.weaken_strategy
      << " weaken-strategy\n";
  out << "max merge-map nodes " << r.max_map_nodes << '\n';
  out << "regular " << (r.regular ? "yes" : "no") << '\n';
}

std::string assignment_text(const Pcnf& f, const Assignment& a) {
  std::ostringstream os;
  bool first = true;
  for (const auto& block : f.prefix()) {
    for (Var v : block.variables) {
      auto val = a.get(v);
      if (!val) continue;
      if (!first) os << ',';
      first = false;
      os << v.id << '=' << (*val ? 1 : 0);
    }
  }
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Merge Resolution toolkit for QBF proofs", "mres"};
  app.require_subcommand(1);

  std::string family, output, mode = "plain", format, partition = "default", assignment, maps_in,
                          maps_out;
  std::size_t n = 0;
  std::size_t max_vars = 0;
  bool regular = false, normalize_out = false, run_invariant = false, forbid_taut = false;
  std::vector<std::string> positional;

  auto mode_opt = [&](CLI::App* sub) {
    sub->add_option("--mode", mode, "Rule set: plain, we, wf or wef")
        ->check(CLI::IsMember({"plain", "we", "wf", "wef"}));
  };
  auto files = [&](CLI::App* sub, const char* what) {
    sub->add_option("files", positional, what);
  };

  auto* gen = app.add_subcommand("gen", "Generate a family instance as QDIMACS");
  gen->add_option("family", family, "Family name")->required();
  gen->add_option("n", n, "Size parameter")->required();
  gen->add_option("--partition", partition, "H-Eq2 partition")->check(CLI::IsMember({"default"}));
  gen->add_option("-o", output, "Output file");
  gen->add_option("--format", format)->check(CLI::IsMember({"qdimacs"}));
  gen->add_flag("--normalize", normalize_out, "Renumber densely and sort clauses");

  auto* prove = app.add_subcommand("prove", "Build the refutation of a family instance");
  prove->add_option("family", family, "Family name")->required();
  prove->add_option("n", n, "Size parameter")->required();
  mode_opt(prove);
  prove->add_option("--partition", partition)->check(CLI::IsMember({"default"}));
  prove->add_option("-o", output, "Output file");

  auto* check = app.add_subcommand("check", "Check a proof");
  files(check, "[FORMULA] [PROOF]; the proof defaults to stdin");
  mode_opt(check);
  check->add_flag("--regular", regular, "Reject irregular resolution steps");
  check->add_flag("--forbid-tautologies", forbid_taut, "Reject tautological clauses");
  check->add_flag("--invariant", run_invariant, "Also check the line invariant exhaustively");
  check->add_option("--max-vars", max_vars, "Existential budget for --invariant");
  check->add_option("--format", format)->check(CLI::IsMember({"text", "stats-kv"}));

  auto* invariant = app.add_subcommand("invariant", "Check the semantic line invariant");
  files(invariant, "[FORMULA] [PROOF]");
  invariant->add_option("--max-vars", max_vars, "Existential variable budget (default 20)");

  auto* verify = app.add_subcommand("verify-strategy", "Check the extracted strategy wins");
  files(verify, "[FORMULA] [PROOF], or FORMULA with --maps");
  verify->add_option("--maps", maps_in, "Read the strategy from a map dump");
  verify->add_option("--maps-out", maps_out, "Write the strategy as a map dump");
  verify->add_option("--max-vars", max_vars, "Existential variable budget (default 24)");

  auto* restrict_cmd = app.add_subcommand("restrict", "Restrict a formula by existential values");
  restrict_cmd->add_option("formula", family, "QDIMACS file or -")->required();
  restrict_cmd->add_option("assignment", assignment, "var=0|1,...")->required();
  restrict_cmd->add_flag("--normalize", normalize_out, "Renumber densely and sort clauses");
  restrict_cmd->add_option("-o", output, "Output file");
  restrict_cmd->add_option("--format", format)->check(CLI::IsMember({"qdimacs"}));

  auto* oracle = app.add_subcommand("oracle", "Evaluate a small QBF by brute force");
  oracle->add_option("formula", family, "QDIMACS file or -")->required();
  oracle->add_option("--max-vars", max_vars, "Variable budget (default 24)");

  auto* stats = app.add_subcommand("stats", "Proof statistics");
  files(stats, "[FORMULA] [PROOF]");
  stats->add_option("--format", format)->check(CLI::IsMember({"text", "stats-kv"}));

  auto* circuit = app.add_subcommand("export-circuit", "Export the strategy as a circuit");
  files(circuit, "[FORMULA] [PROOF]");
  circuit->add_option("-o", output, "Output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) {
      const auto f = family_formula(family, n);
      const auto text = normalize_out ? write_qdimacs(normalize(f))
                                      : write_qdimacs(f, header_comments(family, n, f));
      write_output(output, text, out);
      return kOk;
    }

    if (prove->parsed()) {
      BuiltProof built = family == "example" ? build_example() : [&] {
        auto id = parse_family(family);
        if (!id) throw UsageError("unknown family '" + family + "'");
        return build_for(*id, n, mode);
      }();
      write_output(output, write_proof(built.proof), out);
      return kOk;
    }

    if (check->parsed()) {
      auto io = load_inputs(positional, in);
      auto cfg = CheckerConfig::from_mode(mode);
      cfg.require_regular = regular;
      cfg.forbid_tautologies = forbid_taut;
      if (run_invariant) {
        cfg.semantic_invariant = InvariantMode::kExhaustive;
        if (max_vars) cfg.invariant_budget = max_vars;
      }
      const auto report = check_proof(io.formula, io.proof, cfg);
      if (format != "stats-kv") print_report_text(out, report);
      print_kv(out, report_kv(report));
      return report.valid ? kOk : kCheckFailed;
    }

    if (invariant->parsed()) {
      auto io = load_inputs(positional, in);
      auto d = replay(io.formula, io.proof, CheckerConfig::with_both_weakenings());
      if (!d.report.valid) {
        out << "rejected: " << d.report.message << '\n';
        print_kv(out, {{"status", "rejected"}, {"failed_step", std::to_string(*d.report.failed_step)}});
        return kCheckFailed;
      }
      auto inv = check_line_invariant(io.formula, *d.store, d.lines,
                                      max_vars ? max_vars : kDefaultInvariantBudget);
      if (inv.holds) {
        out << "line invariant holds on all " << d.lines.size() << " lines\n";
        print_kv(out, {{"status", "ok"}, {"invariant", "1"}, {"lines", std::to_string(d.lines.size())}});
        return kOk;
      }
      out << "line invariant fails at step " << *inv.failed_line + 1 << " under "
          << assignment_text(io.formula, *inv.counterexample) << '\n';
      print_kv(out, {{"status", "failed"},
                     {"property", "line-invariant"},
                     {"invariant", "0"},
                     {"failed_step", std::to_string(*inv.failed_line + 1)}});
      return kCheckFailed;
    }

    if (verify->parsed()) {
      Pcnf f;
      Strategy s;
      if (!maps_in.empty()) {
        if (positional.size() != 1) throw UsageError("--maps needs exactly one FORMULA");
        f = parse_qdimacs(read_all(positional[0], in));
        auto store = std::make_shared<NodeStore>();
        std::istringstream dump(read_all(maps_in, in));
        auto maps = parse_maps(dump, *store);
        s = Strategy{store, std::move(maps)};
      } else {
        auto io = load_inputs(positional, in);
        f = std::move(io.formula);
        auto d = replay(f, io.proof, CheckerConfig::with_both_weakenings());
        if (!d.report.valid || !d.report.refutation) {
          out << "rejected: " << d.report.message << '\n';
          KeyValues kv = {{"status", "rejected"}};
          if (d.report.failed_step) {
            kv.emplace_back("failed_step", std::to_string(*d.report.failed_step));
          } else {
            kv.emplace_back("property", "refutation");
          }
          print_kv(out, kv);
          return kCheckFailed;
        }
        s = extract_strategy(d);
      }
      if (!maps_out.empty()) write_output(maps_out, dump_strategy(s), out);
      auto verdict = check_universal_strategy(f, s, max_vars ? max_vars : kDefaultGameVarBudget);
      if (verdict.winning) {
        out << "strategy wins against every existential assignment\n";
        print_kv(out, {{"status", "ok"}, {"winning", "1"}});
        return kOk;
      }
      out << "strategy loses under " << assignment_text(f, *verdict.counterexample) << '\n';
      print_kv(out, {{"status", "failed"}, {"property", "winning-strategy"}, {"winning", "0"}});
      return kCheckFailed;
    }

    if (restrict_cmd->parsed()) {
      auto f = parse_qdimacs(read_all(family, in));
      auto r = restrict(f, parse_assignment(assignment, f.num_vars()));
      write_output(output, write_qdimacs(normalize_out ? normalize(r) : r), out);
      return kOk;
    }

    if (oracle->parsed()) {
      auto f = parse_qdimacs(read_all(family, in));
      const bool value = eval_qbf(f, max_vars ? max_vars : kDefaultGameVarBudget);
      out << (value ? "true" : "false") << '\n';
      print_kv(out, {{"value", value ? "true" : "false"}});
      return kOk;
    }

    if (stats->parsed()) {
      auto io = load_inputs(positional, in);
      auto d = replay(io.formula, io.proof, CheckerConfig::with_both_weakenings());
      const auto& r = d.report;
      KeyValues kv = report_kv(r);
      kv.emplace(kv.begin(), "formula_clauses", std::to_string(io.formula.matrix().size()));
      kv.emplace(kv.begin(), "formula_vars", std::to_string(io.formula.num_vars()));
      if (r.valid) kv.emplace_back("final_clause_size", std::to_string(d.lines.back().clause.size()));
      if (format != "stats-kv") {
        out << "formula: " << io.formula.num_vars() << " variables, "
            << io.formula.matrix().size() << " clauses\n";
        print_report_text(out, r);
      }
      print_kv(out, kv);
      return r.valid ? kOk : kCheckFailed;
    }

    if (circuit->parsed()) {
      auto io = load_inputs(positional, in);
      write_output(output, export_strategy_circuit(io.formula, io.proof), out);
      return kOk;
    }
  } catch (const BudgetError& e) {
    err << "mres: " << e.what() << " (raise --max-vars to override)\n";
    return kUsage;
  } catch (const Error& e) {
    err << "mres: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "mres: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace mres::cli
