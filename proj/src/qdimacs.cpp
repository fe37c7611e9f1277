#include "mres/qdimacs.hpp"

#include <cctype>
#include <charconv>
#include <iomanip>
#include <limits>
#include <sstream>

namespace mres {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t to_int(std::string_view tok, std::size_t line) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

Pcnf parse_qdimacs(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::int64_t declared_vars = 0;
  std::int64_t declared_clauses = 0;
  std::vector<QuantBlock> prefix;
  std::vector<Clause> matrix;
  std::vector<Lit> pending;
  std::size_t pending_line = 0;

  auto check_var = [&](std::int64_t v, std::size_t ln) {
    if (v == 0 || v > declared_vars || v < -declared_vars) {
      throw ParseError(ln, "variable index " + std::to_string(v) +
                               " outside 1.." + std::to_string(declared_vars));
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "c" || toks[0][0] == 'c') continue;

    if (toks[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate problem line");
      if (toks.size() != 4 || toks[1] != "cnf") {
        throw ParseError(lineno, "malformed problem line (want 'p cnf <vars> <clauses>')");
      }
      declared_vars = to_int(toks[2], lineno);
      declared_clauses = to_int(toks[3], lineno);
      if (declared_vars < 0 || declared_clauses < 0 ||
          declared_vars > std::numeric_limits<std::int32_t>::max()) {
        throw ParseError(lineno, "malformed problem line (negative or oversized count)");
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "missing problem line");

    if (toks[0] == "a" || toks[0] == "e") {
      if (!matrix.empty() || !pending.empty()) {
        throw ParseError(lineno, "quantifier line after clauses");
      }
      if (toks.size() < 2 || toks.back() != "0") {
        throw ParseError(lineno, "unterminated quantifier line");
      }
      QuantBlock block{toks[0] == "a" ? Quantifier::kForall : Quantifier::kExists, {}};
      for (std::size_t i = 1; i + 1 < toks.size(); ++i) {
        auto v = to_int(toks[i], lineno);
        if (v <= 0) throw ParseError(lineno, "quantified variable must be positive");
        check_var(v, lineno);
        block.variables.push_back(Var{static_cast<std::uint32_t>(v)});
      }
      prefix.push_back(std::move(block));
      continue;
    }

    for (auto tok : toks) {
      auto v = to_int(tok, lineno);
      if (v == 0) {
        matrix.emplace_back(std::move(pending));
        pending.clear();
        continue;
      }
      check_var(v, lineno);
      if (pending.empty()) pending_line = lineno;
      pending.push_back(Lit::from_dimacs(static_cast<std::int32_t>(v)));
    }
  }

  if (!have_header) throw ParseError(lineno, "missing problem line");
  if (!pending.empty()) throw ParseError(pending_line, "unterminated clause");
  if (static_cast<std::int64_t>(matrix.size()) != declared_clauses) {
    throw ParseError(lineno, "problem line declares " + std::to_string(declared_clauses) +
                                 " clauses, found " + std::to_string(matrix.size()));
  }
  try {
    return Pcnf(static_cast<std::uint32_t>(declared_vars), std::move(prefix),
                std::move(matrix));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(lineno, e.what());
  }
}

Pcnf parse_qdimacs(std::string_view text) {
  std::istringstream is{std::string(text)};
  return parse_qdimacs(is);
}

std::string write_qdimacs(const Pcnf& f, const std::vector<std::string>& comments) {
  std::ostringstream os;
  for (const auto& c : comments) os << "c " << c << '\n';
  os << "p cnf " << f.num_vars() << ' ' << f.matrix().size() << '\n';
  for (const auto& block : f.prefix()) {
    os << (block.quantifier == Quantifier::kForall ? 'a' : 'e');
    for (Var v : block.variables) os << ' ' << v.id;
    os << " 0\n";
  }
  for (const auto& c : f.matrix()) {
    for (Lit l : c.literals()) os << l.dimacs() << ' ';
    os << "0\n";
  }
  return os.str();
}

std::uint64_t formula_hash(const Pcnf& f) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : write_qdimacs(f)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_hash(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace mres
