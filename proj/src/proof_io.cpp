#include "mres/proof_io.hpp"

#include <charconv>
#include <sstream>

#include "mres/qdimacs.hpp"

namespace mres {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t to_int(std::string_view tok, std::size_t line) {
  std::int64_t v = 0;
  const char* b = tok.data();
  const char* e = b + tok.size();
  if (!tok.empty() && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) {
    throw ProofParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return v;
}

std::size_t to_id(std::string_view tok, std::size_t line) {
  auto v = to_int(tok, line);
  if (v < 1) throw ProofParseError(line, "ids and indices are 1-based, got " + std::string(tok));
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string write_proof(const Proof& proof) {
  std::ostringstream os;
  os << "p mresproof " << format_hash(proof.formula_hash) << ' ' << proof.steps.size() << '\n';
  for (const auto& c : proof.comments) os << "c " << c << '\n';
  for (std::size_t k = 0; k < proof.steps.size(); ++k) {
    const std::size_t id = k + 1;
    std::visit(Overloaded{[&](const AxiomStep& s) { os << "A " << id << ' ' << s.clause + 1; },
                          [&](const ResolveStep& s) {
                            os << "R " << id << ' ' << s.left + 1 << ' ' << s.right + 1 << ' '
                               << s.pivot.id;
                          },
                          [&](const WeakenExistStep& s) {
                            os << "WE " << id << ' ' << s.source + 1 << ' ' << s.lit.dimacs();
                          },
                          [&](const WeakenStrategyStep& s) {
                            os << "WF " << id << ' ' << s.source + 1 << ' ' << s.universal.id
                               << ' ' << (s.value ? 1 : 0);
                          }},
               proof.steps[k]);
    os << '\n';
  }
  return os.str();
}

Proof parse_proof(std::istream& in) {
  Proof proof;
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t declared = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    auto toks = split_ws(raw);
    if (toks.empty()) continue;
    const auto kind = toks[0];
    if (kind == "c") {
      auto pos = raw.find('c');
      std::string text = raw.substr(pos + 1);
      if (!text.empty() && text.front() == ' ') text.erase(0, 1);
      while (!text.empty() && (text.back() == '\r' || text.back() == ' ')) text.pop_back();
      proof.comments.push_back(std::move(text));
      continue;
    }
    if (kind == "p") {
      if (have_header) throw ProofParseError(line_no, "duplicate header");
      if (!proof.steps.empty()) throw ProofParseError(line_no, "header after steps");
      if (toks.size() != 4 || toks[1] != "mresproof") {
        throw ProofParseError(line_no, "expected 'p mresproof <hash> <#steps>'");
      }
      std::uint64_t h = 0;
      auto [p, ec] = std::from_chars(toks[2].data(), toks[2].data() + toks[2].size(), h, 16);
      if (ec != std::errc() || p != toks[2].data() + toks[2].size()) {
        throw ProofParseError(line_no, "malformed formula hash");
      }
      proof.formula_hash = h;
      auto count = to_int(toks[3], line_no);
      if (count < 0) throw ProofParseError(line_no, "negative step count");
      declared = static_cast<std::size_t>(count);
      have_header = true;
      continue;
    }
    if (!have_header) throw ProofParseError(line_no, "step before header");

    auto expect = [&](std::size_t n) {
      if (toks.size() != n) {
        throw ProofParseError(line_no, "'" + std::string(kind) + "' takes " +
                                           std::to_string(n - 1) + " fields");
      }
    };
    auto earlier = [&](std::string_view tok) {
      auto ref = to_id(tok, line_no);
      if (ref > proof.steps.size()) {
        throw ProofParseError(line_no, "reference to step " + std::to_string(ref) +
                                           " which does not precede it");
      }
      return ref - 1;
    };
    if (toks.size() < 2) throw ProofParseError(line_no, "missing step id");
    const auto id = to_id(toks[1], line_no);
    if (id != proof.steps.size() + 1) {
      throw ProofParseError(line_no, "expected step id " + std::to_string(proof.steps.size() + 1) +
                                         ", got " + std::to_string(id));
    }

    if (kind == "A") {
      expect(3);
      proof.steps.push_back(AxiomStep{to_id(toks[2], line_no) - 1});
    } else if (kind == "R") {
      expect(5);
      auto left = earlier(toks[2]);
      auto right = earlier(toks[3]);
      auto pivot = to_id(toks[4], line_no);
      proof.steps.push_back(ResolveStep{left, right, Var{static_cast<std::uint32_t>(pivot)}});
    } else if (kind == "WE") {
      expect(4);
      auto src = earlier(toks[2]);
      auto lit = to_int(toks[3], line_no);
      if (lit == 0) throw ProofParseError(line_no, "literal 0");
      proof.steps.push_back(WeakenExistStep{src, Lit::from_dimacs(static_cast<int>(lit))});
    } else if (kind == "WF") {
      expect(5);
      auto src = earlier(toks[2]);
      auto u = to_id(toks[3], line_no);
      auto b = to_int(toks[4], line_no);
      if (b != 0 && b != 1) throw ProofParseError(line_no, "strategy value must be 0 or 1");
      proof.steps.push_back(
          WeakenStrategyStep{src, Var{static_cast<std::uint32_t>(u)}, b == 1});
    } else {
      throw ProofParseError(line_no, "unknown step kind '" + std::string(kind) + "'");
    }
  }
  if (!have_header) throw ProofParseError(line_no, "missing 'p mresproof' header");
  if (proof.steps.size() != declared) {
    throw ProofParseError(line_no, "header declares " + std::to_string(declared) +
                                       " steps, found " + std::to_string(proof.steps.size()));
  }
  return proof;
}

Proof parse_proof(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_proof(in);
}

std::string family_directive(const std::string& family, std::size_t n) {
  return "family " + family + " " + std::to_string(n);
}

std::optional<FamilyDirective> find_family_directive(const Proof& proof) {
  for (const auto& c : proof.comments) {
    auto toks = split_ws(c);
    if (toks.size() != 3 || toks[0] != "family") continue;
    std::size_t n = 0;
    auto [p, ec] = std::from_chars(toks[2].data(), toks[2].data() + toks[2].size(), n);
    if (ec != std::errc() || p != toks[2].data() + toks[2].size()) continue;
    return FamilyDirective{std::string(toks[1]), n};
  }
  return std::nullopt;
}

}  // namespace mres
