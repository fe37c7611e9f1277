#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>

#include "mres/calculus.hpp"

namespace mres {

/// Malformed proof text; carries the 1-based line number.
class ProofParseError : public Error {
 public:
  ProofParseError(std::size_t line, const std::string& what)
      : Error("proof line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Writes the header, the stored comments and one line per step.
///
///   p mresproof <hash> <#steps>
///   A <id> <clause>
///   R <id> <left> <right> <pivot>
///   WE <id> <src> <+-lit>
///   WF <id> <src> <u> <0|1>
///
/// Ids and clause indices are 1-based.
std::string write_proof(const Proof& proof);

Proof parse_proof(std::istream& in);
Proof parse_proof(std::string_view text);

/// Family directive stored as a comment, `family <name> <n>`.
struct FamilyDirective {
  std::string family;
  std::size_t n = 0;
};

std::optional<FamilyDirective> find_family_directive(const Proof& proof);
std::string family_directive(const std::string& family, std::size_t n);

}  // namespace mres
