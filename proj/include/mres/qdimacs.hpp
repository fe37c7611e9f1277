#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "mres/qbf.hpp"

namespace mres {

/// Error raised on malformed QDIMACS input; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Pcnf parse_qdimacs(std::istream& in);
Pcnf parse_qdimacs(std::string_view text);

/// Serialises `f`.  Each entry of `comments` becomes a `c ` line before the
/// problem line.
std::string write_qdimacs(const Pcnf& f,
                          const std::vector<std::string>& comments = {});

/// FNV-1a hash of the comment-free serialisation.
std::uint64_t formula_hash(const Pcnf& f);
std::string format_hash(std::uint64_t h);

}  // namespace mres
