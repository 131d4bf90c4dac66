#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mpgen {

// Minimal s-expression tree for the grammar and lexicon files.
// `;` starts a comment that runs to the end of the line.
struct SExpr {
  enum class Kind { kList, kSymbol, kString, kBar };  // kBar: |...| symbol

  Kind kind = Kind::kList;
  std::string text;  // symbol/string/bar contents, unquoted
  std::vector<SExpr> items;
  std::size_t line = 0;

  bool is_list() const { return kind == Kind::kList; }
  bool is_symbol(std::string_view s) const { return kind == Kind::kSymbol && text == s; }
  bool is_atom() const { return kind != Kind::kList; }
};

// Reads every top-level form. Throws ParseError with a line number.
std::vector<SExpr> read_sexprs(std::string_view text);

std::string to_string(const SExpr& e);

}  // namespace mpgen
