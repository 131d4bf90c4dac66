#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace mpgen {

struct SemanticNode;

// A role filler: either a nested instance or a bare symbol such as SHE.
class SemanticValue {
 public:
  explicit SemanticValue(std::string atom) : value_(std::move(atom)) {}
  explicit SemanticValue(SemanticNode node);

  bool is_atom() const { return std::holds_alternative<std::string>(value_); }
  const std::string& atom() const { return std::get<std::string>(value_); }
  const SemanticNode& node() const {
    return *std::get<std::shared_ptr<const SemanticNode>>(value_);
  }

  friend bool operator==(const SemanticValue& a, const SemanticValue& b);

 private:
  std::variant<std::string, std::shared_ptr<const SemanticNode>> value_;
};

struct Role {
  std::string keyword;  // canonical lower case, leading ':' included
  SemanticValue value;

  friend bool operator==(const Role&, const Role&) = default;
};

struct SemanticNode {
  std::string var;
  std::string concept_name;  // without the surrounding bars
  std::vector<Role> roles;

  const Role* find_role(std::string_view keyword) const;

  friend bool operator==(const SemanticNode&, const SemanticNode&) = default;
};

// Lower-cases a role keyword; adds the leading ':' if it is missing.
std::string canonical_role(std::string_view keyword);

// Parses one `(var / |concept| :role value ...)` expression. Throws
// ParseError carrying the byte offset of the problem.
SemanticNode parse_spl(std::string_view text);

std::string render_spl(const SemanticNode& node);

}  // namespace mpgen
