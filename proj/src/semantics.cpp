#include "mpgen/semantics.hpp"

#include <cctype>
#include <unordered_set>

#include "mpgen/error.hpp"

namespace mpgen {

SemanticValue::SemanticValue(SemanticNode node)
    : value_(std::make_shared<const SemanticNode>(std::move(node))) {}

bool operator==(const SemanticValue& a, const SemanticValue& b) {
  if (a.is_atom() != b.is_atom()) return false;
  if (a.is_atom()) return a.atom() == b.atom();
  return a.node() == b.node();
}

const Role* SemanticNode::find_role(std::string_view keyword) const {
  for (const Role& r : roles)
    if (r.keyword == keyword) return &r;
  return nullptr;
}

std::string canonical_role(std::string_view keyword) {
  std::string out;
  if (keyword.empty() || keyword.front() != ':') out.push_back(':');
  for (char c : keyword)
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

namespace {

bool is_delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
         c == '|' || c == '/';
}

class SplParser {
 public:
  explicit SplParser(std::string_view text) : text_(text) {}

  SemanticNode parse_document() {
    skip_space();
    if (at_end()) fail("empty input");
    if (peek() != '(') fail("expected '('");
    SemanticNode node = parse_node();
    skip_space();
    if (!at_end()) {
      if (peek() == ')') fail("unbalanced ')'");
      fail("trailing input after expression");
    }
    return node;
  }

 private:
  SemanticNode parse_node() {
    expect('(');
    SemanticNode node;
    node.var = parse_symbol("instance variable");
    skip_space();
    if (at_end() || peek() != '/') fail("missing '/' after variable '" + node.var + "'");
    ++pos_;
    skip_space();
    node.concept_name = parse_concept();

    std::unordered_set<std::string> seen;
    while (true) {
      skip_space();
      if (at_end()) fail("unbalanced '(': expression is not closed");
      if (peek() == ')') {
        ++pos_;
        break;
      }
      if (peek() != ':') fail("expected role keyword or ')'");
      std::size_t role_pos = pos_;
      std::string keyword = canonical_role(parse_symbol("role keyword"));
      if (keyword.size() < 2) fail("empty role keyword", role_pos);
      if (!seen.insert(keyword).second)
        fail("duplicate role " + keyword + " on instance " + node.var, role_pos);
      skip_space();
      if (at_end()) fail("missing value for role " + keyword);
      if (peek() == '(') {
        node.roles.push_back(Role{keyword, SemanticValue(parse_node())});
      } else if (peek() == ')') {
        fail("missing value for role " + keyword);
      } else {
        node.roles.push_back(Role{keyword, SemanticValue(parse_symbol("role value"))});
      }
    }
    return node;
  }

  std::string parse_concept() {
    if (at_end()) fail("missing concept");
    if (peek() != '|') return parse_symbol("concept");
    std::size_t start = pos_++;
    std::size_t close = text_.find('|', pos_);
    if (close == std::string_view::npos) fail("unterminated concept name", start);
    std::string name(text_.substr(pos_, close - pos_));
    pos_ = close + 1;
    if (name.find_first_not_of(" \t\r\n") == std::string::npos)
      fail("empty concept name", start);
    return name;
  }

  std::string parse_symbol(const char* what) {
    skip_space();
    std::size_t start = pos_;
    while (!at_end() && !is_delimiter(peek())) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    throw ParseError("SPL: " + msg + " at offset " + std::to_string(at), at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void render(const SemanticNode& node, std::string& out) {
  out += '(';
  out += node.var;
  out += " / |";
  out += node.concept_name;
  out += '|';
  for (const Role& r : node.roles) {
    out += ' ';
    out += r.keyword;
    out += ' ';
    if (r.value.is_atom())
      out += r.value.atom();
    else
      render(r.value.node(), out);
  }
  out += ')';
}

}  // namespace

SemanticNode parse_spl(std::string_view text) { return SplParser(text).parse_document(); }

std::string render_spl(const SemanticNode& node) {
  std::string out;
  render(node, out);
  return out;
}

}  // namespace mpgen
