#include "mpgen/sexpr.hpp"

#include <cctype>

#include "mpgen/error.hpp"

namespace mpgen {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> forms;
    while (true) {
      skip();
      if (pos_ >= text_.size()) break;
      if (text_[pos_] == ')') fail("unbalanced ')'");
      forms.push_back(read());
    }
    return forms;
  }

 private:
  SExpr read() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    SExpr e;
    e.line = line_;
    char c = text_[pos_];
    if (c == '(') {
      std::size_t open_line = line_;
      ++pos_;
      while (true) {
        skip();
        if (pos_ >= text_.size())
          throw ParseError("line " + std::to_string(open_line) + ": unclosed '('", open_line);
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        e.items.push_back(read());
      }
    } else if (c == '"' || c == '|') {
      e.kind = c == '"' ? SExpr::Kind::kString : SExpr::Kind::kBar;
      ++pos_;
      while (true) {
        if (pos_ >= text_.size()) fail(c == '"' ? "unterminated string" : "unterminated |symbol|");
        char d = text_[pos_++];
        if (d == c) break;
        if (d == '\n') ++line_;
        if (d == '\\' && c == '"' && pos_ < text_.size()) d = text_[pos_++];
        e.text.push_back(d);
      }
    } else {
      e.kind = SExpr::Kind::kSymbol;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == '"' || d == ';') break;
        e.text.push_back(d);
        ++pos_;
      }
    }
    return e;
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("line " + std::to_string(line_) + ": " + msg, line_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text) { return Reader(text).read_all(); }

std::string to_string(const SExpr& e) {
  switch (e.kind) {
    case SExpr::Kind::kSymbol: return e.text;
    case SExpr::Kind::kString: return "\"" + e.text + "\"";
    case SExpr::Kind::kBar: return "|" + e.text + "|";
    case SExpr::Kind::kList: break;
  }
  std::string out = "(";
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i) out += ' ';
    out += to_string(e.items[i]);
  }
  return out + ")";
}

}  // namespace mpgen
