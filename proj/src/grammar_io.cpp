#include <algorithm>
#include <cctype>

#include "mpgen/error.hpp"
#include "mpgen/grammar.hpp"
#include "mpgen/sexpr.hpp"

namespace mpgen {

namespace {

[[noreturn]] void fail(const SExpr& at, const std::string& msg) {
  throw ParseError("line " + std::to_string(at.line) + ": " + msg, at.line);
}

bool is_or_keyword(const SExpr& e) {
  if (e.kind != SExpr::Kind::kSymbol) return false;
  std::string lower = e.text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower == "or" || lower == "*or*";
}

const std::string& symbol(const SExpr& e, const char* what) {
  if (e.kind != SExpr::Kind::kSymbol) fail(e, std::string("expected ") + what + ", got " + to_string(e));
  return e.text;
}

LatticeExpr parse_expr(const SExpr& e, const std::set<std::string>& vars) {
  if (e.is_symbol("*")) return LatticeExpr::eps();
  if (!e.is_list() || e.items.empty()) fail(e, "expected a lattice expression, got " + to_string(e));
  const SExpr& head = e.items.front();
  const std::string& op = symbol(head, "operator or slot");

  if (op == "seq" || is_or_keyword(head)) {
    if (e.items.size() < 2) fail(e, "'" + op + "' needs at least one argument");
    std::vector<LatticeExpr> children;
    for (std::size_t i = 1; i < e.items.size(); ++i) children.push_back(parse_expr(e.items[i], vars));
    return op == "seq" ? LatticeExpr::seq(std::move(children)) : LatticeExpr::alt(std::move(children));
  }
  if (op == "wrd") {
    if (e.items.size() != 2 || e.items[1].is_list()) fail(e, "expected (wrd \"word\")");
    return LatticeExpr::wrd(e.items[1].text);
  }
  if (vars.count(op)) {
    if (e.items.size() != 2) fail(e, "expected (" + op + " <category>)");
    const SExpr& cat = e.items[1];
    if (cat.is_list()) {
      // (x2 (*OR* inf inf-raise)) is shorthand for (or (x2 inf) (x2 inf-raise)).
      if (cat.items.size() < 2 || !is_or_keyword(cat.items.front())) fail(cat, "expected (*OR* <category> ...)");
      std::vector<LatticeExpr> refs;
      for (std::size_t i = 1; i < cat.items.size(); ++i)
        refs.push_back(LatticeExpr::slot_ref(op, symbol(cat.items[i], "category")));
      return LatticeExpr::alt(std::move(refs));
    }
    return LatticeExpr::slot_ref(op, symbol(cat, "category"));
  }
  fail(head, "unknown operator or unbound slot '" + op + "'");
}

GrammarRule parse_rule(const SExpr& form) {
  GrammarRule rule;
  rule.line = form.line;
  auto arrow = std::find_if(form.items.begin(), form.items.end(), [](const SExpr& e) { return e.is_symbol("->"); });
  if (arrow == form.items.end()) fail(form, "rule without '->'");
  std::set<std::string> vars;
  for (auto it = form.items.begin(); it != arrow; ++it) {
    if (!it->is_list() || it->items.size() != 2) fail(*it, "expected (<slot> :<role>)");
    Slot s{symbol(it->items[0], "slot variable"), canonical_role(symbol(it->items[1], "role keyword"))};
    if (it->items[1].text.empty() || it->items[1].text.front() != ':') fail(*it, "role keywords start with ':'");
    vars.insert(s.var);
    rule.lhs.push_back(std::move(s));
  }
  for (auto it = arrow + 1; it != form.items.end(); ++it) {
    if (!it->is_list() || it->items.size() != 2) fail(*it, "expected (<category> <expression>)");
    rule.rhs.push_back(RhsAlternative{symbol(it->items[0], "category"), parse_expr(it->items[1], vars)});
  }
  return rule;
}

}  // namespace

Grammar Grammar::parse(std::string_view text) {
  std::vector<SExpr> forms = read_sexprs(text);
  Grammar g;
  // Declarations first so rules may precede them in the file.
  for (const SExpr& f : forms) {
    if (!f.is_list() || f.items.empty()) fail(f, "expected a list form");
    if (f.items.front().is_symbol("categories")) {
      for (std::size_t i = 1; i < f.items.size(); ++i) g.declare_category(symbol(f.items[i], "category"));
    }
  }
  for (const SExpr& f : forms) {
    const SExpr& head = f.items.front();
    if (head.is_symbol("categories")) continue;
    if (head.is_symbol("inflect")) {
      if (f.items.size() < 4) fail(f, "expected (inflect <category> <pos> <feature> ...)");
      const std::string& cat = symbol(f.items[1], "category");
      auto pos = parse_pos(symbol(f.items[2], "part of speech"));
      if (!pos) fail(f.items[2], "unknown part of speech '" + f.items[2].text + "'");
      std::vector<Feature> features;
      for (std::size_t i = 3; i < f.items.size(); ++i) {
        auto feat = parse_feature(symbol(f.items[i], "feature"));
        if (!feat) fail(f.items[i], "unknown feature '" + f.items[i].text + "'");
        features.push_back(*feat);
      }
      try {
        g.declare_inflection(cat, *pos, std::move(features));
      } catch (const ParseError& e) {
        fail(f, e.what());
      }
      continue;
    }
    if (!head.is_list()) fail(f, "unknown top-level form '" + to_string(head) + "'");
    g.add_rule(parse_rule(f));
  }
  return g;
}

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lex;
  for (const SExpr& f : read_sexprs(text)) {
    if (!f.is_list() || f.items.size() < 2) fail(f, "expected (|concept| (<cat> \"<citation>\" <pos>) ...)");
    const SExpr& key = f.items.front();
    if (key.kind != SExpr::Kind::kBar && key.kind != SExpr::Kind::kSymbol) fail(key, "expected a concept name");
    if (key.text.empty()) fail(key, "empty concept name");
    std::vector<LexiconSense> senses;
    for (std::size_t i = 1; i < f.items.size(); ++i) {
      const SExpr& s = f.items[i];
      if (!s.is_list() || s.items.size() != 3 || s.items[1].kind != SExpr::Kind::kString)
        fail(s, "expected (<cat> \"<citation>\" <pos>)");
      auto pos = parse_pos(symbol(s.items[2], "part of speech"));
      if (!pos) fail(s.items[2], "unknown part of speech '" + s.items[2].text + "'");
      const std::string& citation = s.items[1].text;
      if (citation.find_first_not_of(' ') == std::string::npos) fail(s, "empty citation form");
      if (citation.find(' ') != std::string::npos && *pos != PartOfSpeech::kFixed)
        fail(s, "multi-word citation forms must be 'fixed'");
      senses.push_back(LexiconSense{symbol(s.items[0], "category"), citation, *pos});
    }
    try {
      lex.add(key.text, std::move(senses));
    } catch (const ParseError& e) {
      fail(f, e.what());
    }
  }
  return lex;
}

}  // namespace mpgen
