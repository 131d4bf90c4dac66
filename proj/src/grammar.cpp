#include "mpgen/grammar.hpp"

#include <algorithm>
#include <sstream>

#include "mpgen/error.hpp"

namespace mpgen {

LatticeExpr LatticeExpr::seq(std::vector<LatticeExpr> children) {
  LatticeExpr e;
  e.kind = Kind::kSeq;
  e.children = std::move(children);
  return e;
}

LatticeExpr LatticeExpr::alt(std::vector<LatticeExpr> children) {
  LatticeExpr e;
  e.kind = Kind::kOr;
  e.children = std::move(children);
  return e;
}

LatticeExpr LatticeExpr::wrd(std::string word) {
  LatticeExpr e;
  e.kind = Kind::kWrd;
  e.word = std::move(word);
  return e;
}

LatticeExpr LatticeExpr::eps() { return LatticeExpr{}; }

LatticeExpr LatticeExpr::slot_ref(std::string slot, std::string category) {
  LatticeExpr e;
  e.kind = Kind::kSlot;
  e.slot = std::move(slot);
  e.category = std::move(category);
  return e;
}

const Slot* GrammarRule::rest_slot() const {
  for (const Slot& s : lhs)
    if (s.role == kRestRole) return &s;
  return nullptr;
}

std::string GrammarRule::describe() const {
  std::string out = "rule (";
  for (std::size_t i = 0; i < lhs.size(); ++i) out += (i ? " " : "") + lhs[i].role;
  out += ")";
  if (line) out += " at line " + std::to_string(line);
  return out;
}

void Grammar::declare_category(std::string category) { categories_.insert(std::move(category)); }

void Grammar::declare_inflection(const std::string& category, PartOfSpeech pos, std::vector<Feature> features) {
  if (!has_category(category)) throw ParseError("inflect: undeclared category '" + category + "'", 0);
  for (Feature f : features)
    if (!feature_applies(pos, f))
      throw ParseError("inflect: feature " + std::string(feature_name(f)) + " does not apply to this part of speech", 0);
  inflections_[{category, pos}] = std::move(features);
}

std::vector<Feature> Grammar::inflection(const std::string& category, PartOfSpeech pos) const {
  auto it = inflections_.find({category, pos});
  if (it == inflections_.end()) return {Feature::kCitation};
  return it->second;
}

void Grammar::check_expr(const LatticeExpr& e, const std::set<std::string>& vars, const GrammarRule& rule) const {
  auto fail = [&](const std::string& msg) { throw ParseError(rule.describe() + ": " + msg, rule.line); };
  switch (e.kind) {
    case LatticeExpr::Kind::kSeq:
    case LatticeExpr::Kind::kOr:
      if (e.children.empty()) fail("empty seq/or");
      for (const auto& c : e.children) check_expr(c, vars, rule);
      break;
    case LatticeExpr::Kind::kWrd:
      try {
        Label::word(e.word);
      } catch (const LatticeError& err) {
        fail(err.what());
      }
      break;
    case LatticeExpr::Kind::kEpsilon: break;
    case LatticeExpr::Kind::kSlot:
      if (!vars.count(e.slot)) fail("slot '" + e.slot + "' is not bound on the left-hand side");
      if (!has_category(e.category)) fail("undeclared category '" + e.category + "'");
      break;
  }
}

void Grammar::add_rule(GrammarRule rule) {
  auto fail = [&](const std::string& msg) { throw ParseError(rule.describe() + ": " + msg, rule.line); };
  std::set<std::string> vars, roles;
  std::size_t rest = 0;
  for (const Slot& s : rule.lhs) {
    if (!vars.insert(s.var).second) fail("duplicate slot variable '" + s.var + "'");
    if (!roles.insert(s.role).second) fail("duplicate role " + s.role);
    if (s.role == kRestRole) ++rest;
  }
  if (rest == rule.lhs.size()) fail("a rule must name at least one role besides :rest");
  if (rule.rhs.empty()) fail("no right-hand side");
  for (const auto& alt : rule.rhs) {
    if (!has_category(alt.category)) fail("undeclared category '" + alt.category + "'");
    check_expr(alt.expr, vars, rule);
  }
  rules_.push_back(std::move(rule));
}

void Lexicon::add(std::string concept_name, std::vector<LexiconSense> senses) {
  if (senses.empty()) throw ParseError("lexicon: no senses for |" + concept_name + "|", 0);
  if (entries_.count(concept_name)) throw ParseError("lexicon: duplicate entry |" + concept_name + "|", 0);
  entries_.emplace(std::move(concept_name), std::move(senses));
}

const std::vector<LexiconSense>* Lexicon::find(std::string_view concept_name) const {
  auto it = entries_.find(concept_name);
  return it == entries_.end() ? nullptr : &it->second;
}

const Lattice* EStructure::find(std::string_view category) const {
  for (const auto& [c, l] : entries_)
    if (c == category) return &l;
  return nullptr;
}

void EStructure::merge(const std::string& category, Lattice lattice) {
  for (auto& [c, l] : entries_)
    if (c == category) {
      Lattice both[] = {std::move(l), std::move(lattice)};
      l = or_(both);
      return;
    }
  entries_.emplace_back(category, std::move(lattice));
}

std::optional<RuleMatch> find_match(const SemanticNode& input, const std::vector<GrammarRule>& rules,
                                    std::size_t from) {
  for (std::size_t i = from; i < rules.size(); ++i) {
    const GrammarRule& rule = rules[i];
    RuleMatch m;
    m.rule = &rule;
    m.rule_index = i;
    bool ok = true;
    std::set<std::string> used;
    for (const Slot& s : rule.lhs) {
      if (s.role == kRestRole) continue;
      const Role* r = input.find_role(s.role);
      if (!r) {
        ok = false;
        break;
      }
      used.insert(s.role);
    }
    if (!ok) continue;
    for (const Role& r : input.roles)
      if (!used.count(r.keyword)) m.rest.push_back(r);
    if (!m.rest.empty() && !rule.rest_slot()) continue;
    for (const Slot& s : rule.lhs) {
      if (s.role == kRestRole) {
        m.bindings.emplace_back(s.var, SemanticValue(SemanticNode{input.var, input.concept_name, m.rest}));
      } else {
        m.bindings.emplace_back(s.var, input.find_role(s.role)->value);
      }
    }
    return m;
  }
  return std::nullopt;
}

namespace {

std::string role_set(const SemanticNode& node) {
  std::string out = "{";
  for (std::size_t i = 0; i < node.roles.size(); ++i) out += (i ? ", " : "") + node.roles[i].keyword;
  return out + "}";
}

}  // namespace

RuleMatch match_rule(const SemanticNode& input, const std::vector<GrammarRule>& rules) {
  auto m = find_match(input, rules);
  if (!m)
    throw RealizationError("no grammar rule matches " + input.var + " / |" + input.concept_name + "| with roles " +
                           role_set(input));
  return *m;
}

std::optional<Lattice> eval_expr(const LatticeExpr& expr, const std::map<std::string, EStructure>& slots) {
  switch (expr.kind) {
    case LatticeExpr::Kind::kWrd: return wrd(expr.word);
    case LatticeExpr::Kind::kEpsilon: return epsilon();
    case LatticeExpr::Kind::kSlot: {
      auto it = slots.find(expr.slot);
      if (it == slots.end()) return std::nullopt;
      const Lattice* l = it->second.find(expr.category);
      if (!l) return std::nullopt;
      return *l;
    }
    case LatticeExpr::Kind::kSeq: {
      std::vector<Lattice> parts;
      for (const auto& c : expr.children) {
        auto l = eval_expr(c, slots);
        if (!l) return std::nullopt;
        parts.push_back(std::move(*l));
      }
      if (parts.size() == 1) return std::move(parts.front());
      return seq(parts);
    }
    case LatticeExpr::Kind::kOr: {
      std::vector<Lattice> alts;
      for (const auto& c : expr.children)
        if (auto l = eval_expr(c, slots)) alts.push_back(std::move(*l));
      if (alts.empty()) return std::nullopt;
      if (alts.size() == 1) return std::move(alts.front());
      return or_(alts);
    }
  }
  return std::nullopt;
}

Realizer::Realizer(const Grammar& grammar, const Lexicon& lexicon, const ExceptionTable& exceptions)
    : grammar_(grammar), lexicon_(lexicon), exceptions_(exceptions) {
  for (const auto& [concept_name, senses] : lexicon.entries())
    for (const auto& sense : senses)
      if (!grammar.has_category(sense.category))
        throw RealizationError("lexicon entry |" + concept_name + "| uses undeclared category '" + sense.category + "'");
}

EStructure Realizer::leaf_estructure(const std::string& concept_name, bool atom) const {
  const auto* senses = lexicon_.find(concept_name);
  if (!senses)
    throw RealizationError(std::string("no lexicon entry for ") + (atom ? concept_name : "|" + concept_name + "|"));
  EStructure es;
  for (const LexiconSense& sense : *senses) {
    Lattice l = epsilon();
    if (sense.citation.find(' ') != std::string::npos) {
      std::vector<Lattice> words;
      std::istringstream in(sense.citation);
      for (std::string w; in >> w;) words.push_back(wrd(w));
      l = seq(words);
    } else {
      std::vector<std::string> forms;
      for (Feature f : grammar_.inflection(sense.category, sense.pos))
        for (auto& form : inflect_overgen({sense.citation, sense.pos, f}, exceptions_))
          if (std::find(forms.begin(), forms.end(), form) == forms.end()) forms.push_back(std::move(form));
      std::vector<Lattice> alts;
      for (const auto& form : forms) alts.push_back(wrd(form));
      l = alts.size() == 1 ? std::move(alts.front()) : or_(alts);
    }
    es.merge(sense.category, std::move(l));
  }
  return es;
}

EStructure Realizer::build_estructure(const SemanticValue& value) const {
  if (value.is_atom()) return leaf_estructure(value.atom(), true);
  return build_estructure(value.node());
}

EStructure Realizer::build_estructure(const SemanticNode& node) const {
  if (node.roles.empty()) return leaf_estructure(node.concept_name, false);

  const auto& rules = grammar_.rules();
  bool matched = false;
  for (auto m = find_match(node, rules); m; m = find_match(node, rules, m->rule_index + 1)) {
    matched = true;
    std::map<std::string, EStructure> slots;
    for (const auto& [var, value] : m->bindings) slots.emplace(var, build_estructure(value));
    EStructure es;
    for (const RhsAlternative& alt : m->rule->rhs)
      if (auto l = eval_expr(alt.expr, slots)) es.merge(alt.category, std::move(*l));
    if (!es.empty()) return es;
  }
  if (!matched) match_rule(node, rules);  // throws with the role set
  throw RealizationError("every right-hand side failed for " + node.var + " / |" + node.concept_name + "| " +
                         role_set(node));
}

Lattice Realizer::realize(const SemanticNode& node, std::string_view goal) const {
  EStructure es = build_estructure(node);
  const Lattice* l = es.find(goal);
  if (!l) {
    std::string have;
    for (const auto& [c, _] : es.entries()) have += (have.empty() ? "" : ", ") + c;
    throw RealizationError("root " + node.var + " / |" + node.concept_name + "| has no '" + std::string(goal) +
                           "' lattice (has: " + have + ")");
  }
  ValidateOptions options;
  options.allow_epsilon_path = false;
  require_valid(*l, options);
  return *l;
}

}  // namespace mpgen
