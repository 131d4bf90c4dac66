#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mpgen/lattice.hpp"
#include "mpgen/morphology.hpp"
#include "mpgen/semantics.hpp"

namespace mpgen {

inline constexpr std::string_view kRestRole = ":rest";

// Right-hand-side lattice expression: (seq ...), (or ...), (wrd "w"), `*`
// for the empty string, or a slot reference (x1 np).
struct LatticeExpr {
  enum class Kind { kSeq, kOr, kWrd, kEpsilon, kSlot };

  Kind kind = Kind::kEpsilon;
  std::vector<LatticeExpr> children;  // kSeq, kOr
  std::string word;                   // kWrd
  std::string slot;                   // kSlot
  std::string category;               // kSlot

  static LatticeExpr seq(std::vector<LatticeExpr> children);
  static LatticeExpr alt(std::vector<LatticeExpr> children);
  static LatticeExpr wrd(std::string word);
  static LatticeExpr eps();
  static LatticeExpr slot_ref(std::string slot, std::string category);
};

struct Slot {
  std::string var;
  std::string role;  // canonical, e.g. ":agent" or ":rest"
};

struct RhsAlternative {
  std::string category;
  LatticeExpr expr;
};

struct GrammarRule {
  std::vector<Slot> lhs;
  std::vector<RhsAlternative> rhs;
  std::size_t line = 0;  // source line, for messages

  const Slot* rest_slot() const;
  std::string describe() const;
};

class Grammar {
 public:
  // Top-level forms: (categories c ...), (inflect <cat> <pos> <feature> ...),
  // and rules ((x1 :agent) (x2 :patient) (x3 :rest) -> (s <expr>) ...).
  static Grammar parse(std::string_view text);

  void declare_category(std::string category);
  void declare_inflection(const std::string& category, PartOfSpeech pos, std::vector<Feature> features);
  // Checks slot/role distinctness, category declarations and slot references.
  void add_rule(GrammarRule rule);

  bool has_category(std::string_view c) const { return categories_.count(std::string(c)) != 0; }
  const std::vector<GrammarRule>& rules() const { return rules_; }
  // Features a lexicon sense of (category, pos) is expanded into; citation
  // only when nothing was declared.
  std::vector<Feature> inflection(const std::string& category, PartOfSpeech pos) const;

 private:
  void check_expr(const LatticeExpr& e, const std::set<std::string>& vars, const GrammarRule& rule) const;

  std::set<std::string> categories_;
  std::map<std::pair<std::string, PartOfSpeech>, std::vector<Feature>> inflections_;
  std::vector<GrammarRule> rules_;
};

struct LexiconSense {
  std::string category;
  std::string citation;  // may hold several space-separated words for fixed senses
  PartOfSpeech pos = PartOfSpeech::kFixed;
};

class Lexicon {
 public:
  // One form per concept: (|concept| (<cat> "<citation>" <pos>) ...). Bare
  // symbols name atomic fillers such as SHE.
  static Lexicon parse(std::string_view text);

  void add(std::string concept_name, std::vector<LexiconSense> senses);
  const std::vector<LexiconSense>* find(std::string_view concept_name) const;
  const std::map<std::string, std::vector<LexiconSense>, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::vector<LexiconSense>, std::less<>> entries_;
};

// Category -> lattice, categories distinct, in first-produced order.
class EStructure {
 public:
  const Lattice* find(std::string_view category) const;
  // Adds a lattice; a category already present is merged with a final or.
  void merge(const std::string& category, Lattice lattice);
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::pair<std::string, Lattice>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, Lattice>> entries_;
};

struct RuleMatch {
  const GrammarRule* rule = nullptr;
  std::size_t rule_index = 0;
  std::vector<std::pair<std::string, SemanticValue>> bindings;  // slot var -> filler, lhs order
  std::vector<Role> rest;  // input roles not named by the rule
};

// First rule at or after `from` whose non-rest roles are all present on
// `input`. A rule without a :rest slot only matches when it names every role.
std::optional<RuleMatch> find_match(const SemanticNode& input, const std::vector<GrammarRule>& rules,
                                    std::size_t from = 0);

// As find_match from the top; throws RealizationError naming the role set.
RuleMatch match_rule(const SemanticNode& input, const std::vector<GrammarRule>& rules);

// Evaluates a right-hand side against slot e-structures. nullopt is the
// "fail" value: a missing category, a failing seq element, or an or whose
// every branch failed.
std::optional<Lattice> eval_expr(const LatticeExpr& expr, const std::map<std::string, EStructure>& slots);

class Realizer {
 public:
  Realizer(const Grammar& grammar, const Lexicon& lexicon, const ExceptionTable& exceptions);

  EStructure build_estructure(const SemanticNode& node) const;
  EStructure build_estructure(const SemanticValue& value) const;
  // Goal lattice at the root; the result never admits an empty sentence.
  Lattice realize(const SemanticNode& node, std::string_view goal = "s") const;

 private:
  EStructure leaf_estructure(const std::string& concept_name, bool atom) const;

  const Grammar& grammar_;
  const Lexicon& lexicon_;
  const ExceptionTable& exceptions_;
};

}  // namespace mpgen
