#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mpgen {

enum class PartOfSpeech { kNoun, kVerb, kFixed };
enum class Feature { kCitation, kPlural, kThirdSingular, kPast, kPastParticiple };

std::optional<PartOfSpeech> parse_pos(std::string_view name);
std::optional<Feature> parse_feature(std::string_view name);
std::string_view feature_name(Feature f);

// Whether `f` is a meaningful inflection for `pos` (citation always is).
bool feature_applies(PartOfSpeech pos, Feature f);

struct InflectionRequest {
  std::string lemma;
  PartOfSpeech pos = PartOfSpeech::kFixed;
  Feature feature = Feature::kCitation;
};

// Irregular forms keyed by (lemma, feature); an entry replaces every pattern.
class ExceptionTable {
 public:
  static constexpr std::size_t kDefaultSizeLimit = 200;

  // Line format: lemma <tab> feature <tab> form[,form...]. Blank lines and
  // lines starting with '#' are ignored. A table larger than `size_limit`
  // is still returned; a warning is appended to `warnings` when given.
  static ExceptionTable load(std::string_view text, std::size_t size_limit = kDefaultSizeLimit,
                             std::vector<std::string>* warnings = nullptr);

  void add(std::string lemma, Feature feature, std::vector<std::string> forms);
  const std::vector<std::string>* find(std::string_view lemma, Feature feature) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::pair<std::string, Feature>, std::vector<std::string>, std::less<>> entries_;
};

// All plausible surface forms: the exception entry if there is one,
// otherwise the output of every applicable regular pattern, in pattern
// declaration order, without duplicates.
//
// Shipped patterns (one application each, never composed):
//   plural, third-singular:  +s unless after s x z ch sh or consonant+y
//                            | +es after s x z ch sh o | y -> ies after a consonant
//   past, past-participle:   +ed unless after e or consonant+y
//                            | doubled final consonant +ed after CVC (not w x y)
//                            | +d after e | y -> ied after a consonant
// Lemmas ending in o get both plurals and CVC verbs both pasts; that
// ambiguity is left to the language model.
std::vector<std::string> inflect_overgen(const InflectionRequest& request, const ExceptionTable& exceptions);

}  // namespace mpgen
