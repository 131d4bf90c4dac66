#include "mpgen/morphology.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "mpgen/error.hpp"

namespace mpgen {

std::optional<PartOfSpeech> parse_pos(std::string_view name) {
  if (name == "noun") return PartOfSpeech::kNoun;
  if (name == "verb") return PartOfSpeech::kVerb;
  if (name == "fixed") return PartOfSpeech::kFixed;
  return std::nullopt;
}

std::optional<Feature> parse_feature(std::string_view name) {
  if (name == "citation") return Feature::kCitation;
  if (name == "plural") return Feature::kPlural;
  if (name == "third-singular") return Feature::kThirdSingular;
  if (name == "past") return Feature::kPast;
  if (name == "past-participle") return Feature::kPastParticiple;
  return std::nullopt;
}

std::string_view feature_name(Feature f) {
  switch (f) {
    case Feature::kCitation: return "citation";
    case Feature::kPlural: return "plural";
    case Feature::kThirdSingular: return "third-singular";
    case Feature::kPast: return "past";
    case Feature::kPastParticiple: return "past-participle";
  }
  return "?";
}

bool feature_applies(PartOfSpeech pos, Feature f) {
  if (f == Feature::kCitation) return true;
  switch (pos) {
    case PartOfSpeech::kNoun: return f == Feature::kPlural;
    case PartOfSpeech::kVerb: return f != Feature::kPlural;
    case PartOfSpeech::kFixed: return false;
  }
  return false;
}

ExceptionTable ExceptionTable::load(std::string_view text, std::size_t size_limit,
                                    std::vector<std::string>* warnings) {
  ExceptionTable table;
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    auto fail = [&](const std::string& msg) -> void {
      throw ParseError("exceptions line " + std::to_string(line_no) + ": " + msg, line_no);
    };
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos)
      fail("expected 'lemma<TAB>feature<TAB>forms'");
    std::string lemma(line.substr(0, t1));
    auto feature = parse_feature(line.substr(t1 + 1, t2 - t1 - 1));
    if (lemma.empty()) fail("empty lemma");
    if (!feature) fail("unknown feature '" + std::string(line.substr(t1 + 1, t2 - t1 - 1)) + "'");
    std::vector<std::string> forms;
    std::string_view rest = line.substr(t2 + 1);
    while (true) {
      std::size_t comma = rest.find(',');
      std::string_view form = rest.substr(0, comma);
      if (form.empty()) fail("empty form");
      forms.emplace_back(form);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (table.find(lemma, *feature))
      fail("duplicate entry for " + lemma + " " + std::string(feature_name(*feature)));
    table.add(std::move(lemma), *feature, std::move(forms));
  }
  if (warnings && table.size() > size_limit)
    warnings->push_back("exception table has " + std::to_string(table.size()) +
                        " entries (limit " + std::to_string(size_limit) + ")");
  return table;
}

void ExceptionTable::add(std::string lemma, Feature feature, std::vector<std::string> forms) {
  entries_[{std::move(lemma), feature}] = std::move(forms);
}

const std::vector<std::string>* ExceptionTable::find(std::string_view lemma, Feature feature) const {
  auto it = entries_.find(std::make_pair(std::string(lemma), feature));
  return it == entries_.end() ? nullptr : &it->second;
}

namespace {

bool is_vowel(char c) {
  c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool is_consonant(char c) { return std::isalpha(static_cast<unsigned char>(c)) && !is_vowel(c); }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool consonant_y(std::string_view w) {
  return w.size() >= 2 && (w.back() == 'y' || w.back() == 'Y') && is_consonant(w[w.size() - 2]);
}

bool sibilant(std::string_view w) {
  return ends_with(w, "s") || ends_with(w, "x") || ends_with(w, "z") || ends_with(w, "ch") || ends_with(w, "sh");
}

struct Pattern {
  std::function<bool(std::string_view)> applies;
  std::function<std::string(std::string_view)> apply;
};

const std::vector<Pattern>& s_patterns() {
  static const std::vector<Pattern> patterns = {
      {[](std::string_view w) { return !sibilant(w) && !consonant_y(w); },
       [](std::string_view w) { return std::string(w) + "s"; }},
      {[](std::string_view w) { return sibilant(w) || ends_with(w, "o"); },
       [](std::string_view w) { return std::string(w) + "es"; }},
      {consonant_y, [](std::string_view w) { return std::string(w.substr(0, w.size() - 1)) + "ies"; }},
  };
  return patterns;
}

const std::vector<Pattern>& ed_patterns() {
  static const std::vector<Pattern> patterns = {
      {[](std::string_view w) { return !ends_with(w, "e") && !consonant_y(w); },
       [](std::string_view w) { return std::string(w) + "ed"; }},
      {[](std::string_view w) {
         if (w.size() < 3) return false;
         char last = w.back();
         return is_consonant(last) && last != 'w' && last != 'x' && last != 'y' &&
                is_vowel(w[w.size() - 2]) && is_consonant(w[w.size() - 3]);
       },
       [](std::string_view w) { return std::string(w) + w.back() + "ed"; }},
      {[](std::string_view w) { return ends_with(w, "e"); },
       [](std::string_view w) { return std::string(w) + "d"; }},
      {consonant_y, [](std::string_view w) { return std::string(w.substr(0, w.size() - 1)) + "ied"; }},
  };
  return patterns;
}

}  // namespace

std::vector<std::string> inflect_overgen(const InflectionRequest& request, const ExceptionTable& exceptions) {
  if (request.lemma.empty()) throw Error("inflection of an empty lemma");
  if (const auto* forms = exceptions.find(request.lemma, request.feature)) {
    std::vector<std::string> out;
    for (const auto& f : *forms)
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    return out;
  }
  if (request.feature == Feature::kCitation || !feature_applies(request.pos, request.feature))
    return {request.lemma};

  const auto& patterns = (request.feature == Feature::kPlural || request.feature == Feature::kThirdSingular)
                             ? s_patterns()
                             : ed_patterns();
  std::vector<std::string> out;
  for (const Pattern& p : patterns) {
    if (!p.applies(request.lemma)) continue;
    std::string form = p.apply(request.lemma);
    if (std::find(out.begin(), out.end(), form) == out.end()) out.push_back(std::move(form));
  }
  return out;
}

}  // namespace mpgen
