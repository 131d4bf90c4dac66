#include <algorithm>
#include <array>
#include <cctype>

#include "mpgen/lm.hpp"

namespace mpgen {

namespace {

constexpr std::string_view kLeadingPunct = "\"'([{<`";
constexpr std::string_view kTrailingPunct = ".,;:!?\"')]}>";

constexpr std::array<std::string_view, 18> kAbbreviations = {
    "mr.", "mrs.", "ms.", "dr.", "prof.", "st.", "jr.", "sr.", "co.",
    "corp.", "inc.", "ltd.", "vs.", "etc.", "u.s.", "jan.", "feb.", "no."};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_abbreviation(std::string_view chunk) {
  if (chunk.size() == 2 && std::isupper(static_cast<unsigned char>(chunk[0])) && chunk[1] == '.') return true;
  std::string l = lower(chunk);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), l) != kAbbreviations.end();
}

bool is_terminal(std::string_view token) { return token == "." || token == "!" || token == "?"; }

}  // namespace

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string_view chunk = text.substr(start, i - start);
    if (chunk.empty()) continue;

    while (!chunk.empty() && kLeadingPunct.find(chunk.front()) != std::string_view::npos) {
      words.emplace_back(1, chunk.front());
      chunk.remove_prefix(1);
    }
    std::vector<std::string> trailing;
    while (!chunk.empty() && kTrailingPunct.find(chunk.back()) != std::string_view::npos) {
      if (chunk.back() == '.' && is_abbreviation(chunk)) break;
      trailing.emplace_back(1, chunk.back());
      chunk.remove_suffix(1);
    }
    if (!chunk.empty()) words.emplace_back(chunk);
    words.insert(words.end(), trailing.rbegin(), trailing.rend());
  }
  return words;
}

std::vector<std::vector<std::string>> split_sentences(std::string_view text) {
  std::vector<std::vector<std::string>> sentences;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::vector<std::string> current;
    for (std::string& w : split_words(text.substr(pos, eol - pos))) {
      bool end = is_terminal(w);
      current.push_back(std::move(w));
      if (end) sentences.push_back(std::move(current)), current.clear();
    }
    if (!current.empty()) sentences.push_back(std::move(current));
    pos = eol + 1;
  }
  return sentences;
}

std::vector<std::vector<std::string>> tokenize(std::string_view text) {
  auto sentences = split_sentences(text);
  for (auto& s : sentences) {
    for (auto& w : s) w = lower(w);
    s.insert(s.begin(), std::string(kSentenceStart));
    s.emplace_back(kSentenceEnd);
  }
  return sentences;
}

std::string classify_token(std::string_view token, std::size_t sentence_position, const WordSet& lowercase_lexicon) {
  if (std::any_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); }))
    return std::string(kNumberClass);
  std::string l = lower(token);
  if (!token.empty() && std::isupper(static_cast<unsigned char>(token.front())) && token != "I") {
    if (sentence_position != 0 || !lowercase_lexicon.count(l)) return std::string(kNameClass);
  }
  return l;
}

}  // namespace mpgen
