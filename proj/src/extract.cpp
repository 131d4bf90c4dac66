#include <algorithm>
#include <cstdio>
#include <random>
#include <set>

#include "json.hpp"
#include "mpgen/decoder.hpp"
#include "mpgen/error.hpp"

namespace mpgen {

std::vector<std::vector<std::string>> enumerate_paths(const Lattice& lattice, std::uint64_t path_bound) {
  PathCount total = count_paths(lattice);
  if (total > path_bound)
    throw LatticeError("lattice has " + total.str() + " paths, above the enumeration bound of " +
                       std::to_string(path_bound));
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> words;
  // Explicit stack of (state, next arc index, words emitted on entry).
  struct Frame {
    StateId state;
    std::size_t next;
    bool emitted;
  };
  std::vector<Frame> stack{{lattice.start(), 0, false}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.state == lattice.final_state()) {
      out.push_back(words);
    }
    if (f.next < lattice.arcs(f.state).size()) {
      const Arc& a = lattice.arcs(f.state)[f.next++];
      bool emit = !a.label.is_epsilon();
      if (emit) words.push_back(a.label.word());
      stack.push_back({a.target, 0, emit});
      continue;
    }
    if (f.emitted) words.pop_back();
    stack.pop_back();
  }
  return out;
}

std::vector<ScoredSentence> brute_force_nbest(const Lattice& lattice, const NGramModel& model, std::size_t n,
                                              std::uint64_t path_bound) {
  if (n == 0) return {};
  auto paths = enumerate_paths(lattice, path_bound);
  std::set<std::vector<std::string>> distinct(paths.begin(), paths.end());
  std::vector<ScoredSentence> out;
  for (const auto& words : distinct) out.push_back(corrected_score(model, words));
  std::sort(out.begin(), out.end(), ranks_before);
  if (out.size() > n) out.resize(n);
  return out;
}

namespace {

// Uniform integer in [0, bound) by rejection over 64-bit draws, least
// significant chunk first.
PathCount uniform_below(const PathCount& bound, std::mt19937_64& rng) {
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  const std::size_t chunks = (bits + 63) / 64;
  while (true) {
    PathCount v = 0;
    for (std::size_t i = 0; i < chunks; ++i) v |= PathCount(rng()) << (64 * i);
    v &= (PathCount(1) << bits) - 1;
    if (v < bound) return v;
  }
}

}  // namespace

std::vector<std::string> random_path(const Lattice& lattice, std::uint64_t seed, RandomMode mode) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> words;
  std::vector<PathCount> suffix = suffix_path_counts(lattice);
  StateId s = lattice.start();
  if (mode == RandomMode::kUniformPath) {
    PathCount pick = uniform_below(suffix[s], rng);
    while (s != lattice.final_state()) {
      for (const Arc& a : lattice.arcs(s)) {
        if (pick < suffix[a.target]) {
          if (!a.label.is_epsilon()) words.push_back(a.label.word());
          s = a.target;
          break;
        }
        pick -= suffix[a.target];
      }
    }
  } else {
    while (s != lattice.final_state()) {
      auto arcs = lattice.arcs(s);
      std::size_t i = static_cast<std::size_t>(uniform_below(PathCount(arcs.size()), rng));
      if (!arcs[i].label.is_epsilon()) words.push_back(arcs[i].label.word());
      s = arcs[i].target;
    }
  }
  return words;
}

std::vector<std::string> default_path(const Lattice& lattice) {
  require_valid(lattice);
  std::vector<std::string> words;
  for (StateId s = lattice.start(); s != lattice.final_state();) {
    const Arc& a = lattice.arcs(s).front();
    if (!a.label.is_epsilon()) words.push_back(a.label.word());
    s = a.target;
  }
  return words;
}

std::vector<ScoredSentence> rank_sentences_serial(const NGramModel& model,
                                                  const std::vector<std::vector<std::string>>& sentences) {
  std::vector<ScoredSentence> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(corrected_score(model, s));
  std::stable_sort(out.begin(), out.end(), ranks_before);
  return out;
}

std::vector<ScoredSentence> rank_sentences(const NGramModel& model,
                                           const std::vector<std::vector<std::string>>& sentences) {
  std::vector<ScoredSentence> out(sentences.size());
  const std::int64_t count = static_cast<std::int64_t>(sentences.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) out[i] = corrected_score(model, sentences[i]);
  std::stable_sort(out.begin(), out.end(), ranks_before);
  return out;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

std::string format_results(const std::vector<ScoredSentence>& results) {
  std::string out;
  char score[64];
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::snprintf(score, sizeof score, "[ %.6f ]", results[i].corrected);
    out += std::to_string(i + 1) + "\t" + join_words(results[i].words) + "\t" + score + "\n";
  }
  return out;
}

std::string format_records(const std::vector<ScoredSentence>& results) {
  std::string out;
  for (std::size_t i = 0; i < results.size(); ++i) {
    nlohmann::json j;
    j["rank"] = i + 1;
    j["words"] = results[i].words;
    j["logprob"] = results[i].logprob;
    j["corrected"] = results[i].corrected;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace mpgen
