#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mpgen/lattice.hpp"
#include "mpgen/lm.hpp"

namespace mpgen {

struct BeamConfig {
  std::size_t n = 1;              // results wanted
  std::size_t per_context = 0;    // K, hypotheses kept per (state, LM context); 0 means n
  std::size_t global_width = 0;   // optional cap per state across contexts; 0 = off (exact)
};

// N highest-scoring distinct word sequences through `lattice`, by
// length-corrected log likelihood, ties broken by the word sequence.
// States are swept in topological order; hypotheses arriving at a state
// with the same LM context are recombined, keeping the best K. With
// K >= n and no global width the result equals brute_force_nbest.
// Throws ConfigError when K < n.
//
// nbest expands the states of each topological level in parallel;
// nbest_serial is the single-threaded reference and returns identical
// results bit for bit.
std::vector<ScoredSentence> nbest(const Lattice& lattice, const NGramModel& model, const BeamConfig& config);
std::vector<ScoredSentence> nbest_serial(const Lattice& lattice, const NGramModel& model, const BeamConfig& config);

inline constexpr std::uint64_t kDefaultPathBound = 100000;

// Enumerates every complete path. Throws LatticeError above `path_bound`.
std::vector<ScoredSentence> brute_force_nbest(const Lattice& lattice, const NGramModel& model, std::size_t n,
                                              std::uint64_t path_bound = kDefaultPathBound);

// Word sequences of every complete path in arc order (epsilons dropped).
std::vector<std::vector<std::string>> enumerate_paths(const Lattice& lattice,
                                                      std::uint64_t path_bound = kDefaultPathBound);

enum class RandomMode { kUniformPath, kUniformArc };

// Samples a complete path with std::mt19937_64 seeded by `seed`. The
// default mode is uniform over paths (arc chosen in proportion to the
// number of paths through it); kUniformArc picks each outgoing arc with
// equal probability.
std::vector<std::string> random_path(const Lattice& lattice, std::uint64_t seed,
                                     RandomMode mode = RandomMode::kUniformPath);

// Follows the first outgoing arc of every state.
std::vector<std::string> default_path(const Lattice& lattice);

// Scores and sorts explicit sentences (ranks_before order, stable).
std::vector<ScoredSentence> rank_sentences(const NGramModel& model, const std::vector<std::vector<std::string>>& sentences);
std::vector<ScoredSentence> rank_sentences_serial(const NGramModel& model,
                                                  const std::vector<std::vector<std::string>>& sentences);

std::string join_words(const std::vector<std::string>& words);

// `k<TAB>sentence<TAB>[ score ]` lines, k from 1, score to six decimals.
std::string format_results(const std::vector<ScoredSentence>& results);
// One JSON object per line: rank, words, logprob, corrected.
std::string format_records(const std::vector<ScoredSentence>& results);

}  // namespace mpgen
