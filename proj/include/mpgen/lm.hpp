#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mpgen {

inline constexpr std::string_view kSentenceStart = "<s>";
inline constexpr std::string_view kSentenceEnd = "</s>";
inline constexpr std::string_view kNameClass = "<NAME>";
inline constexpr std::string_view kNumberClass = "<NUM>";
inline constexpr std::string_view kUnknown = "<UNK>";

// ---- tokenization --------------------------------------------------------

// Words of one stretch of text, case preserved: whitespace split, with
// leading/trailing punctuation split off into tokens of its own.
// Known abbreviations ("Mr.", "Co.", single initials) keep their period.
std::vector<std::string> split_words(std::string_view text);

// Sentences of case-preserved words. A sentence ends after a `.`, `!` or
// `?` token and at every line break.
std::vector<std::vector<std::string>> split_sentences(std::string_view text);

// Lower-cased sentences wrapped in <s> ... </s>.
std::vector<std::vector<std::string>> tokenize(std::string_view text);

using WordSet = std::set<std::string, std::less<>>;

// Maps a surface token to a model token: tokens with a digit become <NUM>;
// capitalized tokens become <NAME> unless they are sentence-initial and
// their lower-case form is in `lowercase_lexicon`; everything else is lower
// cased. The pronoun "I" is never a name.
std::string classify_token(std::string_view token, std::size_t sentence_position, const WordSet& lowercase_lexicon);

// ---- Good-Turing ---------------------------------------------------------

struct GoodTuringOptions {
  enum class Mode { kSimple, kTuring };
  Mode mode = Mode::kSimple;
  double confidence = 1.96;  // switch to the regression once Turing is within this many sd
  double floor = 0.01;       // unseen mass of the maximum-likelihood fallback
};

struct GoodTuringEstimate {
  enum class Regime { kIdentity, kTuring, kSimple, kFallback };

  Regime regime = Regime::kIdentity;
  std::uint64_t total = 0;           // N = sum r * N_r
  std::uint64_t singletons = 0;      // N_1
  double unseen_mass = 0.0;
  double intercept = 0.0, slope = 0.0;  // log N_r-smoothing line (kSimple)
  std::uint64_t switch_at = 0;       // first r estimated from the line; 0 if never
  std::map<std::uint64_t, double> raw;    // r* before renormalization
  std::map<std::uint64_t, double> rstar;  // r* after renormalization

  // Adjusted count for an observed r; r itself for unobserved r.
  double adjusted(std::uint64_t r) const;
};

// Count-of-counts table r -> N_r. With kSimple, Turing estimates are used
// for small r until they agree with the log-log regression, whose values
// are used from then on; the r* are then rescaled so that the seen mass is
// exactly 1 - N_1/N. A table whose counts are all 1 cannot be regressed
// and falls back to maximum likelihood with `floor` reserved for unseen.
GoodTuringEstimate good_turing_adjust(const std::map<std::uint64_t, std::uint64_t>& freq_of_freq,
                                      const GoodTuringOptions& options = {});

std::string_view regime_name(GoodTuringEstimate::Regime r);

// ---- model -----------------------------------------------------------------

using TokenId = std::uint32_t;

struct LmState {
  TokenId prev2 = 0;
  TokenId prev1 = 0;
};

struct TrainConfig {
  GoodTuringOptions good_turing;
  // Unseen mass given to a context whose discounted seen mass leaves none.
  double min_unseen = 1e-3;
};

struct NGramEntry {
  std::uint64_t count = 0;
  double log10prob = 0.0;
};

class NGramModel {
 public:
  // `sentences` are case-preserved word lists without boundary symbols.
  static NGramModel train(const std::vector<std::vector<std::string>>& sentences, int order,
                          const TrainConfig& config = {});

  int order() const { return order_; }
  std::uint64_t corpus_tokens() const { return corpus_tokens_; }
  std::uint64_t sentence_count() const { return sentences_; }
  std::size_t vocabulary_size() const { return vocab_.size(); }
  const WordSet& lowercase_lexicon() const { return lexicon_; }

  TokenId classify(std::string_view surface, bool sentence_initial) const;
  TokenId token_id(std::string_view model_token) const;  // <UNK> when unknown
  const std::string& token(TokenId id) const { return vocab_[id]; }
  TokenId end_token() const { return eos_; }

  LmState start_state() const { return {bos_, bos_}; }
  LmState advance(LmState s, TokenId w) const { return {s.prev1, w}; }
  // Recombination key: the part of the state the next probability depends on.
  std::uint64_t state_key(LmState s) const;

  // log10 P(w | state). <UNK> is a class standing for as many unseen word
  // types as there were singleton unigrams; an unknown word gets an equal
  // share of the class probability.
  double log10_prob(LmState s, TokenId w) const;
  std::uint64_t unknown_types() const { return unknown_types_; }

  // Stored tables, keyed by token strings. Index 0 holds unigrams.
  const std::map<std::vector<std::string>, NGramEntry>& ngrams(int m) const { return ngrams_[m - 1]; }
  const std::map<std::vector<std::string>, double>& unseen_mass() const { return unseen_; }
  const std::vector<GoodTuringEstimate>& good_turing() const { return good_turing_; }
  const TrainConfig& config() const { return config_; }
  std::size_t floors_applied() const { return floors_applied_; }

  friend std::string write_model(const NGramModel& model);
  friend NGramModel read_model(std::string_view text);

 private:
  NGramModel() = default;
  // Rebuilds ids and lookup tables from the stored tables.
  void finalize();
  double log10_bigram(TokenId prev, TokenId w) const;
  double log10_class_prob(LmState s, TokenId w) const;

  int order_ = 2;
  std::uint64_t corpus_tokens_ = 0;
  std::uint64_t sentences_ = 0;
  TrainConfig config_;
  std::size_t floors_applied_ = 0;
  std::vector<GoodTuringEstimate> good_turing_;
  std::vector<std::map<std::vector<std::string>, NGramEntry>> ngrams_;
  std::map<std::vector<std::string>, double> unseen_;

  std::vector<std::string> vocab_;
  std::unordered_map<std::string, TokenId> ids_;
  WordSet lexicon_;
  TokenId bos_ = 0, eos_ = 0, unk_ = 0, name_ = 0, num_ = 0;
  std::uint64_t unknown_types_ = 1;
  double unknown_share_ = 0.0;  // -log10(unknown_types_)
  std::vector<double> unigram_;
  std::unordered_map<std::uint64_t, double> bigram_, trigram_;
  std::unordered_map<std::uint64_t, double> backoff2_, backoff3_;  // log10 of the unseen scale
};

// Versioned text format, deterministic (lexicographic n-gram order),
// closed by a CRC-32 line. read_model throws ModelError on a version
// mismatch or checksum failure.
std::string write_model(const NGramModel& model);
NGramModel read_model(std::string_view text);

// ---- scoring ---------------------------------------------------------------

struct ScoredSentence {
  std::vector<std::string> words;
  double logprob = 0.0;    // log10 likelihood
  double corrected = 0.0;  // logprob + length_bonus(words.size())

  friend bool operator==(const ScoredSentence&, const ScoredSentence&) = default;
};

inline double length_bonus(std::size_t words) { return 0.5 * static_cast<double>(words); }

// Sum of log10 P(w_i | history) over the words and the closing </s>.
double sentence_logprob(const NGramModel& model, std::span<const std::string> words);

// Builds a ScoredSentence from a summed log probability. The log
// probability is rounded to a multiple of 2^-32 first, which makes
// corrected - logprob equal the length bonus exactly.
ScoredSentence make_scored(std::vector<std::string> words, double raw_logprob);

ScoredSentence corrected_score(const NGramModel& model, std::vector<std::string> words);

// Result ordering: corrected score descending, then word sequence ascending.
bool ranks_before(const ScoredSentence& a, const ScoredSentence& b);

}  // namespace mpgen
