#include <algorithm>
#include <cmath>

#include "mpgen/error.hpp"
#include "mpgen/lm.hpp"

namespace mpgen {

namespace {

constexpr unsigned kIdBits = 21;

std::uint64_t pack(TokenId a, TokenId b) { return (static_cast<std::uint64_t>(a) << 32) | b; }
std::uint64_t pack(TokenId a, TokenId b, TokenId c) {
  return (static_cast<std::uint64_t>(a) << (2 * kIdBits)) | (static_cast<std::uint64_t>(b) << kIdBits) | c;
}

bool is_reserved(std::string_view t) {
  return t == kSentenceStart || t == kSentenceEnd || t == kNameClass || t == kNumberClass || t == kUnknown;
}

}  // namespace

NGramModel NGramModel::train(const std::vector<std::vector<std::string>>& sentences, int order,
                             const TrainConfig& config) {
  if (order != 2 && order != 3) throw ConfigError("model order must be 2 or 3");
  if (sentences.empty()) throw ModelError("empty training corpus");

  NGramModel model;
  model.order_ = order;
  model.config_ = config;
  model.sentences_ = sentences.size();
  model.ngrams_.resize(order);

  WordSet lexicon;
  for (const auto& s : sentences)
    for (const auto& w : s)
      if (classify_token(w, 1, {}) == w) lexicon.insert(w);

  const std::string bos(kSentenceStart), eos(kSentenceEnd);
  for (const auto& s : sentences) {
    // m-grams of order m use m-1 start symbols of padding.
    std::vector<std::string> padded(order - 1, bos);
    for (std::size_t i = 0; i < s.size(); ++i) padded.push_back(classify_token(s[i], i, lexicon));
    padded.push_back(eos);
    model.corpus_tokens_ += s.size() + 1;
    for (int m = 1; m <= order; ++m) {
      auto first = padded.begin() + (order - m);
      for (auto it = first; it + m <= padded.end(); ++it) {
        if (m == 1 && *it == bos) continue;
        ++model.ngrams_[m - 1][std::vector<std::string>(it, it + m)].count;
      }
    }
  }

  for (int m = 1; m <= order; ++m) {
    std::map<std::uint64_t, std::uint64_t> fof;
    for (const auto& [gram, e] : model.ngrams_[m - 1]) ++fof[e.count];
    model.good_turing_.push_back(good_turing_adjust(fof, config.good_turing));
  }
  auto discounted = [&](int m, std::uint64_t r) {
    double d = std::min(1.0, model.good_turing_[m - 1].adjusted(r) / static_cast<double>(r));
    return d * static_cast<double>(r);
  };

  // Unigrams: discounted relative frequencies, the remainder goes to <UNK>.
  {
    auto& uni = model.ngrams_[0];
    double total = 0, seen = 0;
    for (const auto& [gram, e] : uni) total += static_cast<double>(e.count);
    std::map<std::vector<std::string>, double> p;
    for (const auto& [gram, e] : uni) seen += p[gram] = discounted(1, e.count) / total;
    double unk = 1.0 - seen;
    if (unk < config.min_unseen) {
      for (auto& [gram, v] : p) v *= (1.0 - config.min_unseen) / seen;
      unk = config.min_unseen;
      ++model.floors_applied_;
    }
    for (auto& [gram, e] : uni) e.log10prob = std::log10(p[gram]);
    uni[{std::string(kUnknown)}] = NGramEntry{0, std::log10(unk)};
  }

  // Higher orders: per-context discounted estimates plus the unseen mass.
  for (int m = 2; m <= order; ++m) {
    auto& table = model.ngrams_[m - 1];
    auto it = table.begin();
    while (it != table.end()) {
      std::vector<std::string> context(it->first.begin(), it->first.end() - 1);
      auto last = it;
      double total = 0;
      while (last != table.end() && std::equal(context.begin(), context.end(), last->first.begin())) {
        total += static_cast<double>(last->second.count);
        ++last;
      }
      std::vector<double> p;
      double seen = 0;
      for (auto j = it; j != last; ++j) seen += p.emplace_back(discounted(m, j->second.count) / total);
      double unseen = 1.0 - seen;
      if (unseen < config.min_unseen) {
        for (double& v : p) v *= (1.0 - config.min_unseen) / seen;
        unseen = config.min_unseen;
        ++model.floors_applied_;
      }
      std::size_t k = 0;
      for (auto j = it; j != last; ++j) j->second.log10prob = std::log10(p[k++]);
      model.unseen_[context] = unseen;
      it = last;
    }
  }
  model.finalize();
  return model;
}

void NGramModel::finalize() {
  std::set<std::string> tokens;
  for (const auto& [gram, e] : ngrams_[0]) tokens.insert(gram[0]);
  tokens.insert(std::string(kSentenceStart));
  tokens.insert(std::string(kUnknown));
  if (tokens.size() >= (1u << kIdBits)) throw ModelError("vocabulary too large");
  vocab_.assign(tokens.begin(), tokens.end());
  ids_.clear();
  lexicon_.clear();
  for (TokenId i = 0; i < vocab_.size(); ++i) {
    ids_.emplace(vocab_[i], i);
    if (!is_reserved(vocab_[i])) lexicon_.insert(vocab_[i]);
  }
  bos_ = ids_.at(std::string(kSentenceStart));
  unk_ = ids_.at(std::string(kUnknown));
  eos_ = token_id(kSentenceEnd);
  name_ = token_id(kNameClass);
  num_ = token_id(kNumberClass);
  unknown_types_ = std::max<std::uint64_t>(1, good_turing_.empty() ? 1 : good_turing_[0].singletons);
  unknown_share_ = -std::log10(static_cast<double>(unknown_types_));

  auto ids_of = [&](const std::vector<std::string>& gram) {
    std::vector<TokenId> out;
    for (const auto& t : gram) {
      auto it = ids_.find(t);
      if (it == ids_.end()) throw ModelError("n-gram token '" + t + "' missing from the unigram table");
      out.push_back(it->second);
    }
    return out;
  };

  unigram_.assign(vocab_.size(), -99.0);
  for (const auto& [gram, e] : ngrams_[0]) unigram_[ids_.at(gram[0])] = e.log10prob;

  bigram_.clear();
  backoff2_.clear();
  std::unordered_map<TokenId, double> seen_lower;
  for (const auto& [gram, e] : ngrams_[1]) {
    auto id = ids_of(gram);
    bigram_[pack(id[0], id[1])] = e.log10prob;
    seen_lower[id[0]] += std::pow(10.0, unigram_[id[1]]);
  }
  for (const auto& [context, mass] : unseen_) {
    if (context.size() != 1) continue;
    TokenId c = ids_of(context)[0];
    double beta = 1.0 - seen_lower[c];
    if (!(beta > 0)) throw ModelError("no lower-order mass left for context '" + context[0] + "'");
    backoff2_[c] = std::log10(mass / beta);
  }

  trigram_.clear();
  backoff3_.clear();
  if (order_ == 3) {
    std::unordered_map<std::uint64_t, double> seen3;
    for (const auto& [gram, e] : ngrams_[2]) {
      auto id = ids_of(gram);
      trigram_[pack(id[0], id[1], id[2])] = e.log10prob;
      seen3[pack(id[0], id[1])] += std::pow(10.0, log10_bigram(id[1], id[2]));
    }
    for (const auto& [context, mass] : unseen_) {
      if (context.size() != 2) continue;
      auto id = ids_of(context);
      double beta = 1.0 - seen3[pack(id[0], id[1])];
      if (!(beta > 0)) throw ModelError("no lower-order mass left for a trigram context");
      backoff3_[pack(id[0], id[1])] = std::log10(mass / beta);
    }
  }
}

TokenId NGramModel::token_id(std::string_view model_token) const {
  auto it = ids_.find(std::string(model_token));
  return it == ids_.end() ? unk_ : it->second;
}

TokenId NGramModel::classify(std::string_view surface, bool sentence_initial) const {
  return token_id(classify_token(surface, sentence_initial ? 0 : 1, lexicon_));
}

std::uint64_t NGramModel::state_key(LmState s) const {
  return order_ == 2 ? s.prev1 : pack(s.prev2, s.prev1);
}

double NGramModel::log10_bigram(TokenId prev, TokenId w) const {
  if (auto it = bigram_.find(pack(prev, w)); it != bigram_.end()) return it->second;
  if (auto it = backoff2_.find(prev); it != backoff2_.end()) return it->second + unigram_[w];
  return unigram_[w];
}

double NGramModel::log10_prob(LmState s, TokenId w) const {
  double p = log10_class_prob(s, w);
  return w == unk_ ? p + unknown_share_ : p;
}

double NGramModel::log10_class_prob(LmState s, TokenId w) const {
  if (order_ == 2) return log10_bigram(s.prev1, w);
  if (auto it = trigram_.find(pack(s.prev2, s.prev1, w)); it != trigram_.end()) return it->second;
  double lower = log10_bigram(s.prev1, w);
  if (auto it = backoff3_.find(pack(s.prev2, s.prev1)); it != backoff3_.end()) return it->second + lower;
  return lower;
}

double sentence_logprob(const NGramModel& model, std::span<const std::string> words) {
  LmState state = model.start_state();
  double total = 0.0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    TokenId w = model.classify(words[i], i == 0);
    total += model.log10_prob(state, w);
    state = model.advance(state, w);
  }
  return total + model.log10_prob(state, model.end_token());
}

ScoredSentence make_scored(std::vector<std::string> words, double raw_logprob) {
  ScoredSentence s;
  s.logprob = std::ldexp(std::nearbyint(std::ldexp(raw_logprob, 32)), -32);
  s.corrected = s.logprob + length_bonus(words.size());
  s.words = std::move(words);
  return s;
}

ScoredSentence corrected_score(const NGramModel& model, std::vector<std::string> words) {
  double lp = sentence_logprob(model, words);
  return make_scored(std::move(words), lp);
}

bool ranks_before(const ScoredSentence& a, const ScoredSentence& b) {
  if (a.corrected != b.corrected) return a.corrected > b.corrected;
  return a.words < b.words;
}

}  // namespace mpgen
