#include <algorithm>
#include <map>
#include <unordered_map>

#include "mpgen/decoder.hpp"
#include "mpgen/error.hpp"

namespace mpgen {

namespace {

struct Hypothesis {
  double logprob = 0.0;
  double key = 0.0;  // logprob + length bonus, the pruning order
  LmState lm;
  std::vector<std::uint32_t> words;  // interned lattice words
};

struct Incoming {
  StateId source;
  std::int64_t word;  // -1 for epsilon
};

// Read-only view of one decoding problem shared by all workers.
class Search {
 public:
  Search(const Lattice& lattice, const NGramModel& model, const BeamConfig& config)
      : lattice_(lattice), model_(model), config_(config) {
    if (config_.per_context == 0) config_.per_context = config_.n;
    if (config_.per_context < config_.n)
      throw ConfigError("per-context beam K (" + std::to_string(config_.per_context) + ") is smaller than N (" +
                        std::to_string(config_.n) + ")");
    require_valid(lattice);

    std::unordered_map<std::string, std::uint32_t> ids;
    incoming_.resize(lattice.num_states());
    for (StateId s = 0; s < lattice.num_states(); ++s)
      for (const Arc& a : lattice.arcs(s)) {
        std::int64_t w = -1;
        if (!a.label.is_epsilon()) {
          auto [it, fresh] = ids.emplace(a.label.word(), static_cast<std::uint32_t>(words_.size()));
          if (fresh) words_.push_back(a.label.word());
          w = it->second;
        }
        incoming_[a.target].push_back({s, w});
      }
    for (auto& in : incoming_)
      std::stable_sort(in.begin(), in.end(), [](const Incoming& a, const Incoming& b) { return a.source < b.source; });

    std::vector<std::uint32_t> order(words_.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return words_[a] < words_[b]; });
    rank_.resize(words_.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) rank_[order[i]] = i;
    for (const auto& w : words_) {
      token_initial_.push_back(model.classify(w, true));
      token_inner_.push_back(model.classify(w, false));
    }
    hyps_.resize(lattice.num_states());
  }

  void seed() {
    Hypothesis h;
    h.lm = model_.start_state();
    hyps_[lattice_.start()].push_back(std::move(h));
  }

  // Gathers hypotheses from every predecessor of `t` (all already expanded)
  // and keeps the best K per LM context. Touches only hyps_[t].
  void expand(StateId t) {
    if (t == lattice_.start()) return;
    std::map<std::uint64_t, std::vector<Hypothesis>> groups;
    for (const Incoming& in : incoming_[t])
      for (const Hypothesis& h : hyps_[in.source]) {
        Hypothesis next = h;
        if (in.word >= 0) {
          TokenId tok = next.words.empty() ? token_initial_[in.word] : token_inner_[in.word];
          next.logprob += model_.log10_prob(next.lm, tok);
          next.lm = model_.advance(next.lm, tok);
          next.words.push_back(static_cast<std::uint32_t>(in.word));
          next.key = next.logprob + length_bonus(next.words.size());
        }
        groups[model_.state_key(next.lm)].push_back(std::move(next));
      }

    std::vector<Hypothesis> kept;
    for (auto& [key, group] : groups) prune(group, config_.per_context, kept);
    if (config_.global_width > 0 && kept.size() > config_.global_width) {
      std::vector<Hypothesis> all = std::move(kept);
      kept.clear();
      prune(all, config_.global_width, kept);
    }
    hyps_[t] = std::move(kept);
  }

  void release(StateId s) { std::vector<Hypothesis>().swap(hyps_[s]); }

  std::vector<ScoredSentence> finish() {
    std::vector<ScoredSentence> out;
    for (const Hypothesis& h : hyps_[lattice_.final_state()]) {
      double lp = h.logprob + model_.log10_prob(h.lm, model_.end_token());
      std::vector<std::string> words;
      words.reserve(h.words.size());
      for (auto w : h.words) words.push_back(words_[w]);
      out.push_back(make_scored(std::move(words), lp));
    }
    std::sort(out.begin(), out.end(), ranks_before);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const ScoredSentence& a, const ScoredSentence& b) { return a.words == b.words; }),
              out.end());
    if (out.size() > config_.n) out.resize(config_.n);
    return out;
  }

  const Lattice& lattice() const { return lattice_; }

 private:
  bool lex_less(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [&](auto x, auto y) { return rank_[x] < rank_[y]; });
  }

  // Sorts best first, drops repeated word sequences, keeps `limit` plus any
  // hypotheses tied with the last one kept.
  void prune(std::vector<Hypothesis>& group, std::size_t limit, std::vector<Hypothesis>& out) const {
    std::sort(group.begin(), group.end(), [&](const Hypothesis& a, const Hypothesis& b) {
      if (a.key != b.key) return a.key > b.key;
      return lex_less(a.words, b.words);
    });
    const std::size_t first = out.size();
    for (Hypothesis& h : group) {
      // Equal word sequences score equally, so they sit next to each other.
      if (out.size() > first && h.words == out.back().words) continue;
      if (out.size() - first >= limit && h.key != out.back().key) break;
      out.push_back(std::move(h));
    }
  }

  const Lattice& lattice_;
  const NGramModel& model_;
  BeamConfig config_;
  std::vector<std::string> words_;
  std::vector<std::uint32_t> rank_;
  std::vector<TokenId> token_initial_, token_inner_;
  std::vector<std::vector<Incoming>> incoming_;
  std::vector<std::vector<Hypothesis>> hyps_;
};

}  // namespace

std::vector<ScoredSentence> nbest_serial(const Lattice& lattice, const NGramModel& model, const BeamConfig& config) {
  Search search(lattice, model, config);
  if (config.n == 0) return {};
  search.seed();
  for (StateId s : topological_order(lattice)) search.expand(s);
  return search.finish();
}

std::vector<ScoredSentence> nbest(const Lattice& lattice, const NGramModel& model, const BeamConfig& config) {
  Search search(lattice, model, config);
  if (config.n == 0) return {};
  search.seed();

  auto levels = topological_levels(lattice);
  std::vector<std::size_t> level_of(lattice.num_states());
  for (std::size_t l = 0; l < levels.size(); ++l)
    for (StateId s : levels[l]) level_of[s] = l;
  // A state's hypotheses can go once the deepest of its successors is done.
  std::vector<std::vector<StateId>> release_after(levels.size());
  for (StateId s = 0; s < lattice.num_states(); ++s) {
    std::size_t last = level_of[s];
    for (const Arc& a : lattice.arcs(s)) last = std::max(last, level_of[a.target]);
    if (s != lattice.final_state()) release_after[last].push_back(s);
  }

  for (std::size_t l = 0; l < levels.size(); ++l) {
    const auto& level = levels[l];
    const std::int64_t count = static_cast<std::int64_t>(level.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) search.expand(level[i]);
    for (StateId s : release_after[l]) search.release(s);
  }
  return search.finish();
}

}  // namespace mpgen
