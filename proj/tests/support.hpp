#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mpgen/lattice.hpp"
#include "mpgen/lm.hpp"

namespace support {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& rel) { return std::string(MPGEN_TEST_DATA) + "/" + rel; }

// Every complete path's words, by plain recursion over the arc lists.
inline void enumerate_words(const mpgen::Lattice& l, mpgen::StateId s, std::vector<std::string>& cur,
                            std::vector<std::vector<std::string>>& out) {
  if (s == l.final_state()) out.push_back(cur);
  for (const auto& a : l.arcs(s)) {
    bool w = !a.label.is_epsilon();
    if (w) cur.push_back(a.label.word());
    enumerate_words(l, a.target, cur, out);
    if (w) cur.pop_back();
  }
}

inline std::vector<std::vector<std::string>> all_paths(const mpgen::Lattice& l) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> cur;
  enumerate_words(l, l.start(), cur, out);
  return out;
}

// Number of complete paths by recursion with no memo; only for small inputs.
inline std::uint64_t slow_count(const mpgen::Lattice& l, mpgen::StateId s) {
  std::uint64_t n = s == l.final_state() ? 1 : 0;
  for (const auto& a : l.arcs(s)) n += slow_count(l, a.target);
  return n;
}

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> v = {"the", "a", "dog", "dogs", "cat", "saw", "sees", "him",
                                             "he", "Smith", "1989", "ran", "fast", "zebra", "of"};
  return v;
}

struct TreeCheck {
  bool laws_hold = true;  // product/sum laws held at every node
  std::string failure;
};

// Random seq/or/wrd/epsilon tree of depth <= max_depth, checking the path
// count laws at every interior node.
inline mpgen::Lattice random_tree(std::mt19937_64& rng, int max_depth, TreeCheck& check, double eps_rate = 0.1,
                                  const std::vector<std::string>& vocab = vocabulary()) {
  std::uniform_real_distribution<double> u(0, 1);
  auto leaf = [&]() {
    if (u(rng) < eps_rate) return mpgen::epsilon();
    return mpgen::wrd(vocab[rng() % vocab.size()]);
  };
  if (max_depth <= 1 || u(rng) < 0.25) return leaf();
  std::size_t k = 1 + rng() % 3;
  std::vector<mpgen::Lattice> kids;
  for (std::size_t i = 0; i < k; ++i) kids.push_back(random_tree(rng, max_depth - 1, check, eps_rate, vocab));
  bool is_seq = rng() % 2 == 0;
  mpgen::Lattice out = is_seq ? mpgen::seq(kids) : mpgen::or_(kids);
  mpgen::PathCount expect = is_seq ? 1 : 0;
  for (const auto& kid : kids) {
    if (is_seq)
      expect *= mpgen::count_paths(kid);
    else
      expect += mpgen::count_paths(kid);
  }
  if (mpgen::count_paths(out) != expect && check.laws_hold) {
    check.laws_hold = false;
    check.failure = std::string(is_seq ? "seq" : "or") + " law: got " + mpgen::count_paths(out).str() +
                    ", expected " + expect.str();
  }
  return out;
}

// Random acyclic lattice not built from combinators: states 0..n-1, arcs
// only forward, every state on a start-to-final path.
inline mpgen::Lattice random_dag(std::mt19937_64& rng, std::size_t n, double eps_rate = 0.1,
                                 const std::vector<std::string>& vocab = vocabulary()) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<std::vector<mpgen::Arc>> arcs(n);
  auto label = [&]() {
    return u(rng) < eps_rate ? mpgen::Label::epsilon() : mpgen::Label::word(vocab[rng() % vocab.size()]);
  };
  for (std::size_t s = 0; s + 1 < n; ++s) {
    // The s -> s+1 arc keeps every state connected both ways.
    arcs[s].push_back({static_cast<mpgen::StateId>(s + 1), mpgen::Label::word(vocab[rng() % vocab.size()])});
    std::size_t extra = rng() % 3;
    for (std::size_t e = 0; e < extra; ++e) {
      std::size_t to = s + 1 + rng() % (n - s - 1);
      arcs[s].push_back({static_cast<mpgen::StateId>(to), label()});
    }
  }
  return mpgen::Lattice(n, 0, static_cast<mpgen::StateId>(n - 1), std::move(arcs));
}

// Sentences over `vocab` with a bias toward a fixed word order, so the
// trained model has real preferences.
inline std::vector<std::vector<std::string>> random_corpus(std::mt19937_64& rng, std::size_t sentences,
                                                           const std::vector<std::string>& vocab = vocabulary()) {
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < sentences; ++i) {
    std::size_t len = 1 + rng() % 7;
    std::vector<std::string> s;
    std::size_t w = rng() % vocab.size();
    for (std::size_t j = 0; j < len; ++j) {
      s.push_back(vocab[w]);
      w = rng() % 3 == 0 ? rng() % vocab.size() : (w + 1) % vocab.size();
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace support
