// Command-line front end: train, generate, extract, score, rank, stats, validate.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mpgen/decoder.hpp"
#include "mpgen/error.hpp"
#include "mpgen/grammar.hpp"
#include "mpgen/lattice.hpp"
#include "mpgen/lm.hpp"
#include "mpgen/morphology.hpp"
#include "mpgen/semantics.hpp"

namespace {

using namespace mpgen;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw Error("cannot write " + path);
}

// One sentence per non-blank line, words split as in training.
std::vector<std::vector<std::string>> read_sentence_lines(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto words = split_words(line);
    if (!words.empty()) out.push_back(std::move(words));
  }
  return out;
}

std::string score_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct Options {
  std::string format = "text";

  std::string corpus, out;
  int order = 2;
  std::string gt_mode = "simple";
  double min_unseen = 1e-3;

  std::string grammar, lexicon, input, exceptions, goal = "s";

  std::string lattice, strategy = "statistical", model, random_mode = "path";
  std::size_t n = 1, beam = 0, global_width = 0;
  std::uint64_t seed = 0;
  bool serial = false;

  std::vector<std::string> sentences;
  std::string file;
};

int cmd_train(const Options& o) {
  auto sentences = split_sentences(read_file(o.corpus));
  TrainConfig config;
  config.good_turing.mode =
      o.gt_mode == "turing" ? GoodTuringOptions::Mode::kTuring : GoodTuringOptions::Mode::kSimple;
  config.min_unseen = o.min_unseen;
  NGramModel model = NGramModel::train(sentences, o.order, config);
  write_file(o.out, write_model(model));
  if (o.format == "records") {
    nlohmann::json j{{"sentences", model.sentence_count()},
                     {"tokens", model.corpus_tokens()},
                     {"types", model.vocabulary_size()},
                     {"order", model.order()},
                     {"out", o.out}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << model.sentence_count() << " sentences, " << model.corpus_tokens() << " tokens, "
              << model.vocabulary_size() << " types\n";
  }
  return 0;
}

int cmd_generate(const Options& o) {
  Grammar grammar = Grammar::parse(read_file(o.grammar));
  Lexicon lexicon = Lexicon::parse(read_file(o.lexicon));
  std::vector<std::string> warnings;
  ExceptionTable exceptions;
  if (!o.exceptions.empty())
    exceptions = ExceptionTable::load(read_file(o.exceptions), ExceptionTable::kDefaultSizeLimit, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  SemanticNode input = parse_spl(read_file(o.input));
  Realizer realizer(grammar, lexicon, exceptions);
  Lattice lattice = realizer.realize(input, o.goal);
  write_file(o.out, write_lattice(lattice));
  LatticeStats stats = lattice_stats(lattice);
  if (o.format == "records") {
    nlohmann::json j{{"nodes", stats.nodes},
                     {"arcs", stats.arcs},
                     {"paths", stats.paths.str()},
                     {"distinct_unigrams", stats.distinct_unigrams},
                     {"distinct_bigrams", stats.distinct_bigrams}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "LATTICE CREATED\n" << format_stats(stats);
  }
  return 0;
}

int cmd_extract(const Options& o, bool seed_given) {
  Lattice lattice = read_lattice(read_file(o.lattice));
  const bool records = o.format == "records";

  if (o.strategy == "statistical") {
    if (o.model.empty()) throw ConfigError("--strategy statistical needs --model");
    NGramModel model = read_model(read_file(o.model));
    BeamConfig beam{o.n, o.beam, o.global_width};
    auto results = o.serial ? nbest_serial(lattice, model, beam) : nbest(lattice, model, beam);
    if (records) {
      std::cout << format_records(results);
    } else {
      std::cout << "STATISTICAL " << (model.order() == 3 ? "TRIGRAM" : "BIGRAM") << " EXTRACTION\n"
                << format_results(results);
    }
    return 0;
  }

  std::vector<std::string> words;
  std::uint64_t seed = o.seed;
  if (o.strategy == "random") {
    if (!seed_given) seed = (std::uint64_t(std::random_device{}()) << 32) ^ std::random_device{}();
    words = random_path(lattice, seed, o.random_mode == "arc" ? RandomMode::kUniformArc : RandomMode::kUniformPath);
  } else {
    words = default_path(lattice);
  }
  if (records) {
    nlohmann::json j{{"strategy", o.strategy}, {"words", words}};
    if (o.strategy == "random") j["seed"] = seed;
    std::cout << j.dump() << "\n";
  } else {
    if (o.strategy == "random") {
      std::cout << "RANDOM EXTRACTION\n";
      if (!seed_given) std::cout << "seed " << seed << "\n";
    } else {
      std::cout << "DEFAULT EXTRACTION\n";
    }
    std::cout << join_words(words) << "\n";
  }
  return 0;
}

std::vector<std::vector<std::string>> gather_sentences(const Options& o) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : o.sentences) out.push_back(split_words(s));
  if (!o.file.empty()) {
    auto more = read_sentence_lines(read_file(o.file));
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

int cmd_score(const Options& o) {
  NGramModel model = read_model(read_file(o.model));
  auto sentences = gather_sentences(o);
  if (sentences.empty()) throw ConfigError("score needs --sentence or --file");
  for (const auto& words : sentences) {
    ScoredSentence s = corrected_score(model, words);
    if (o.format == "records") {
      nlohmann::json j{{"words", s.words}, {"logprob", s.logprob}, {"corrected", s.corrected}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << join_words(s.words) << "\t" << score_text(s.logprob) << "\t[ " << score_text(s.corrected)
                << " ]\n";
    }
  }
  return 0;
}

int cmd_rank(const Options& o) {
  NGramModel model = read_model(read_file(o.model));
  auto sentences = gather_sentences(o);
  auto ranked = o.serial ? rank_sentences_serial(model, sentences) : rank_sentences(model, sentences);
  std::cout << (o.format == "records" ? format_records(ranked) : format_results(ranked));
  return 0;
}

int cmd_stats(const Options& o) {
  LatticeStats stats = lattice_stats(read_lattice(read_file(o.lattice)));
  if (o.format == "records") {
    nlohmann::json j{{"nodes", stats.nodes},
                     {"arcs", stats.arcs},
                     {"paths", stats.paths.str()},
                     {"distinct_unigrams", stats.distinct_unigrams},
                     {"distinct_bigrams", stats.distinct_bigrams}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << format_stats(stats);
  }
  return 0;
}

int cmd_validate(const Options& o) {
  Lattice lattice = read_lattice(read_file(o.lattice), false);
  auto issues = validate(lattice);
  if (o.format == "records") {
    nlohmann::json j{{"valid", issues.empty()}, {"issues", nlohmann::json::array()}};
    for (const auto& i : issues) j["issues"].push_back(i.message);
    std::cout << j.dump() << "\n";
  } else if (issues.empty()) {
    std::cout << "valid\n";
  } else {
    for (const auto& i : issues) std::cout << i.message << "\n";
  }
  return issues.empty() ? 0 : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice-based sentence generation with n-gram extraction"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "records"}));
  };

  auto* train = app.add_subcommand("train", "Train an n-gram model from a text corpus");
  train->add_option("--corpus", o.corpus, "Training text")->required();
  train->add_option("--order", o.order, "2 (bigram) or 3 (trigram)")->check(CLI::IsMember({2, 3}));
  train->add_option("--out", o.out, "Model file to write")->required();
  train->add_option("--good-turing", o.gt_mode, "simple or turing")->check(CLI::IsMember({"simple", "turing"}));
  train->add_option("--min-unseen", o.min_unseen, "Smallest unseen mass per context")->check(CLI::Range(0.0, 1.0));
  add_format(train);

  auto* generate = app.add_subcommand("generate", "Realize a semantic input as a word lattice");
  generate->add_option("--grammar", o.grammar, "Grammar file")->required();
  generate->add_option("--lexicon", o.lexicon, "Lexicon file")->required();
  generate->add_option("--input", o.input, "SPL input file")->required();
  generate->add_option("--exceptions", o.exceptions, "Morphology exception table");
  generate->add_option("--goal", o.goal, "Goal category");
  generate->add_option("--out", o.out, "Lattice file to write")->required();
  add_format(generate);

  bool seed_given = false;
  auto* extract = app.add_subcommand("extract", "Extract sentences from a lattice");
  extract->add_option("--lattice", o.lattice, "Lattice file")->required();
  extract->add_option("--strategy", o.strategy, "statistical, random or default")
      ->check(CLI::IsMember({"statistical", "random", "default"}));
  extract->add_option("--model", o.model, "Model file (statistical)");
  extract->add_option("--n", o.n, "Number of results");
  extract->add_option("--beam", o.beam, "Hypotheses kept per state and context (0 = n)");
  extract->add_option("--global-width", o.global_width, "Hypotheses kept per state (0 = unlimited)");
  auto* seed_opt = extract->add_option("--seed", o.seed, "Seed for random extraction");
  extract->add_option("--random-mode", o.random_mode, "path (uniform over paths) or arc")
      ->check(CLI::IsMember({"path", "arc"}));
  extract->add_flag("--serial", o.serial, "Use the single-threaded search");
  add_format(extract);

  auto* score = app.add_subcommand("score", "Score sentences");
  score->add_option("--model", o.model, "Model file")->required();
  score->add_option("--sentence", o.sentences, "Sentence to score (repeatable)");
  score->add_option("--file", o.file, "One sentence per line");
  add_format(score);

  auto* rank = app.add_subcommand("rank", "Rank sentences by corrected score");
  rank->add_option("--model", o.model, "Model file")->required();
  rank->add_option("--file", o.file, "One sentence per line")->required();
  rank->add_flag("--serial", o.serial, "Use the single-threaded scorer");
  add_format(rank);

  auto* stats = app.add_subcommand("stats", "Print lattice statistics");
  stats->add_option("--lattice", o.lattice, "Lattice file")->required();
  add_format(stats);

  auto* valid = app.add_subcommand("validate", "Check a lattice file");
  valid->add_option("--lattice", o.lattice, "Lattice file")->required();
  add_format(valid);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  seed_given = seed_opt->count() > 0;

  try {
    if (*train) return cmd_train(o);
    if (*generate) return cmd_generate(o);
    if (*extract) return cmd_extract(o, seed_given);
    if (*score) return cmd_score(o);
    if (*rank) return cmd_rank(o);
    if (*stats) return cmd_stats(o);
    if (*valid) return cmd_validate(o);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitData;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
