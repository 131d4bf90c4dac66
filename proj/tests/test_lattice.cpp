#include <algorithm>
#include <random>

#include "doctest.h"
#include "mpgen/decoder.hpp"
#include "mpgen/error.hpp"
#include "mpgen/lattice.hpp"
#include "support.hpp"

using namespace mpgen;

namespace {

Lattice alt(std::initializer_list<Lattice> xs) { return or_(std::vector<Lattice>(xs)); }
Lattice cat(std::initializer_list<Lattice> xs) { return seq(std::vector<Lattice>(xs)); }

Lattice determiner() { return alt({wrd("the"), wrd("a"), wrd("an"), epsilon()}); }

Lattice eight_paths() { return cat({determiner(), alt({wrd("deficit"), wrd("deficits")}), wrd("fell")}); }

Lattice six_paths() {
  return cat({alt({cat({determiner(), wrd("deficit")}), cat({alt({wrd("the"), epsilon()}), wrd("deficits")})}),
              wrd("fell")});
}

std::vector<std::vector<std::string>> sorted(std::vector<std::vector<std::string>> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool has_issue(const Lattice& l, ValidationIssue::Kind kind) {
  for (const auto& i : validate(l))
    if (i.kind == kind) return true;
  return false;
}

}  // namespace

TEST_CASE("wrd and epsilon") {
  Lattice f = wrd("fell");
  CHECK(f.num_states() == 2);
  CHECK(f.num_arcs() == 1);
  CHECK(count_paths(f) == 1);
  CHECK(count_paths(wrd("x")) == 1);
  CHECK_THROWS_AS(wrd(""), LatticeError);
  CHECK_THROWS_AS(wrd("a b"), LatticeError);
  CHECK_THROWS_AS(wrd("*"), LatticeError);
  Lattice e = epsilon();
  CHECK(e.num_states() == 2);
  CHECK(count_paths(e) == 1);
  CHECK(e.arcs(e.start())[0].label.is_epsilon());
}

TEST_CASE("seq and or_") {
  Lattice or3 = alt({wrd("x"), wrd("y"), wrd("z")});
  Lattice nine = cat({or3, or3});
  CHECK(count_paths(nine) == 9);
  CHECK(support::all_paths(nine).size() == 9);
  Lattice td = cat({wrd("the"), wrd("dog")});
  auto paths = support::all_paths(td);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0] == std::vector<std::string>{"the", "dog"});
  CHECK_THROWS_AS(seq(std::vector<Lattice>{}), LatticeError);
  CHECK_THROWS_AS(or_(std::vector<Lattice>{}), LatticeError);
  // or_ keeps alternative order at the shared start state.
  Lattice ab = alt({wrd("b"), wrd("a")});
  CHECK(ab.arcs(ab.start())[0].label.word() == "b");
  CHECK(count_paths(alt({wrd("a"), wrd("a")})) == 2);
}

TEST_CASE("determiner lattices: eight paths and six with agreement") {
  Lattice eight = eight_paths();
  Lattice six = six_paths();
  CHECK(count_paths(eight) == 8);
  CHECK(count_paths(six) == 6);
  CHECK(validate(eight).empty());
  CHECK(validate(six).empty());
  auto p6 = sorted(support::all_paths(six));
  std::vector<std::vector<std::string>> want = {
      {"a", "deficit", "fell"}, {"an", "deficit", "fell"}, {"deficit", "fell"},
      {"deficits", "fell"},     {"the", "deficit", "fell"}, {"the", "deficits", "fell"}};
  CHECK(p6 == want);
}

TEST_CASE("lattice_stats") {
  LatticeStats s = lattice_stats(cat({wrd("a"), wrd("b")}));
  CHECK(s.distinct_unigrams == 2);
  CHECK(s.distinct_bigrams == 1);
  LatticeStats se = lattice_stats(cat({wrd("a"), epsilon(), wrd("b")}));
  CHECK(se.distinct_bigrams == 1);
  LatticeStats aa = lattice_stats(alt({wrd("a"), wrd("a")}));
  CHECK(aa.distinct_unigrams == 1);
  CHECK(aa.paths == 2);
}

TEST_CASE("lattice_stats bigrams match path enumeration on random lattices") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    support::TreeCheck check;
    Lattice l = random_tree(rng, 4, check, 0.25);
    if (count_paths(l) > 5000) continue;
    std::set<std::pair<std::string, std::string>> pairs;
    std::set<std::string> words;
    for (const auto& p : support::all_paths(l)) {
      for (std::size_t k = 0; k < p.size(); ++k) {
        words.insert(p[k]);
        if (k + 1 < p.size()) pairs.insert({p[k], p[k + 1]});
      }
    }
    LatticeStats s = lattice_stats(l);
    CHECK(s.distinct_bigrams == pairs.size());
    CHECK(s.distinct_unigrams == words.size());
    CHECK(s.distinct_unigrams <= s.arcs);
  }
}

TEST_CASE("stats formatting") {
  LatticeStats s;
  s.nodes = 44;
  s.arcs = 217;
  s.paths = 381440;
  s.distinct_unigrams = 59;
  s.distinct_bigrams = 430;
  CHECK(format_stats(s) == "44 nodes, 217 arcs, 381,440 paths;\n59 distinct unigrams, 430 distinct bigrams.\n");
  CHECK(group_digits(PathCount("4831867621815091200")) == "4,831,867,621,815,091,200");
  CHECK(group_digits(0) == "0");
  CHECK(group_digits(999) == "999");
  CHECK(group_digits(1000) == "1,000");
}

TEST_CASE("count_paths is exact beyond 64 bits") {
  std::vector<Lattice> parts(70, alt({wrd("x"), wrd("y")}));
  PathCount expect = 1;
  expect <<= 70;
  CHECK(count_paths(seq(parts)) == expect);
}

TEST_CASE("validate reports violations") {
  // 0 -> 1 -> 2 with a back arc 2 -> 1 and 1 -> 3 final.
  Lattice cyc(4, 0, 3,
              {{{1, Label::word("a")}}, {{2, Label::word("b")}, {3, Label::word("c")}}, {{1, Label::word("d")}}, {}});
  CHECK(has_issue(cyc, ValidationIssue::Kind::kCycle));
  CHECK_THROWS_AS(count_paths(cyc), LatticeError);

  Lattice dead(3, 0, 2, {{{1, Label::word("a")}, {2, Label::word("b")}}, {}, {}});
  CHECK(has_issue(dead, ValidationIssue::Kind::kDeadEnd));

  Lattice unreachable(3, 0, 2, {{{2, Label::word("a")}}, {{2, Label::word("b")}}, {}});
  CHECK(has_issue(unreachable, ValidationIssue::Kind::kUnreachable));

  Lattice eps(2, 0, 1, {{{1, Label::epsilon()}}, {}});
  CHECK(validate(eps).empty());
  ValidateOptions strict;
  strict.allow_epsilon_path = false;
  CHECK(!validate(eps, strict).empty());
}

TEST_CASE("combinator outputs always validate and obey the path laws") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    support::TreeCheck check;
    Lattice l = random_tree(rng, 6, check);
    CHECK_MESSAGE(check.laws_hold, check.failure);
    CHECK(validate(l).empty());
    if (count_paths(l) <= 10000) CHECK(count_paths(l) == support::slow_count(l, l.start()));
  }
}

TEST_CASE("epsilon transparency") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    support::TreeCheck check;
    Lattice a = random_tree(rng, 3, check);
    Lattice b = random_tree(rng, 3, check);
    if (count_paths(a) * count_paths(b) > 2000) continue;
    auto plain = sorted(support::all_paths(cat({a, b})));
    CHECK(sorted(support::all_paths(cat({epsilon(), a, b}))) == plain);
    CHECK(sorted(support::all_paths(cat({a, epsilon(), b}))) == plain);
    CHECK(sorted(support::all_paths(cat({a, b, epsilon()}))) == plain);
  }
}

TEST_CASE("serialization round trip") {
  Lattice eight = eight_paths();
  std::string text = write_lattice(eight);
  CHECK(text.rfind("LATTICE v1\nstates ", 0) == 0);
  CHECK(text.find(" *\n") != std::string::npos);
  Lattice back = read_lattice(text);
  CHECK(back == eight);
  CHECK(write_lattice(back) == text);
  CHECK(default_path(back) == default_path(eight));

  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    support::TreeCheck check;
    Lattice l = random_tree(rng, 5, check);
    Lattice r = read_lattice(write_lattice(l));
    CHECK(r == l);
    CHECK(default_path(r) == default_path(l));
  }
}

TEST_CASE("read_lattice errors") {
  auto line_of = [](const std::string& text) -> long {
    try {
      read_lattice(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(line_of("LATTICE v1\nstates 2\nstart 0\nstart 0\nfinal 1\narc 0 1 a\n") == 4);
  CHECK(line_of("LATTICE v1\nstates 2\nstart 0\nfinal 1\narc 0 1\n") == 5);
  CHECK(line_of("LATTICE v2\n") == 1);
  CHECK(line_of("LATTICE v1\nstates 2\nstart 0\nfinal 1\narc 0 7 a\n") == 5);
  CHECK_THROWS_AS(read_lattice("LATTICE v1\nstates 3\nstart 0\nfinal 2\narc 0 2 a\narc 1 2 b\n"), LatticeError);
  CHECK_NOTHROW(read_lattice("LATTICE v1\nstates 3\nstart 0\nfinal 2\narc 0 2 a\narc 1 2 b\n", false));
}

TEST_CASE("topological levels contain no internal arcs") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    Lattice l = support::random_dag(rng, 3 + rng() % 20);
    REQUIRE(validate(l).empty());
    auto levels = topological_levels(l);
    std::vector<std::size_t> level_of(l.num_states());
    std::size_t seen = 0;
    for (std::size_t k = 0; k < levels.size(); ++k)
      for (StateId s : levels[k]) level_of[s] = k, ++seen;
    CHECK(seen == l.num_states());
    for (StateId s = 0; s < l.num_states(); ++s)
      for (const auto& a : l.arcs(s)) CHECK(level_of[a.target] > level_of[s]);
  }
}
