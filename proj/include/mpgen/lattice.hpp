#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mpgen {

using StateId = std::uint32_t;
using PathCount = boost::multiprecision::cpp_int;

// Arc label: a word, or the empty string (written `*` in files).
class Label {
 public:
  static Label epsilon() { return Label(); }
  static Label word(std::string w);

  bool is_epsilon() const { return word_.empty(); }
  const std::string& word() const { return word_; }
  // External spelling: the word itself, or "*".
  std::string_view text() const { return is_epsilon() ? std::string_view("*") : word_; }

  friend bool operator==(const Label&, const Label&) = default;

 private:
  Label() = default;
  std::string word_;
};

struct Arc {
  StateId target;
  Label label;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// Acyclic word lattice with a single start and a single final state.
// Outgoing arcs keep their insertion order; DEFAULT extraction and the
// serialized form both depend on it. Instances built by the combinators
// below are always valid; the raw constructor is for readers and tests and
// performs no checking (see validate()).
class Lattice {
 public:
  Lattice(std::size_t num_states, StateId start, StateId final_state,
          std::vector<std::vector<Arc>> arcs);

  std::size_t num_states() const { return arcs_.size(); }
  std::size_t num_arcs() const;
  StateId start() const { return start_; }
  StateId final_state() const { return final_; }
  std::span<const Arc> arcs(StateId s) const { return arcs_[s]; }

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  StateId start_;
  StateId final_;
  std::vector<std::vector<Arc>> arcs_;
};

// Combinators. All results have dense state ids in topological order.
Lattice wrd(std::string_view word);
Lattice epsilon();
Lattice seq(std::span<const Lattice> parts);
Lattice or_(std::span<const Lattice> alternatives);

struct ValidationIssue {
  enum class Kind { kBadState, kCycle, kUnreachable, kDeadEnd, kEpsilonPath };
  Kind kind;
  std::string message;
};

struct ValidateOptions {
  // Complete paths made only of epsilon arcs are legal inside composed
  // lattices (an optional determiner, say); sentence lattices may forbid them.
  bool allow_epsilon_path = true;
};

std::vector<ValidationIssue> validate(const Lattice& l, const ValidateOptions& options = {});

// Throws LatticeError with the first issue if `l` is not valid.
void require_valid(const Lattice& l, const ValidateOptions& options = {});

// States in topological order. Throws LatticeError on a cycle.
std::vector<StateId> topological_order(const Lattice& l);

// Longest-path depth of each state from the start; states sharing a depth
// have no arcs between them.
std::vector<std::vector<StateId>> topological_levels(const Lattice& l);

PathCount count_paths(const Lattice& l);

// Number of complete paths from each state to the final state.
std::vector<PathCount> suffix_path_counts(const Lattice& l);

struct LatticeStats {
  std::size_t nodes = 0;
  std::size_t arcs = 0;
  PathCount paths;
  std::size_t distinct_unigrams = 0;
  std::size_t distinct_bigrams = 0;
};

LatticeStats lattice_stats(const Lattice& l);

// `<n> nodes, <a> arcs, <p> paths;\n<u> distinct unigrams, <b> distinct bigrams.\n`
std::string format_stats(const LatticeStats& stats);

// Decimal with comma thousands separators: 381440 -> "381,440".
std::string group_digits(const PathCount& n);

std::string write_lattice(const Lattice& l);
// Throws ParseError (line number as position) on syntax errors and, when
// `check` is set, LatticeError if the loaded lattice is invalid.
Lattice read_lattice(std::string_view text, bool check = true);

}  // namespace mpgen
