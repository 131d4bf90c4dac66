#include "mpgen/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <queue>
#include <set>
#include <unordered_map>
#include <utility>

#include "mpgen/error.hpp"

namespace mpgen {

Label Label::word(std::string w) {
  if (w.empty()) throw LatticeError("empty word token");
  if (w == "*") throw LatticeError("'*' is reserved for the empty string");
  for (char c : w)
    if (std::isspace(static_cast<unsigned char>(c)))
      throw LatticeError("word token contains whitespace: '" + w + "'");
  Label l;
  l.word_ = std::move(w);
  return l;
}

Lattice::Lattice(std::size_t num_states, StateId start, StateId final_state,
                 std::vector<std::vector<Arc>> arcs)
    : start_(start), final_(final_state), arcs_(std::move(arcs)) {
  arcs_.resize(num_states);
}

std::size_t Lattice::num_arcs() const {
  std::size_t n = 0;
  for (const auto& a : arcs_) n += a.size();
  return n;
}

Lattice wrd(std::string_view word) {
  std::vector<std::vector<Arc>> arcs(2);
  arcs[0].push_back(Arc{1, Label::word(std::string(word))});
  return Lattice(2, 0, 1, std::move(arcs));
}

Lattice epsilon() {
  std::vector<std::vector<Arc>> arcs(2);
  arcs[0].push_back(Arc{1, Label::epsilon()});
  return Lattice(2, 0, 1, std::move(arcs));
}

namespace {

// Topological rank of every state of a valid lattice: start gets 0, final
// gets n-1.
std::vector<StateId> ranks(const Lattice& l) {
  std::vector<StateId> order = topological_order(l);
  std::vector<StateId> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<StateId>(i);
  return rank;
}

}  // namespace

Lattice seq(std::span<const Lattice> parts) {
  if (parts.empty()) throw LatticeError("seq: no parts");
  std::size_t total = 1;
  for (const Lattice& p : parts) {
    require_valid(p);
    total += p.num_states() - 1;
  }
  std::vector<std::vector<Arc>> arcs(total);
  StateId offset = 0;
  for (const Lattice& p : parts) {
    std::vector<StateId> rank = ranks(p);
    for (StateId s = 0; s < p.num_states(); ++s)
      for (const Arc& a : p.arcs(s))
        arcs[offset + rank[s]].push_back(Arc{offset + rank[a.target], a.label});
    offset += static_cast<StateId>(p.num_states() - 1);
  }
  return Lattice(total, 0, offset, std::move(arcs));
}

Lattice or_(std::span<const Lattice> alternatives) {
  if (alternatives.empty()) throw LatticeError("or: no alternatives");
  std::size_t total = 2;
  for (const Lattice& p : alternatives) {
    require_valid(p);
    total += p.num_states() - 2;
  }
  const StateId final_state = static_cast<StateId>(total - 1);
  std::vector<std::vector<Arc>> arcs(total);
  StateId offset = 0;  // id of rank 1 is offset + 1
  for (const Lattice& p : alternatives) {
    std::vector<StateId> rank = ranks(p);
    const StateId last = static_cast<StateId>(p.num_states() - 1);
    auto map = [&](StateId s) -> StateId {
      StateId r = rank[s];
      if (r == 0) return 0;
      if (r == last) return final_state;
      return offset + r;
    };
    // Visit states in rank order so the shared start keeps alternative order.
    std::vector<StateId> by_rank(p.num_states());
    for (StateId s = 0; s < p.num_states(); ++s) by_rank[rank[s]] = s;
    for (StateId s : by_rank)
      for (const Arc& a : p.arcs(s)) arcs[map(s)].push_back(Arc{map(a.target), a.label});
    offset += last - 1;
  }
  return Lattice(total, 0, final_state, std::move(arcs));
}

std::vector<StateId> topological_order(const Lattice& l) {
  const std::size_t n = l.num_states();
  std::vector<std::size_t> indegree(n, 0);
  for (StateId s = 0; s < n; ++s)
    for (const Arc& a : l.arcs(s)) {
      if (a.target >= n) throw LatticeError("arc target out of range");
      ++indegree[a.target];
    }
  std::priority_queue<StateId, std::vector<StateId>, std::greater<>> ready;
  for (StateId s = 0; s < n; ++s)
    if (indegree[s] == 0) ready.push(s);
  std::vector<StateId> order;
  order.reserve(n);
  while (!ready.empty()) {
    StateId s = ready.top();
    ready.pop();
    order.push_back(s);
    for (const Arc& a : l.arcs(s))
      if (--indegree[a.target] == 0) ready.push(a.target);
  }
  if (order.size() != n) throw LatticeError("lattice contains a cycle");
  return order;
}

std::vector<std::vector<StateId>> topological_levels(const Lattice& l) {
  std::vector<StateId> order = topological_order(l);
  std::vector<std::size_t> depth(l.num_states(), 0);
  std::size_t max_depth = 0;
  for (StateId s : order)
    for (const Arc& a : l.arcs(s)) {
      depth[a.target] = std::max(depth[a.target], depth[s] + 1);
      max_depth = std::max(max_depth, depth[a.target]);
    }
  std::vector<std::vector<StateId>> levels(l.num_states() == 0 ? 0 : max_depth + 1);
  for (StateId s : order) levels[depth[s]].push_back(s);
  for (auto& level : levels) std::sort(level.begin(), level.end());
  return levels;
}

std::vector<ValidationIssue> validate(const Lattice& l, const ValidateOptions& options) {
  using Kind = ValidationIssue::Kind;
  std::vector<ValidationIssue> issues;
  const std::size_t n = l.num_states();
  if (n < 2) {
    issues.push_back({Kind::kBadState, "lattice needs at least two states"});
    return issues;
  }
  if (l.start() >= n || l.final_state() >= n) {
    issues.push_back({Kind::kBadState, "start or final state out of range"});
    return issues;
  }
  if (l.start() == l.final_state()) {
    issues.push_back({Kind::kBadState, "start and final state coincide"});
    return issues;
  }
  for (StateId s = 0; s < n; ++s)
    for (const Arc& a : l.arcs(s))
      if (a.target >= n) {
        issues.push_back({Kind::kBadState, "arc " + std::to_string(s) + " -> " +
                                               std::to_string(a.target) + " leaves the state range"});
        return issues;
      }

  // Cycle witness by iterative DFS.
  {
    enum Color : unsigned char { kWhite, kGrey, kBlack };
    std::vector<Color> color(n, kWhite);
    std::vector<StateId> parent(n, 0);
    bool found = false;
    for (StateId root = 0; root < n && !found; ++root) {
      if (color[root] != kWhite) continue;
      std::vector<std::pair<StateId, std::size_t>> stack{{root, 0}};
      color[root] = kGrey;
      while (!stack.empty() && !found) {
        auto& [s, next] = stack.back();
        if (next < l.arcs(s).size()) {
          StateId t = l.arcs(s)[next++].target;
          if (color[t] == kWhite) {
            color[t] = kGrey;
            parent[t] = s;
            stack.push_back({t, 0});
          } else if (color[t] == kGrey) {
            std::vector<StateId> cycle;
            for (StateId u = s; u != t; u = parent[u]) cycle.push_back(u);
            cycle.push_back(t);
            std::reverse(cycle.begin(), cycle.end());
            cycle.push_back(t);
            std::string witness;
            for (StateId u : cycle) witness += (witness.empty() ? "" : " -> ") + std::to_string(u);
            issues.push_back({Kind::kCycle, "cycle: " + witness});
            found = true;
          }
        } else {
          color[s] = kBlack;
          stack.pop_back();
        }
      }
    }
  }

  std::vector<char> reach(n, 0), coreach(n, 0);
  std::vector<std::vector<StateId>> preds(n);
  for (StateId s = 0; s < n; ++s)
    for (const Arc& a : l.arcs(s)) preds[a.target].push_back(s);
  std::vector<StateId> work{l.start()};
  reach[l.start()] = 1;
  while (!work.empty()) {
    StateId s = work.back();
    work.pop_back();
    for (const Arc& a : l.arcs(s))
      if (!reach[a.target]) reach[a.target] = 1, work.push_back(a.target);
  }
  work = {l.final_state()};
  coreach[l.final_state()] = 1;
  while (!work.empty()) {
    StateId s = work.back();
    work.pop_back();
    for (StateId p : preds[s])
      if (!coreach[p]) coreach[p] = 1, work.push_back(p);
  }
  for (StateId s = 0; s < n; ++s) {
    if (!reach[s])
      issues.push_back({Kind::kUnreachable, "state " + std::to_string(s) + " is unreachable from the start"});
    if (!coreach[s]) {
      if (l.arcs(s).empty())
        issues.push_back({Kind::kDeadEnd, "state " + std::to_string(s) +
                                              " has no outgoing arcs but is not the final state"});
      else
        issues.push_back({Kind::kUnreachable, "state " + std::to_string(s) + " cannot reach the final state"});
    }
  }

  if (!options.allow_epsilon_path) {
    std::vector<char> seen(n, 0);
    work = {l.start()};
    seen[l.start()] = 1;
    while (!work.empty()) {
      StateId s = work.back();
      work.pop_back();
      for (const Arc& a : l.arcs(s))
        if (a.label.is_epsilon() && !seen[a.target]) seen[a.target] = 1, work.push_back(a.target);
    }
    if (seen[l.final_state()])
      issues.push_back({Kind::kEpsilonPath, "a complete path emits no words"});
  }
  return issues;
}

void require_valid(const Lattice& l, const ValidateOptions& options) {
  auto issues = validate(l, options);
  if (!issues.empty()) throw LatticeError("invalid lattice: " + issues.front().message);
}

PathCount count_paths(const Lattice& l) {
  require_valid(l);
  std::vector<PathCount> count(l.num_states());
  count[l.start()] = 1;
  for (StateId s : topological_order(l))
    for (const Arc& a : l.arcs(s)) count[a.target] += count[s];
  return count[l.final_state()];
}

std::vector<PathCount> suffix_path_counts(const Lattice& l) {
  require_valid(l);
  std::vector<StateId> order = topological_order(l);
  std::vector<PathCount> count(l.num_states());
  count[l.final_state()] = 1;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (const Arc& a : l.arcs(*it)) count[*it] += count[a.target];
  return count;
}

LatticeStats lattice_stats(const Lattice& l) {
  LatticeStats stats;
  stats.nodes = l.num_states();
  stats.arcs = l.num_arcs();
  stats.paths = count_paths(l);

  std::unordered_map<std::string, int> ids;
  auto id_of = [&](const std::string& w) {
    return ids.emplace(w, static_cast<int>(ids.size())).first->second;
  };
  for (StateId s = 0; s < l.num_states(); ++s)
    for (const Arc& a : l.arcs(s))
      if (!a.label.is_epsilon()) id_of(a.label.word());
  stats.distinct_unigrams = ids.size();

  // Words that can be emitted next from each state, looking through epsilons.
  std::vector<StateId> order = topological_order(l);
  std::vector<std::set<int>> next(l.num_states());
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (const Arc& a : l.arcs(*it)) {
      if (a.label.is_epsilon())
        next[*it].insert(next[a.target].begin(), next[a.target].end());
      else
        next[*it].insert(id_of(a.label.word()));
    }
  std::set<std::pair<int, int>> bigrams;
  for (StateId s = 0; s < l.num_states(); ++s)
    for (const Arc& a : l.arcs(s)) {
      if (a.label.is_epsilon()) continue;
      int first = id_of(a.label.word());
      for (int second : next[a.target]) bigrams.emplace(first, second);
    }
  stats.distinct_bigrams = bigrams.size();
  return stats;
}

std::string group_digits(const PathCount& n) {
  std::string digits = n.str();
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (digits.size() - i) % 3 == 0 && digits[i - 1] != '-') out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

std::string format_stats(const LatticeStats& stats) {
  return group_digits(stats.nodes) + " nodes, " + group_digits(stats.arcs) + " arcs, " +
         group_digits(stats.paths) + " paths;\n" + group_digits(stats.distinct_unigrams) +
         " distinct unigrams, " + group_digits(stats.distinct_bigrams) + " distinct bigrams.\n";
}

}  // namespace mpgen
