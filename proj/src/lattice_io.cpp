#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

#include "mpgen/error.hpp"
#include "mpgen/lattice.hpp"

namespace mpgen {

std::string write_lattice(const Lattice& l) {
  std::ostringstream out;
  out << "LATTICE v1\n"
      << "states " << l.num_states() << '\n'
      << "start " << l.start() << '\n'
      << "final " << l.final_state() << '\n';
  for (StateId s = 0; s < l.num_states(); ++s)
    for (const Arc& a : l.arcs(s)) out << "arc " << s << ' ' << a.target << ' ' << a.label.text() << '\n';
  return out.str();
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

[[noreturn]] void syntax(std::size_t line_no, const std::string& msg) {
  throw ParseError("lattice line " + std::to_string(line_no) + ": " + msg, line_no);
}

StateId parse_id(std::string_view field, std::size_t line_no) {
  StateId v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    syntax(line_no, "bad state id '" + std::string(field) + "'");
  return v;
}

}  // namespace

Lattice read_lattice(std::string_view text, bool check) {
  std::optional<std::size_t> states;
  std::optional<StateId> start, final_state;
  std::vector<std::vector<Arc>> arcs;
  bool header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto f = split_fields(line);
    if (f.empty()) continue;
    if (!header) {
      if (f.size() != 2 || f[0] != "LATTICE" || f[1] != "v1") syntax(line_no, "expected header 'LATTICE v1'");
      header = true;
      continue;
    }
    if (f[0] == "states") {
      if (f.size() != 2) syntax(line_no, "expected 'states <count>'");
      if (states) syntax(line_no, "duplicate 'states' line");
      states = parse_id(f[1], line_no);
      arcs.resize(*states);
    } else if (f[0] == "start" || f[0] == "final") {
      auto& slot = f[0] == "start" ? start : final_state;
      if (f.size() != 2) syntax(line_no, "expected '" + std::string(f[0]) + " <id>'");
      if (slot) syntax(line_no, "duplicate '" + std::string(f[0]) + "' line");
      slot = parse_id(f[1], line_no);
    } else if (f[0] == "arc") {
      if (!states) syntax(line_no, "'arc' before 'states'");
      if (f.size() != 4) syntax(line_no, "expected 'arc <from> <to> <word|*>'");
      StateId from = parse_id(f[1], line_no), to = parse_id(f[2], line_no);
      if (from >= *states || to >= *states) syntax(line_no, "state id out of range");
      arcs[from].push_back(Arc{to, f[3] == "*" ? Label::epsilon() : Label::word(std::string(f[3]))});
    } else {
      syntax(line_no, "unknown directive '" + std::string(f[0]) + "'");
    }
  }
  if (!header) throw ParseError("lattice: empty input", 0);
  if (!states) syntax(line_no, "missing 'states' line");
  if (!start) syntax(line_no, "missing 'start' line");
  if (!final_state) syntax(line_no, "missing 'final' line");
  Lattice l(*states, *start, *final_state, std::move(arcs));
  if (check) require_valid(l);
  return l;
}

}  // namespace mpgen
