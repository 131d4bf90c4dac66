#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "mpgen/error.hpp"
#include "mpgen/lm.hpp"

namespace mpgen {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<std::string>& gram) {
  std::string out;
  for (const auto& t : gram) out += (out.empty() ? "" : " ") + t;
  return out;
}

std::uint32_t crc_of(std::string_view bytes) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

std::string hex32(std::uint32_t v) {
  char buf[12];
  std::snprintf(buf, sizeof buf, "%08x", v);
  return buf;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t p = s.find(sep, start);
    out.emplace_back(s.substr(start, p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
  throw ModelError("model line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& s, std::size_t line) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') bad(line, "bad number '" + s + "'");
  return v;
}

std::uint64_t to_u64(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) bad(line, "bad integer '" + std::string(s) + "'");
  return v;
}

// key=value field of a metadata line.
std::string field(const std::vector<std::string>& parts, std::string_view key, std::size_t line) {
  for (const auto& p : parts)
    if (p.size() > key.size() && p.compare(0, key.size(), key) == 0 && p[key.size()] == '=')
      return p.substr(key.size() + 1);
  bad(line, "missing field '" + std::string(key) + "'");
}

}  // namespace

std::string write_model(const NGramModel& model) {
  std::ostringstream out;
  out << "NGM v1 order=" << model.order_ << " corpus_tokens=" << model.corpus_tokens_ << '\n';
  out << "sentences " << model.sentences_ << '\n';
  out << "config floor=" << num(model.config_.good_turing.floor)
      << " confidence=" << num(model.config_.good_turing.confidence)
      << " mode=" << (model.config_.good_turing.mode == GoodTuringOptions::Mode::kSimple ? "simple" : "turing")
      << " min_unseen=" << num(model.config_.min_unseen) << " floors_applied=" << model.floors_applied_ << '\n';
  for (std::size_t m = 0; m < model.good_turing_.size(); ++m) {
    const auto& gt = model.good_turing_[m];
    out << "gt order=" << m + 1 << " regime=" << regime_name(gt.regime) << " total=" << gt.total
        << " n1=" << gt.singletons << " unseen=" << num(gt.unseen_mass) << " intercept=" << num(gt.intercept)
        << " slope=" << num(gt.slope) << " switch=" << gt.switch_at << '\n';
    std::map<std::uint64_t, std::uint64_t> fof;
    for (const auto& [gram, e] : model.ngrams_[m])
      if (e.count > 0) ++fof[e.count];
    for (auto [r, n] : fof)
      out << "gtr " << m + 1 << ' ' << r << ' ' << n << ' ' << num(gt.raw.at(r)) << ' ' << num(gt.rstar.at(r))
          << '\n';
  }
  for (std::size_t m = 0; m < model.ngrams_.size(); ++m) {
    out << "\\" << m + 1 << "-grams:\n";
    for (const auto& [gram, e] : model.ngrams_[m]) out << join(gram) << '\t' << e.count << '\t' << num(e.log10prob) << '\n';
  }
  out << "\\unseen:\n";
  for (const auto& [context, mass] : model.unseen_) out << "UNSEEN " << join(context) << ' ' << num(mass) << '\n';
  out << "\\classes:\n";
  out << "class " << kNameClass << " capitalized\n";
  out << "class " << kNumberClass << " digit\n";
  out << "class " << kUnknown << " unseen\n";
  out << "\\end\n";
  std::string body = out.str();
  return body + "checksum " + hex32(crc_of(body)) + "\n";
}

NGramModel read_model(std::string_view text) {
  // Version first: another version may close the file differently.
  {
    std::string_view first = text.substr(0, text.find('\n'));
    auto head = split(first, ' ');
    if (head.size() < 2 || head[0] != "NGM") throw ModelError("not an NGM model file");
    if (head[1] != "v1") throw ModelError("unsupported model version '" + head[1] + "'");
  }
  std::size_t mark = text.rfind("checksum ");
  if (mark == std::string_view::npos || (mark != 0 && text[mark - 1] != '\n'))
    throw ModelError("model checksum failure: checksum line missing (truncated file?)");
  std::string_view body = text.substr(0, mark);
  std::string_view tail = text.substr(mark + 9);
  while (!tail.empty() && (tail.back() == '\n' || tail.back() == '\r')) tail.remove_suffix(1);
  if (tail != hex32(crc_of(body))) throw ModelError("model checksum failure");

  NGramModel model;
  std::vector<std::string> lines = split(body, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ModelError("empty model file");
  {
    auto head = split(lines[0], ' ');
    model.order_ = static_cast<int>(to_u64(field(head, "order", 1), 1));
    model.corpus_tokens_ = to_u64(field(head, "corpus_tokens", 1), 1);
    if (model.order_ != 2 && model.order_ != 3) bad(1, "order must be 2 or 3");
  }
  model.ngrams_.resize(model.order_);
  model.good_turing_.resize(model.order_);

  enum class Section { kMeta, kGrams, kUnseen, kClasses, kEnd } section = Section::kMeta;
  int grams_order = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    const std::string& line = lines[i];
    if (!line.empty() && line[0] == '\\') {
      if (line == "\\unseen:") {
        section = Section::kUnseen;
      } else if (line == "\\classes:") {
        section = Section::kClasses;
      } else if (line == "\\end") {
        section = Section::kEnd;
      } else if (line.size() == 9 && line.compare(2, 7, "-grams:") == 0) {
        grams_order = line[1] - '0';
        if (grams_order < 1 || grams_order > model.order_) bad(ln, "unexpected section " + line);
        section = Section::kGrams;
      } else {
        bad(ln, "unknown section " + line);
      }
      continue;
    }
    switch (section) {
      case Section::kMeta: {
        auto parts = split(line, ' ');
        if (parts[0] == "sentences" && parts.size() == 2) {
          model.sentences_ = to_u64(parts[1], ln);
        } else if (parts[0] == "config") {
          model.config_.good_turing.floor = to_double(field(parts, "floor", ln), ln);
          model.config_.good_turing.confidence = to_double(field(parts, "confidence", ln), ln);
          model.config_.good_turing.mode = field(parts, "mode", ln) == "turing" ? GoodTuringOptions::Mode::kTuring
                                                                               : GoodTuringOptions::Mode::kSimple;
          model.config_.min_unseen = to_double(field(parts, "min_unseen", ln), ln);
          model.floors_applied_ = to_u64(field(parts, "floors_applied", ln), ln);
        } else if (parts[0] == "gt") {
          std::uint64_t m = to_u64(field(parts, "order", ln), ln);
          if (m < 1 || m > static_cast<std::uint64_t>(model.order_)) bad(ln, "bad gt order");
          auto& gt = model.good_turing_[m - 1];
          std::string regime = field(parts, "regime", ln);
          gt.regime = regime == "identity"  ? GoodTuringEstimate::Regime::kIdentity
                      : regime == "turing"  ? GoodTuringEstimate::Regime::kTuring
                      : regime == "simple"  ? GoodTuringEstimate::Regime::kSimple
                                            : GoodTuringEstimate::Regime::kFallback;
          gt.total = to_u64(field(parts, "total", ln), ln);
          gt.singletons = to_u64(field(parts, "n1", ln), ln);
          gt.unseen_mass = to_double(field(parts, "unseen", ln), ln);
          gt.intercept = to_double(field(parts, "intercept", ln), ln);
          gt.slope = to_double(field(parts, "slope", ln), ln);
          gt.switch_at = to_u64(field(parts, "switch", ln), ln);
        } else if (parts[0] == "gtr" && parts.size() == 6) {
          std::uint64_t m = to_u64(parts[1], ln);
          if (m < 1 || m > static_cast<std::uint64_t>(model.order_)) bad(ln, "bad gtr order");
          std::uint64_t r = to_u64(parts[2], ln);
          model.good_turing_[m - 1].raw[r] = to_double(parts[4], ln);
          model.good_turing_[m - 1].rstar[r] = to_double(parts[5], ln);
        } else {
          bad(ln, "unknown metadata line");
        }
        break;
      }
      case Section::kGrams: {
        auto cols = split(line, '\t');
        if (cols.size() != 3) bad(ln, "expected '<ngram>\\t<count>\\t<log10prob>'");
        auto gram = split(cols[0], ' ');
        if (gram.size() != static_cast<std::size_t>(grams_order)) bad(ln, "n-gram has the wrong order");
        model.ngrams_[grams_order - 1][gram] = NGramEntry{to_u64(cols[1], ln), to_double(cols[2], ln)};
        break;
      }
      case Section::kUnseen: {
        auto parts = split(line, ' ');
        if (parts.size() < 3 || parts[0] != "UNSEEN") bad(ln, "expected 'UNSEEN <context> <mass>'");
        std::vector<std::string> context(parts.begin() + 1, parts.end() - 1);
        model.unseen_[context] = to_double(parts.back(), ln);
        break;
      }
      case Section::kClasses:
        if (line.rfind("class ", 0) != 0) bad(ln, "expected 'class <symbol> <rule>'");
        break;
      case Section::kEnd: bad(ln, "content after \\end");
    }
  }
  if (section != Section::kEnd) throw ModelError("model file has no \\end marker");
  model.finalize();
  return model;
}

}  // namespace mpgen
