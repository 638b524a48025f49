#include "affect/lexicon.hpp"

#include <istream>

#include "affect/errors.hpp"
#include "text_util.hpp"

namespace affect {
namespace {

constexpr std::string_view kHeader = "word,valence,arousal,dominance";

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

void validate(const LexiconEntry& e, const std::string& where) {
  if (e.word.empty()) throw InputError(where + ": empty word");
  for (char c : e.word) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
      throw InputError(where + ": word '" + e.word + "' contains whitespace");
    }
    if (c >= 'A' && c <= 'Z') throw InputError(where + ": word '" + e.word + "' is not lowercase");
  }
  for (Dimension d : kDimensions) {
    const double s = e.score(d);
    if (!(s >= kMinScore && s <= kMaxScore)) {
      throw InputError(where + ": " + std::string(dimension_name(d)) + " score " +
                       detail::format_double(s) + " for '" + e.word + "' outside [1, 9]");
    }
  }
}

}  // namespace

std::string_view dimension_name(Dimension d) {
  switch (d) {
    case Dimension::kValence:
      return "valence";
    case Dimension::kArousal:
      return "arousal";
    case Dimension::kDominance:
      return "dominance";
  }
  return "unknown";
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries) {
  std::size_t i = 0;
  for (auto& e : entries) {
    validate(e, "entry " + std::to_string(i++));
    if (entries_.contains(e.word)) throw InputError("duplicate lexicon word '" + e.word + "'");
    std::string key = e.word;
    entries_.emplace(std::move(key), std::move(e));
  }
}

const LexiconEntry* Lexicon::find(std::string_view word) const {
  const auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

Lexicon load_lexicon(std::istream& source) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!have_header && detail::read_line(source, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    std::string_view header = detail::trim(line);
    if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
    if (header != kHeader) {
      throw InputError("lexicon line " + std::to_string(line_no) + ": expected header '" +
                       std::string(kHeader) + "'");
    }
    have_header = true;
  }
  if (!have_header) throw InputError("empty lexicon");

  Lexicon::Map entries;
  while (detail::read_line(source, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const std::string where = "lexicon row at line " + std::to_string(line_no);
    const auto fields = detail::split_fields(line);
    if (fields.size() != 4) throw InputError(where + ": expected 4 fields, got " + std::to_string(fields.size()));

    LexiconEntry e;
    e.word = detail::to_lower(fields[0]);
    const auto v = detail::parse_double(fields[1]);
    const auto a = detail::parse_double(fields[2]);
    const auto d = detail::parse_double(fields[3]);
    if (!v || !a || !d) throw InputError(where + ": non-numeric score");
    e.valence = *v;
    e.arousal = *a;
    e.dominance = *d;
    validate(e, where);

    std::string key = e.word;
    if (!entries.emplace(key, std::move(e)).second) {
      throw InputError(where + ": duplicate lexicon word '" + key + "'");
    }
  }
  if (entries.empty()) throw InputError("empty lexicon");

  std::vector<LexiconEntry> list;
  list.reserve(entries.size());
  for (auto& [_, e] : entries) list.push_back(std::move(e));
  return Lexicon(std::move(list));
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (is_alpha(c)) {
      current.push_back(detail::ascii_lower(c));
    } else if (c == '\'' && !current.empty() && i + 1 < text.size() && is_alpha(text[i + 1]) &&
               is_alpha(text[i - 1])) {
      current.push_back(c);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::optional<LexiconEntry> lookup(const Lexicon& lexicon, std::string_view token) {
  if (const LexiconEntry* e = lexicon.find(token)) return *e;
  return std::nullopt;
}

}  // namespace affect
