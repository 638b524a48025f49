#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace affect {

/// The three affective scales every lexicon word is rated on.
enum class Dimension : std::size_t { kValence = 0, kArousal = 1, kDominance = 2 };

inline constexpr std::array<Dimension, 3> kDimensions = {Dimension::kValence, Dimension::kArousal,
                                                          Dimension::kDominance};

std::string_view dimension_name(Dimension d);

inline constexpr double kMinScore = 1.0;
inline constexpr double kMaxScore = 9.0;

struct LexiconEntry {
  std::string word;
  double valence = 0.0;
  double arousal = 0.0;
  double dominance = 0.0;

  double score(Dimension d) const {
    switch (d) {
      case Dimension::kValence:
        return valence;
      case Dimension::kArousal:
        return arousal;
      case Dimension::kDominance:
        return dominance;
    }
    return 0.0;
  }
};

/// Immutable word -> scores table. Words are lowercase single tokens, scores
/// lie in [1, 9]. Safe for concurrent reads.
class Lexicon {
 public:
  using Map = std::map<std::string, LexiconEntry, std::less<>>;

  Lexicon() = default;
  /// Validates every entry; throws InputError on duplicates or bad scores.
  explicit Lexicon(std::vector<LexiconEntry> entries);

  const LexiconEntry* find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Map& entries() const { return entries_; }

 private:
  Map entries_;
};

/// Reads the `word,valence,arousal,dominance` CSV format. Words are folded to
/// lowercase. Rejects duplicates, out-of-range scores and files with no rows.
Lexicon load_lexicon(std::istream& source);

/// Splits text into maximal runs of ASCII letters joined by internal
/// apostrophes, folded to lowercase. Everything else separates tokens.
std::vector<std::string> tokenize(std::string_view text);

std::optional<LexiconEntry> lookup(const Lexicon& lexicon, std::string_view token);

}  // namespace affect
