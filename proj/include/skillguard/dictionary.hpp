#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "skillguard/phoneme.hpp"

namespace skillguard {

/// Pronouncing dictionary: lowercased headword -> alternative pronunciations
/// in the order they were first seen. Immutable once built; concurrent reads
/// are safe.
class Dictionary {
 public:
  /// Adds a pronunciation under `word` (case-insensitive). Duplicate
  /// pronunciations of the same word are merged.
  void add(std::string_view word, Pronunciation pronunciation);

  /// Alternatives for `word`, or nullptr when the word is absent.
  const std::vector<Pronunciation>* find(std::string_view word) const;

  bool contains(std::string_view word) const { return find(word) != nullptr; }
  std::size_t size() const { return _entries.size(); }
  const std::map<std::string, std::vector<Pronunciation>, std::less<>>& entries() const {
    return _entries;
  }

 private:
  std::map<std::string, std::vector<Pronunciation>, std::less<>> _entries;
};

enum class ParseMode { strict, lenient };

struct ParseIssue {
  std::size_t line;
  std::string message;
};

struct DictionaryParseResult {
  Dictionary dictionary;
  std::size_t accepted_lines = 0;
  std::vector<ParseIssue> skipped;
};

/// Reads CMU-format text: `HEADWORD[(n)]  PH1 PH2 ...`, ";;;" comment lines,
/// optional trailing "# ..." annotations. Stress digits are stripped and
/// "(n)" variants merge into one entry. In strict mode the first bad line
/// throws ParseError; in lenient mode it is recorded and skipped.
DictionaryParseResult parse_dictionary(std::istream& in, ParseMode mode = ParseMode::lenient);
DictionaryParseResult load_dictionary(const std::string& path, ParseMode mode = ParseMode::lenient);

/// Writes the dictionary back out in CMU format (alternatives as "word(2)", ...).
void write_dictionary(std::ostream& out, const Dictionary& dict);

/// Deterministic letter-to-sound rules for out-of-vocabulary words.
/// Throws InvalidArgument if the word has no letters.
Pronunciation g2p_fallback(std::string_view word);

/// Alternatives for a single normalized word: dictionary entry if present,
/// otherwise the rule-based fallback.
std::vector<Pronunciation> phonemize_word(std::string_view word, const Dictionary& dict);

/// Upper bound on alternatives produced for one phrase.
inline constexpr std::size_t kMaxPhraseAlternatives = 64;

/// Cross product of per-word alternatives, concatenated without boundary
/// markers. When the product exceeds kMaxPhraseAlternatives the word with the
/// most alternatives (last such word on ties) is trimmed to its leading
/// alternatives until the product fits. Throws InvalidArgument for a phrase
/// that is empty after normalization.
std::vector<Pronunciation> phonemize_phrase(std::string_view phrase, const Dictionary& dict);

}  // namespace skillguard
