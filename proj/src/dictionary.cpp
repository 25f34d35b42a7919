#include "skillguard/dictionary.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include "skillguard/error.hpp"
#include "skillguard/text.hpp"

namespace skillguard {

void Dictionary::add(std::string_view word, Pronunciation pronunciation) {
  if (pronunciation.empty()) throw InvalidArgument("empty pronunciation for '" + std::string(word) + "'");
  auto& alts = _entries[to_lower(word)];
  if (std::find(alts.begin(), alts.end(), pronunciation) == alts.end()) {
    alts.push_back(std::move(pronunciation));
  }
}

const std::vector<Pronunciation>* Dictionary::find(std::string_view word) const {
  auto it = _entries.find(word);
  if (it != _entries.end()) return &it->second;
  auto lower = to_lower(word);
  if (lower == word) return nullptr;
  it = _entries.find(lower);
  return it == _entries.end() ? nullptr : &it->second;
}

namespace {

// Strips a trailing "(n)" variant marker.
std::string_view headword_base(std::string_view head) {
  if (head.size() < 3 || head.back() != ')') return head;
  auto open = head.rfind('(');
  if (open == std::string_view::npos || open == 0) return head;
  auto digits = head.substr(open + 1, head.size() - open - 2);
  if (digits.empty()) return head;
  for (char c : digits) {
    if (c < '0' || c > '9') return head;
  }
  return head.substr(0, open);
}

}  // namespace

DictionaryParseResult parse_dictionary(std::istream& in, ParseMode mode) {
  DictionaryParseResult result;
  std::string raw;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& message) {
    if (mode == ParseMode::strict) throw ParseError(line_no, message);
    result.skipped.push_back({line_no, message});
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (line.starts_with(";;;")) continue;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto tokens = split_words(line);
    auto word = headword_base(tokens[0]);
    if (tokens.size() < 2) {
      fail("entry '" + tokens[0] + "' has no phonemes");
      continue;
    }
    Pronunciation p;
    std::string bad;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      auto ph = parse_phoneme(tokens[i]);
      if (!ph) {
        bad = tokens[i];
        break;
      }
      p.phonemes.push_back(*ph);
    }
    if (!bad.empty()) {
      fail("unknown phoneme symbol '" + bad + "' in entry '" + tokens[0] + "'");
      continue;
    }
    result.dictionary.add(word, std::move(p));
    ++result.accepted_lines;
  }
  return result;
}

DictionaryParseResult load_dictionary(const std::string& path, ParseMode mode) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dictionary '" + path + "'");
  return parse_dictionary(in, mode);
}

void write_dictionary(std::ostream& out, const Dictionary& dict) {
  for (const auto& [word, alts] : dict.entries()) {
    for (std::size_t i = 0; i < alts.size(); ++i) {
      out << word;
      if (i > 0) out << '(' << (i + 1) << ')';
      out << ' ' << to_string(alts[i]) << '\n';
    }
  }
}

namespace {

struct LetterRule {
  std::string_view graphemes;
  std::array<Phoneme, 2> phonemes;
  std::size_t count;
};

using P = Phoneme;

// Longest match wins; order within a length does not matter.
constexpr LetterRule kMultiLetterRules[] = {
    {"tch", {P::CH}, 1}, {"igh", {P::AY}, 1}, {"dge", {P::JH}, 1},
    {"sch", {P::S, P::K}, 2},
    {"sh", {P::SH}, 1}, {"ch", {P::CH}, 1}, {"th", {P::TH}, 1},
    {"ph", {P::F}, 1},  {"ck", {P::K}, 1},  {"ee", {P::IY}, 1},
    {"oo", {P::UW}, 1}, {"ng", {P::NG}, 1}, {"qu", {P::K, P::W}, 2},
    {"wh", {P::W}, 1},  {"ea", {P::IY}, 1}, {"ai", {P::EY}, 1},
    {"ay", {P::EY}, 1}, {"oa", {P::OW}, 1}, {"ou", {P::AW}, 1},
    {"ow", {P::OW}, 1}, {"oi", {P::OY}, 1}, {"oy", {P::OY}, 1},
    {"au", {P::AO}, 1}, {"aw", {P::AO}, 1}, {"ie", {P::IY}, 1},
    {"ey", {P::IY}, 1}, {"er", {P::ER}, 1}, {"ir", {P::ER}, 1},
    {"ur", {P::ER}, 1}, {"kn", {P::N}, 1},  {"wr", {P::R}, 1},
    {"gh", {P::G}, 1},  {"bb", {P::B}, 1},  {"cc", {P::K}, 1},
    {"dd", {P::D}, 1},  {"ff", {P::F}, 1},  {"gg", {P::G}, 1},
    {"ll", {P::L}, 1},  {"mm", {P::M}, 1},  {"nn", {P::N}, 1},
    {"pp", {P::P}, 1},  {"rr", {P::R}, 1},  {"ss", {P::S}, 1},
    {"tt", {P::T}, 1},  {"zz", {P::Z}, 1},
};

constexpr std::array<LetterRule, 26> kSingleLetterRules = {{
    {"a", {P::AE}, 1}, {"b", {P::B}, 1},  {"c", {P::K}, 1},  {"d", {P::D}, 1},
    {"e", {P::EH}, 1}, {"f", {P::F}, 1},  {"g", {P::G}, 1},  {"h", {P::HH}, 1},
    {"i", {P::IH}, 1}, {"j", {P::JH}, 1}, {"k", {P::K}, 1},  {"l", {P::L}, 1},
    {"m", {P::M}, 1},  {"n", {P::N}, 1},  {"o", {P::AA}, 1}, {"p", {P::P}, 1},
    {"q", {P::K}, 1},  {"r", {P::R}, 1},  {"s", {P::S}, 1},  {"t", {P::T}, 1},
    {"u", {P::AH}, 1}, {"v", {P::V}, 1},  {"w", {P::W}, 1},  {"x", {P::K, P::S}, 2},
    {"y", {P::IY}, 1}, {"z", {P::Z}, 1},
}};

bool is_vowel_letter(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

}  // namespace

Pronunciation g2p_fallback(std::string_view word) {
  std::string letters;
  for (unsigned char c : word) {
    char lc = static_cast<char>(std::tolower(c));
    if (lc >= 'a' && lc <= 'z') letters += lc;
  }
  if (letters.empty()) {
    throw InvalidArgument("no pronounceable letters in '" + std::string(word) + "'");
  }
  // Silent final e after a consonant ("cake").
  if (letters.size() > 2 && letters.back() == 'e' && !is_vowel_letter(letters[letters.size() - 2])) {
    letters.pop_back();
  }

  Pronunciation out;
  std::size_t i = 0;
  while (i < letters.size()) {
    std::string_view rest = std::string_view(letters).substr(i);
    const LetterRule* match = nullptr;
    for (const auto& rule : kMultiLetterRules) {
      if (rest.starts_with(rule.graphemes) &&
          (!match || rule.graphemes.size() > match->graphemes.size())) {
        match = &rule;
      }
    }
    if (match) {
      out.phonemes.insert(out.phonemes.end(), match->phonemes.begin(),
                          match->phonemes.begin() + static_cast<std::ptrdiff_t>(match->count));
      i += match->graphemes.size();
      continue;
    }
    char c = letters[i];
    char next = i + 1 < letters.size() ? letters[i + 1] : '\0';
    bool soft = next == 'e' || next == 'i' || next == 'y';
    if (c == 'c' && soft) {
      out.phonemes.push_back(P::S);
    } else if (c == 'y' && i == 0 && letters.size() > 1) {
      out.phonemes.push_back(P::Y);
    } else {
      const auto& rule = kSingleLetterRules[static_cast<std::size_t>(c - 'a')];
      out.phonemes.insert(out.phonemes.end(), rule.phonemes.begin(),
                          rule.phonemes.begin() + static_cast<std::ptrdiff_t>(rule.count));
    }
    ++i;
  }
  return out;
}

std::vector<Pronunciation> phonemize_word(std::string_view word, const Dictionary& dict) {
  if (const auto* alts = dict.find(word)) return *alts;
  if (word.find('\'') != std::string_view::npos) {
    std::string bare;
    for (char c : word) {
      if (c != '\'') bare += c;
    }
    if (const auto* alts = dict.find(bare)) return *alts;
  }
  return {g2p_fallback(word)};
}

std::vector<Pronunciation> phonemize_phrase(std::string_view phrase, const Dictionary& dict) {
  auto words = split_words(normalize_name(phrase));
  if (words.empty()) throw InvalidArgument("phrase '" + std::string(phrase) + "' has no words");

  std::vector<std::vector<Pronunciation>> per_word;
  per_word.reserve(words.size());
  for (const auto& w : words) per_word.push_back(phonemize_word(w, dict));

  std::vector<std::size_t> counts;
  for (const auto& alts : per_word) counts.push_back(alts.size());
  auto product = [&] {
    std::size_t p = 1;
    for (auto c : counts) p *= c;
    return p;
  };
  while (product() > kMaxPhraseAlternatives) {
    std::size_t widest = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] >= counts[widest]) widest = i;
    }
    --counts[widest];
  }

  std::vector<Pronunciation> out{Pronunciation{}};
  for (std::size_t w = 0; w < per_word.size(); ++w) {
    std::vector<Pronunciation> next;
    next.reserve(out.size() * counts[w]);
    for (const auto& prefix : out) {
      for (std::size_t a = 0; a < counts[w]; ++a) {
        Pronunciation joined = prefix;
        const auto& ph = per_word[w][a].phonemes;
        joined.phonemes.insert(joined.phonemes.end(), ph.begin(), ph.end());
        next.push_back(std::move(joined));
      }
    }
    out = std::move(next);
  }

  std::vector<Pronunciation> unique;
  unique.reserve(out.size());
  for (auto& p : out) {
    if (std::find(unique.begin(), unique.end(), p) == unique.end()) unique.push_back(std::move(p));
  }
  return unique;
}

}  // namespace skillguard
