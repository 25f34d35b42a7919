#include "skillguard/phoneme.hpp"

#include <sstream>

#include "skillguard/error.hpp"

namespace skillguard {

namespace {

constexpr std::array<std::string_view, kPhonemeCount> kSymbols = {
    "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH",
    "EH", "ER", "EY", "F",  "G",  "HH", "IH", "IY", "JH", "K",
    "L",  "M",  "N",  "NG", "OW", "OY", "P",  "R",  "S",  "SH",
    "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH"};

}  // namespace

std::string_view symbol(Phoneme p) { return kSymbols[slot(p)]; }

std::string_view slot_symbol(std::size_t s) {
  return s == kGapSlot ? std::string_view("-") : kSymbols.at(s);
}

bool is_vowel(Phoneme p) {
  switch (p) {
    case Phoneme::AA: case Phoneme::AE: case Phoneme::AH: case Phoneme::AO:
    case Phoneme::AW: case Phoneme::AY: case Phoneme::EH: case Phoneme::ER:
    case Phoneme::EY: case Phoneme::IH: case Phoneme::IY: case Phoneme::OW:
    case Phoneme::OY: case Phoneme::UH: case Phoneme::UW:
      return true;
    default:
      return false;
  }
}

std::optional<Phoneme> parse_phoneme(std::string_view text) {
  if (!text.empty() && text.back() >= '0' && text.back() <= '2') {
    text.remove_suffix(1);
  }
  for (std::size_t i = 0; i < kSymbols.size(); ++i) {
    if (kSymbols[i] == text) return static_cast<Phoneme>(i);
  }
  return std::nullopt;
}

std::optional<std::size_t> parse_slot(std::string_view text) {
  if (text == "-") return kGapSlot;
  for (std::size_t i = 0; i < kSymbols.size(); ++i) {
    if (kSymbols[i] == text) return i;
  }
  return std::nullopt;
}

Pronunciation parse_pronunciation(std::string_view text) {
  Pronunciation out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto p = parse_phoneme(tok);
    if (!p) throw InvalidArgument("unknown phoneme symbol '" + tok + "'");
    out.phonemes.push_back(*p);
  }
  if (out.empty()) throw InvalidArgument("empty pronunciation");
  return out;
}

std::string to_string(const Pronunciation& p) {
  std::string out;
  for (auto ph : p.phonemes) {
    if (!out.empty()) out += ' ';
    out += symbol(ph);
  }
  return out;
}

}  // namespace skillguard
