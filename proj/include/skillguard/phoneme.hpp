#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skillguard {

/// The 39 ARPABET symbols of General American English (stress removed).
enum class Phoneme : std::uint8_t {
  AA, AE, AH, AO, AW, AY, B,  CH, D,  DH, EH, ER, EY,
  F,  G,  HH, IH, IY, JH, K,  L,  M,  N,  NG, OW, OY,
  P,  R,  S,  SH, T,  TH, UH, UW, V,  W,  Y,  Z,  ZH,
};

inline constexpr std::size_t kPhonemeCount = 39;

/// Row/column count of cost and frequency tables: every phoneme plus the gap.
inline constexpr std::size_t kSlotCount = kPhonemeCount + 1;
inline constexpr std::size_t kGapSlot = kPhonemeCount;

constexpr std::size_t slot(Phoneme p) { return static_cast<std::size_t>(p); }

std::string_view symbol(Phoneme p);

/// Symbol for a table slot; the gap slot renders as "-".
std::string_view slot_symbol(std::size_t s);

bool is_vowel(Phoneme p);

/// Parses a bare or stress-marked ARPABET symbol ("AE", "AE1"). Case-sensitive.
std::optional<Phoneme> parse_phoneme(std::string_view text);

/// Inverse of slot_symbol.
std::optional<std::size_t> parse_slot(std::string_view text);

/// Ordered phoneme sequence for one way of saying a word or phrase.
struct Pronunciation {
  std::vector<Phoneme> phonemes;

  std::size_t size() const { return phonemes.size(); }
  bool empty() const { return phonemes.empty(); }
  Phoneme operator[](std::size_t i) const { return phonemes[i]; }

  friend auto operator<=>(const Pronunciation&, const Pronunciation&) = default;
};

/// Parses a whitespace-separated phoneme list; throws InvalidArgument on an
/// unknown symbol or an empty list.
Pronunciation parse_pronunciation(std::string_view text);

std::string to_string(const Pronunciation& p);

}  // namespace skillguard
