#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace skillguard {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);

/// Lowercases, replaces every character other than [a-z0-9'] with a space,
/// drops apostrophes at word edges and collapses whitespace. This is the
/// canonical form of invocation names and user utterances.
std::string normalize_name(std::string_view s);

std::vector<std::string> split_words(std::string_view s);

std::string join_words(const std::vector<std::string>& words);

/// True if `needle` occurs as a contiguous run of whole words in `haystack`.
bool contains_word_sequence(const std::vector<std::string>& haystack,
                            const std::vector<std::string>& needle);

/// Splits free text into sentences on '.', '!' and '?'; empty pieces dropped.
std::vector<std::string> split_sentences(std::string_view text);

/// 64-bit FNV-1a, optionally continuing from a previous state.
std::uint64_t fnv1a64(std::string_view data,
                      std::uint64_t state = 0xcbf29ce484222325ULL);

std::string hex64(std::uint64_t v);

}  // namespace skillguard
