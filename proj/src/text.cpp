#include "skillguard/text.hpp"

#include <cctype>
#include <cstdio>

namespace skillguard {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string normalize_name(std::string_view s) {
  std::string spaced;
  spaced.reserve(s.size());
  for (unsigned char c : s) {
    char lc = static_cast<char>(std::tolower(c));
    bool keep = (lc >= 'a' && lc <= 'z') || (lc >= '0' && lc <= '9') || lc == '\'';
    spaced += keep ? lc : ' ';
  }
  std::vector<std::string> words;
  for (auto& w : split_words(spaced)) {
    std::size_t b = w.find_first_not_of('\'');
    if (b == std::string::npos) continue;
    std::size_t e = w.find_last_not_of('\'');
    words.push_back(w.substr(b, e - b + 1));
  }
  return join_words(words);
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

bool contains_word_sequence(const std::vector<std::string>& haystack,
                            const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool all = true;
    for (std::size_t j = 0; j < needle.size() && all; ++j) {
      all = haystack[i + j] == needle[j];
    }
    if (all) return true;
  }
  return false;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    auto t = trim(cur);
    if (!t.empty()) out.emplace_back(t);
    cur.clear();
  };
  for (char c : text) {
    cur += c;
    if (c == '.' || c == '!' || c == '?') flush();
  }
  flush();
  return out;
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t state) {
  for (unsigned char c : data) {
    state ^= c;
    state *= 0x100000001b3ULL;
  }
  return state;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace skillguard
