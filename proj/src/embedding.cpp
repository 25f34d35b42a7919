#include "skillguard/embedding.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <utility>

#include "skillguard/error.hpp"
#include "skillguard/text.hpp"

namespace skillguard {

SentenceVector::SentenceVector(std::vector<double> values) : _values(std::move(values)) {
  double sq = 0.0;
  for (std::size_t i = 0; i < _values.size(); ++i) {
    if (_values[i] == 0.0) continue;
    sq += _values[i] * _values[i];
    _nonzero.push_back(static_cast<std::uint32_t>(i));
  }
  _norm = std::sqrt(sq);
}

SentenceVector SentenceVector::scaled(double factor) const {
  std::vector<double> v = _values;
  for (auto& x : v) x *= factor;
  return SentenceVector(std::move(v));
}

namespace {

// Sorted for binary search.
constexpr std::array<std::string_view, 125> kStopWords = {
    "a", "about", "alright", "am", "an", "and", "any", "are",
    "aren", "as", "at", "be", "been", "being", "both", "but",
    "by", "can", "could", "d", "did", "didn", "do", "does",
    "doesn", "doing", "don", "down", "each", "few", "for", "from",
    "had", "has", "have", "having", "he", "her", "here", "hers",
    "him", "his", "hmm", "how", "i", "if", "in", "into",
    "is", "isn", "it", "its", "just", "let", "lets", "ll",
    "m", "may", "me", "might", "more", "most", "must", "my",
    "myself", "nor", "now", "o", "of", "oh", "ok", "okay",
    "on", "only", "or", "other", "our", "ours", "out", "over",
    "own", "please", "re", "s", "same", "shall", "she", "should",
    "so", "some", "such", "t", "than", "that", "the", "their",
    "them", "then", "there", "these", "they", "this", "those", "to",
    "too", "uh", "um", "under", "up", "ve", "very", "was",
    "we", "well", "were", "what", "which", "who", "whom", "will",
    "with", "you", "your", "yours", "yourself",
};

// Word forms folded onto one term so common rewordings of system prompts land
// in the same bin. Sorted by form.
constexpr std::array<std::pair<std::string_view, std::string_view>, 81> kSynonymClasses = {{
    {"activate", "enable"}, {"activated", "enable"}, {"activates", "enable"}, {"activating", "enable"},
    {"app", "skill"}, {"application", "skill"}, {"applications", "skill"}, {"apps", "skill"},
    {"bye", "goodbye"}, {"chat", "talk"}, {"close", "exit"}, {"closed", "exit"}, {"closes", "exit"},
    {"closing", "exit"}, {"confirm", "verify"}, {"confirmed", "verify"}, {"confirms", "verify"},
    {"enable", "enable"}, {"enabled", "enable"}, {"enables", "enable"}, {"enabling", "enable"},
    {"end", "exit"}, {"ended", "exit"}, {"ending", "exit"}, {"ends", "exit"}, {"error", "problem"},
    {"errors", "problem"}, {"exit", "exit"}, {"exited", "exit"}, {"exiting", "exit"}, {"exits", "exit"},
    {"goodbye", "goodbye"}, {"headlines", "news"}, {"issue", "problem"}, {"issues", "problem"},
    {"latest", "latest"}, {"launch", "open"}, {"launched", "open"}, {"launches", "open"},
    {"launching", "open"}, {"leave", "exit"}, {"leaves", "exit"}, {"leaving", "exit"}, {"music", "music"},
    {"newest", "latest"}, {"news", "news"}, {"open", "open"}, {"opened", "open"}, {"opening", "open"},
    {"opens", "open"}, {"passcode", "password"}, {"password", "password"}, {"passwords", "password"},
    {"pin", "password"}, {"problem", "problem"}, {"problems", "problem"}, {"quit", "exit"}, {"quits", "exit"},
    {"quitting", "exit"}, {"recommend", "recommend"}, {"recommended", "recommend"},
    {"recommending", "recommend"}, {"recommends", "recommend"}, {"skill", "skill"}, {"skills", "skill"},
    {"song", "music"}, {"songs", "music"}, {"speak", "talk"}, {"speaking", "talk"}, {"speaks", "talk"},
    {"suggest", "recommend"}, {"suggested", "recommend"}, {"suggesting", "recommend"},
    {"suggests", "recommend"}, {"talk", "talk"}, {"talking", "talk"}, {"talks", "talk"}, {"tunes", "music"},
    {"verified", "verify"}, {"verifies", "verify"}, {"verify", "verify"},
}};

std::uint64_t seeded_hash(std::string_view text) {
  static const std::uint64_t seed = fnv1a64(BaselineEmbedding::kHashSeed);
  return fnv1a64(text, seed);
}

}  // namespace

bool BaselineEmbedding::is_stop_word(std::string_view token) {
  return std::binary_search(kStopWords.begin(), kStopWords.end(), token);
}

std::string BaselineEmbedding::normalize_term(std::string_view token) {
  auto it = std::lower_bound(kSynonymClasses.begin(), kSynonymClasses.end(), token,
                             [](const auto& entry, std::string_view t) { return entry.first < t; });
  if (it != kSynonymClasses.end() && it->first == token) return std::string(it->second);
  return stem(token);
}

std::string BaselineEmbedding::stem(std::string_view token) {
  std::string t(token);
  auto strip = [&](std::string_view suffix, std::string_view replacement) {
    if (t.size() >= suffix.size() + 3 && t.ends_with(suffix)) {
      t = t.substr(0, t.size() - suffix.size()) + std::string(replacement);
      return true;
    }
    return false;
  };
  if (strip("ies", "y")) return t;
  if (strip("sses", "ss")) return t;
  if (strip("ing", "")) return t;
  if (strip("ed", "")) return t;
  if (strip("ly", "")) return t;
  if (t.size() >= 4 && t.ends_with('s') && !t.ends_with("ss") && !t.ends_with("us") &&
      !t.ends_with("is")) {
    t.pop_back();
  }
  return t;
}

std::vector<std::string> BaselineEmbedding::terms(std::string_view sentence) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty() && !is_stop_word(cur)) out.push_back(normalize_term(cur));
    cur.clear();
  };
  for (unsigned char c : sentence) {
    if (std::isalnum(c)) {
      cur += static_cast<char>(std::tolower(c));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::size_t BaselineEmbedding::unigram_bin(std::string_view term) {
  return seeded_hash(term) % kUnigramBins;
}

std::size_t BaselineEmbedding::bigram_bin(std::string_view first, std::string_view second) {
  std::string joined;
  joined.reserve(first.size() + second.size() + 1);
  joined.append(first).append(1, ' ').append(second);
  return kUnigramBins + seeded_hash(joined) % (kDimension - kUnigramBins);
}

SentenceVector BaselineEmbedding::embed(std::string_view sentence) const {
  auto ts = terms(sentence);
  std::map<std::string, std::size_t> unigrams;
  std::map<std::pair<std::string, std::string>, std::size_t> bigrams;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    ++unigrams[ts[i]];
    if (i + 1 < ts.size()) ++bigrams[{ts[i], ts[i + 1]}];
  }
  std::vector<double> v(kDimension, 0.0);
  for (const auto& [term, tf] : unigrams) {
    v[unigram_bin(term)] += 1.0 + std::log(static_cast<double>(tf));
  }
  for (const auto& [pair, tf] : bigrams) {
    v[bigram_bin(pair.first, pair.second)] += 1.0 + std::log(static_cast<double>(tf));
  }
  return SentenceVector(std::move(v));
}

std::unique_ptr<EmbeddingProvider> make_provider(std::string_view key) {
  if (key == "baseline") return std::make_unique<BaselineEmbedding>();
  throw InvalidArgument("unknown embedding provider '" + std::string(key) + "'");
}

double sentence_relevance(const SentenceVector& a, const SentenceVector& b) {
  if (a.dimension() != b.dimension()) throw InvalidArgument("sentence vectors differ in dimension");
  if (a.norm() == 0.0 || b.norm() == 0.0) return 0.0;
  const auto& sparse = a.nonzero().size() <= b.nonzero().size() ? a : b;
  const auto& dense = &sparse == &a ? b : a;
  double dot = 0.0;
  for (auto i : sparse.nonzero()) dot += sparse.values()[i] * dense.values()[i];
  return std::clamp(std::abs(dot) / (a.norm() * b.norm()), 0.0, 1.0);
}

double sentence_relevance(std::string_view a, std::string_view b, const EmbeddingProvider& provider) {
  return sentence_relevance(provider.embed(a), provider.embed(b));
}

}  // namespace skillguard
