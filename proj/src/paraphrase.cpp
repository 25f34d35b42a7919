#include "skillguard/paraphrase.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "skillguard/distance.hpp"
#include "skillguard/error.hpp"
#include "skillguard/text.hpp"

namespace skillguard {

VariantConfig VariantConfig::defaults() {
  return VariantConfig{
      {"my", "the", "some", "a", "me a", "me the", "tell me a", "play some", "open the",
       "start my", "mai"},
      {"please", "app", "skill", "for me", "plese", "to"},
  };
}

namespace {

std::vector<std::string> normalized_list(const nlohmann::json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) throw InvalidArgument(std::string("variant config: '") + key + "' must be an array");
  for (const auto& item : j.at(key)) {
    if (!item.is_string()) throw InvalidArgument(std::string("variant config: '") + key + "' entries must be strings");
    auto n = normalize_name(item.get<std::string>());
    if (n.empty()) throw InvalidArgument(std::string("variant config: empty entry in '") + key + "'");
    out.push_back(n);
  }
  return out;
}

}  // namespace

VariantConfig VariantConfig::from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("variant config: ") + e.what());
  }
  return VariantConfig{normalized_list(j, "prefixes"), normalized_list(j, "suffixes")};
}

VariantConfig VariantConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open variant config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string_view to_string(VariantKind k) {
  switch (k) {
    case VariantKind::prefix: return "prefix";
    case VariantKind::suffix: return "suffix";
    case VariantKind::both: return "both";
    case VariantKind::homophone: return "homophone";
  }
  return "?";
}

std::vector<Variant> generate_variants(std::string_view name, const VariantConfig& cfg) {
  std::string base = normalize_name(name);
  if (base.empty()) throw InvalidArgument("generate_variants: empty name");
  std::vector<Variant> out;
  auto emit = [&](std::string text, VariantKind kind) {
    if (text == base) return;
    for (const auto& v : out) {
      if (v.text == text) return;
    }
    out.push_back({std::move(text), kind, base});
  };
  for (const auto& p : cfg.prefixes) emit(p + " " + base, VariantKind::prefix);
  for (const auto& s : cfg.suffixes) emit(base + " " + s, VariantKind::suffix);
  for (const auto& p : cfg.prefixes) {
    for (const auto& s : cfg.suffixes) emit(p + " " + base + " " + s, VariantKind::both);
  }
  return out;
}

std::vector<Variant> homophone_variants(std::string_view name, const Dictionary& dict,
                                        const CostMatrix& m, double bound,
                                        std::span<const std::string> lexicon) {
  if (bound < 0.0) throw InvalidArgument("homophone_variants: negative bound");
  auto base = normalize_name(name);
  auto words = split_words(base);
  if (words.empty()) throw InvalidArgument("homophone_variants: empty name");

  std::vector<std::string> candidates;
  if (lexicon.empty()) {
    for (const auto& [word, alts] : dict.entries()) candidates.push_back(word);
  } else {
    for (const auto& w : lexicon) candidates.push_back(normalize_name(w));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  }

  std::vector<Variant> out;
  for (std::size_t pos = 0; pos < words.size(); ++pos) {
    auto own = phonemize_word(words[pos], dict);
    for (const auto& cand : candidates) {
      if (cand.empty() || cand == words[pos] || cand.find(' ') != std::string::npos) continue;
      std::vector<Pronunciation> theirs;
      try {
        theirs = phonemize_word(cand, dict);
      } catch (const InvalidArgument&) {
        continue;
      }
      if (!min_distance_at_most(own, theirs, m, bound)) continue;
      auto replaced = words;
      replaced[pos] = cand;
      out.push_back({join_words(replaced), VariantKind::homophone, base});
    }
  }
  return out;
}

std::vector<std::string> paraphrase_forms(std::string_view target, const VariantConfig& cfg) {
  auto base = normalize_name(target);
  std::vector<std::string> forms;
  auto add = [&](std::string text) {
    if (text != base && std::find(forms.begin(), forms.end(), text) == forms.end()) {
      forms.push_back(std::move(text));
    }
  };
  for (auto& v : generate_variants(base, cfg)) add(std::move(v.text));

  std::vector<std::string> tails{""};
  for (const auto& s : cfg.suffixes) tails.push_back(" " + s);
  for (const auto& p : cfg.prefixes) {
    auto words = split_words(p);
    for (std::size_t drop = 1; drop < words.size(); ++drop) {
      std::vector<std::string> kept(words.begin() + static_cast<std::ptrdiff_t>(drop), words.end());
      auto head = join_words(kept);
      for (const auto& tail : tails) add(head + " " + base + tail);
    }
  }
  return forms;
}

std::optional<double> paraphrase_cost(std::string_view candidate, std::string_view target,
                                      const VariantConfig& cfg, const Dictionary& dict,
                                      const CostMatrix& m, double bound) {
  auto own = phonemize_phrase(candidate, dict);
  std::optional<double> best;
  for (const auto& form : paraphrase_forms(target, cfg)) {
    auto d = min_distance_at_most(own, phonemize_phrase(form, dict), m, bound);
    if (d && (!best || *d < *best)) best = d;
  }
  return best;
}

bool paraphrase_match(std::string_view candidate, std::string_view target,
                      const VariantConfig& cfg, const Dictionary& dict, const CostMatrix& m,
                      double bound) {
  return paraphrase_cost(candidate, target, cfg, dict, m, bound).has_value();
}

}  // namespace skillguard
