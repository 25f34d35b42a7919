#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skillguard/cost_matrix.hpp"
#include "skillguard/dictionary.hpp"

namespace skillguard {

/// Invocation-utterance fragments an attacker can wrap around a target name.
struct VariantConfig {
  std::vector<std::string> prefixes;
  std::vector<std::string> suffixes;

  /// 11 prefixes and 6 suffixes gathered from common invocation phrasing.
  static VariantConfig defaults();

  /// Reads {"prefixes": [...], "suffixes": [...]}; entries are normalized and
  /// empty ones rejected.
  static VariantConfig load(const std::string& path);
  static VariantConfig from_json_text(std::string_view text);
};

enum class VariantKind { prefix, suffix, both, homophone };

std::string_view to_string(VariantKind k);

struct Variant {
  std::string text;
  VariantKind kind;
  std::string source;

  friend bool operator==(const Variant&, const Variant&) = default;
};

/// prefix+name for every prefix, then name+suffix, then prefix+name+suffix,
/// each in config order; duplicates dropped.
std::vector<Variant> generate_variants(std::string_view name, const VariantConfig& cfg);

/// Single-word substitutions: for each word of `name`, every lexicon word
/// (other than the word itself) whose best pronunciation distance to it is
/// within `bound`. Ordered by word position, then candidate spelling. With no
/// lexicon the whole dictionary is searched.
std::vector<Variant> homophone_variants(std::string_view name, const Dictionary& dict,
                                        const CostMatrix& m, double bound,
                                        std::span<const std::string> lexicon = {});

/// Every phrase a candidate is compared against when testing whether it
/// paraphrases `target`: the generated variants plus "absorbed" forms, where
/// leading words of a multi-word prefix are taken by the assistant as the
/// trigger ("tell me a dog fact" launches "me a dog fact").
std::vector<std::string> paraphrase_forms(std::string_view target, const VariantConfig& cfg);

/// Lowest phrase distance from `candidate` to any paraphrase form of `target`
/// when it is within `bound`.
std::optional<double> paraphrase_cost(std::string_view candidate, std::string_view target,
                                      const VariantConfig& cfg, const Dictionary& dict,
                                      const CostMatrix& m, double bound);

bool paraphrase_match(std::string_view candidate, std::string_view target,
                      const VariantConfig& cfg, const Dictionary& dict, const CostMatrix& m,
                      double bound);

}  // namespace skillguard
