#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "skillguard/catalog.hpp"
#include "skillguard/cost_matrix.hpp"
#include "skillguard/dictionary.hpp"
#include "skillguard/forest.hpp"
#include "skillguard/paraphrase.hpp"
#include "skillguard/phoneme.hpp"

namespace skillguard::testing {

std::string data_path(const std::string& relative);

/// The bundled dictionary and the matrix derived from it, loaded once.
const Dictionary& cmudict();
const CostMatrix& wc_matrix();

Pronunciation pron(const std::string& text);

Pronunciation random_pronunciation(Rng& rng, std::size_t min_len, std::size_t max_len);

/// Random matrix with symmetric costs in [lo, 1] and a zero diagonal.
CostMatrix random_matrix(Rng& rng, double lo);

/// Minimum over every edit script, enumerated recursively without memoization.
double brute_force_distance(const Pronunciation& a, const Pronunciation& b, const CostMatrix& m);

/// Temporary directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  std::filesystem::path path() const { return _path; }
  std::string file(const std::string& name) const { return (_path / name).string(); }

 private:
  std::filesystem::path _path;
};

std::string slurp(const std::string& path);
void write_text(const std::string& path, const std::string& text);
void write_catalog(const std::string& path, const std::vector<SkillRecord>& catalog);

SkillRecord skill(const std::string& id, const std::string& name);

/// Dictionary words with exactly one pronunciation, letters only, 3 to 8
/// characters, in dictionary order.
const std::vector<std::string>& plain_words();

/// Random catalog of multi-word names drawn from plain_words().
std::vector<SkillRecord> random_catalog(std::size_t size, std::uint64_t seed);

struct PlantedPair {
  std::string first;   // skill id
  std::string second;  // skill id
  double distance;     // phrase distance at construction
};

struct PlantedCatalog {
  std::vector<SkillRecord> skills;
  std::vector<PlantedPair> planted;
  double threshold;
};

/// `size` skills of which 2 * `pairs` form planted near-duplicate pairs:
/// homophone word swaps, one-phoneme-edit word swaps and paraphrase forms.
PlantedCatalog planted_catalog(std::size_t size, std::size_t pairs, double threshold, std::uint64_t seed);

/// Reference CIN relation for an ordered (attacker, target) name pair with no
/// pruning: full DP over all pronunciations and paraphrase forms.
struct OracleRelation {
  bool phonetic = false;
  bool paraphrase = false;
};
OracleRelation oracle_relation(const std::string& attacker, const std::string& target, const Dictionary& dict,
                               const CostMatrix& m, const VariantConfig& cfg, double threshold);

}  // namespace skillguard::testing

namespace skillguard::testing {

/// Ten alternative-pronunciation pairs, each with a unique uniform-cost
/// alignment, and the cost cells counted by hand from those alignments.
std::vector<PronunciationPair> hand_corpus();

struct HandCell {
  const char* a;
  const char* b;
  double cost;
};
/// Every off-diagonal cell below 1; all others are 1 (or 0 on the diagonal).
std::vector<HandCell> hand_costs();

}  // namespace skillguard::testing
