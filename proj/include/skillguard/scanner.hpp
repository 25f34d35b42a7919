#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "skillguard/catalog.hpp"
#include "skillguard/cost_matrix.hpp"
#include "skillguard/dictionary.hpp"
#include "skillguard/paraphrase.hpp"

namespace skillguard {

enum class CinRelation { same_spelling, phonetic, paraphrase };

std::string_view to_string(CinRelation r);

/// `competitor_id` is a competitive invocation name for `skill_id`. Symmetric
/// relations appear in both directions; a paraphrase is reported on the skill
/// whose name extends the other (the attacker side).
struct CinFinding {
  std::string skill_id;
  std::string competitor_id;
  CinRelation relation;
  double cost;

  friend bool operator==(const CinFinding&, const CinFinding&) = default;
};

/// Skills with at least one CIN in a report column, and CINs per such skill.
struct ColumnStats {
  std::size_t skills = 0;
  double fraction = 0.0;
  double avg_cins = 0.0;
  std::size_t max_cins = 0;

  friend bool operator==(const ColumnStats&, const ColumnStats&) = default;
};

struct ScanOptions {
  double threshold = 0.0;
  unsigned threads = 1;
  /// Compare every pair with the full dynamic program instead of the
  /// length-bucketed banded search. Reference path for testing.
  bool exhaustive = false;
};

struct ScanReport {
  double threshold = 0.0;
  std::size_t skills = 0;
  std::size_t unique_names = 0;
  ColumnStats all;
  ColumnStats excluding_same_spelling;
  ColumnStats paraphrase;
  std::vector<CinFinding> findings;  // sorted by (skill_id, competitor_id)
  std::vector<std::string> excluded;  // skill ids whose names could not be phonemized

  bool partial() const { return !excluded.empty(); }
  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

/// Finds competitive invocation names across a catalog. Names are compared
/// after normalization: equal names are same-spelling CINs; names within
/// `threshold` of each other are phonetic CINs; a name within `threshold` of
/// a paraphrase form of another name is a paraphrase CIN. One relation per
/// ordered pair, in that precedence.
ScanReport scan(const std::vector<SkillRecord>& catalog, const Dictionary& dict,
                const CostMatrix& m, const VariantConfig& cfg, const ScanOptions& options);

nlohmann::json to_json(const ScanReport& report);

/// Human-readable summary in the layout of a market measurement table.
std::string format_table(const ScanReport& report);

}  // namespace skillguard
