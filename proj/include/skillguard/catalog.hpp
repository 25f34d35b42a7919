#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace skillguard {

/// Market metadata for one skill.
struct SkillRecord {
  std::string id;
  std::string display_name;
  std::string invocation_name;
  std::string author;
  std::vector<std::string> description;  // sentences
  std::string category;
};

/// Accepts "description" as an array of sentences or as one string, which is
/// split on sentence punctuation. Throws InvalidArgument when "id" or
/// "invocation_name" is missing or empty.
SkillRecord skill_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SkillRecord& s);

/// JSONL, one record per line; blank lines ignored. Malformed lines and
/// duplicate ids raise ParseError with the line number.
std::vector<SkillRecord> parse_catalog(std::istream& in);
std::vector<SkillRecord> load_catalog(const std::string& path);

const SkillRecord* find_skill(const std::vector<SkillRecord>& catalog, const std::string& id);

}  // namespace skillguard
