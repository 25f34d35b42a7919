#include "skillguard/catalog.hpp"

#include <fstream>
#include <istream>
#include <unordered_set>

#include "skillguard/error.hpp"
#include "skillguard/text.hpp"

namespace skillguard {

namespace {

std::string optional_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  if (!j.at(key).is_string()) throw InvalidArgument(std::string("field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

}  // namespace

SkillRecord skill_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("skill record must be a JSON object");
  SkillRecord s;
  s.id = optional_string(j, "id");
  s.display_name = optional_string(j, "display_name");
  s.invocation_name = optional_string(j, "invocation_name");
  s.author = optional_string(j, "author");
  s.category = optional_string(j, "category");
  if (s.id.empty()) throw InvalidArgument("skill record missing 'id'");
  if (trim(s.invocation_name).empty()) {
    throw InvalidArgument("skill '" + s.id + "' missing 'invocation_name'");
  }
  if (j.contains("description") && !j.at("description").is_null()) {
    const auto& d = j.at("description");
    if (d.is_string()) {
      s.description = split_sentences(d.get<std::string>());
    } else if (d.is_array()) {
      for (const auto& sentence : d) {
        if (!sentence.is_string()) throw InvalidArgument("description entries must be strings");
        const auto& raw = sentence.get_ref<const std::string&>();
        auto t = trim(raw);
        if (!t.empty()) s.description.emplace_back(t);
      }
    } else {
      throw InvalidArgument("'description' must be a string or an array of strings");
    }
  }
  return s;
}

nlohmann::json to_json(const SkillRecord& s) {
  nlohmann::json j;
  j["id"] = s.id;
  j["display_name"] = s.display_name;
  j["invocation_name"] = s.invocation_name;
  if (!s.author.empty()) j["author"] = s.author;
  if (!s.description.empty()) j["description"] = s.description;
  if (!s.category.empty()) j["category"] = s.category;
  return j;
}

std::vector<SkillRecord> parse_catalog(std::istream& in) {
  std::vector<SkillRecord> out;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    SkillRecord s;
    try {
      s = skill_from_json(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, e.what());
    } catch (const InvalidArgument& e) {
      throw ParseError(line_no, e.what());
    }
    if (!ids.insert(s.id).second) throw ParseError(line_no, "duplicate skill id '" + s.id + "'");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SkillRecord> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open catalog '" + path + "'");
  return parse_catalog(in);
}

const SkillRecord* find_skill(const std::vector<SkillRecord>& catalog, const std::string& id) {
  for (const auto& s : catalog) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

}  // namespace skillguard
