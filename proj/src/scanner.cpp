#include "skillguard/scanner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>
#include <utility>

#include "skillguard/distance.hpp"
#include "skillguard/error.hpp"
#include "skillguard/io.hpp"
#include "skillguard/parallel.hpp"
#include "skillguard/text.hpp"

namespace skillguard {

std::string_view to_string(CinRelation r) {
  switch (r) {
    case CinRelation::same_spelling: return "same-spelling";
    case CinRelation::phonetic: return "phonetic";
    case CinRelation::paraphrase: return "paraphrase";
  }
  return "?";
}

namespace {

struct NameGroup {
  std::string name;
  std::vector<std::size_t> skills;  // indices into the catalog
  std::vector<Pronunciation> pronunciations;
  std::vector<PhonemeCounts> counts;  // parallel to pronunciations
  bool ok = false;
};

/// Pronunciations of all names bucketed by phoneme count, with their counts
/// stored inline so the count filter scans contiguous memory.
class LengthIndex {
 public:
  struct Entry {
    std::uint32_t group;
    std::uint32_t pronunciation;
    PhonemeCounts counts;
  };

  explicit LengthIndex(const std::vector<NameGroup>& groups) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (!groups[g].ok) continue;
      for (std::size_t p = 0; p < groups[g].pronunciations.size(); ++p) {
        auto len = groups[g].pronunciations[p].size();
        if (len >= _buckets.size()) _buckets.resize(len + 1);
        _buckets[len].push_back({static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(p), groups[g].counts[p]});
      }
    }
  }

  template <typename Fn>
  void for_each_near(std::size_t length, std::size_t window, Fn&& fn) const {
    std::size_t lo = length > window ? length - window : 0;
    std::size_t hi = std::min(_buckets.size() ? _buckets.size() - 1 : 0, length + window);
    for (std::size_t len = lo; len <= hi && len < _buckets.size(); ++len) {
      for (const auto& e : _buckets[len]) fn(e);
    }
  }

 private:
  std::vector<std::vector<Entry>> _buckets;
};

using Hits = std::vector<std::pair<std::size_t, double>>;  // (other group, cost)

void keep_min(std::map<std::size_t, double>& best, std::size_t g, double d) {
  auto [it, inserted] = best.emplace(g, d);
  if (!inserted && d < it->second) it->second = d;
}

Hits to_hits(const std::map<std::size_t, double>& best) {
  return Hits(best.begin(), best.end());
}

ColumnStats column_stats(const std::vector<CinFinding>& findings, std::size_t catalog_size,
                         bool (*keep)(const CinFinding&)) {
  std::map<std::string, std::size_t> per_skill;
  for (const auto& f : findings) {
    if (keep(f)) ++per_skill[f.skill_id];
  }
  ColumnStats s;
  s.skills = per_skill.size();
  if (catalog_size > 0) s.fraction = static_cast<double>(s.skills) / static_cast<double>(catalog_size);
  std::size_t total = 0;
  for (const auto& [id, n] : per_skill) {
    total += n;
    s.max_cins = std::max(s.max_cins, n);
  }
  if (s.skills > 0) s.avg_cins = static_cast<double>(total) / static_cast<double>(s.skills);
  return s;
}

}  // namespace

ScanReport scan(const std::vector<SkillRecord>& catalog, const Dictionary& dict,
                const CostMatrix& m, const VariantConfig& cfg, const ScanOptions& options) {
  if (options.threshold < 0.0 || !std::isfinite(options.threshold)) {
    throw InvalidArgument("scan threshold must be a non-negative number");
  }
  const double threshold = options.threshold;
  const unsigned threads = std::max(1u, options.threads);

  std::map<std::string, std::vector<std::size_t>> by_name;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    by_name[normalize_name(catalog[i].invocation_name)].push_back(i);
  }
  std::vector<NameGroup> groups;
  for (auto& [name, skills] : by_name) groups.push_back({name, std::move(skills), {}, {}, false});

  ScanReport report;
  report.threshold = threshold;
  report.skills = catalog.size();
  report.unique_names = groups.size();

  for (auto& g : groups) {
    try {
      g.pronunciations = phonemize_phrase(g.name, dict);
      for (const auto& p : g.pronunciations) g.counts.push_back(phoneme_counts(p));
      g.ok = true;
    } catch (const Error& e) {
      for (auto s : g.skills) {
        log_line("warn", "skill '" + catalog[s].id + "' excluded: " + e.what());
        report.excluded.push_back(catalog[s].id);
      }
    }
  }
  std::sort(report.excluded.begin(), report.excluded.end());

  const double g_min = m.min_indel();
  // Count filter: skip the DP when the count bound already exceeds the threshold.
  const double limit = threshold + kDistanceSlack;
  const std::size_t window =
      g_min > 0.0 ? static_cast<std::size_t>(std::floor(limit / g_min)) : SIZE_MAX / 2;
  LengthIndex index(groups);

  // Phonetic: unordered pairs (u < v) within the threshold.
  std::vector<Hits> phonetic(groups.size());
  parallel_for(groups.size(), threads, [&](std::size_t u, unsigned) {
    if (!groups[u].ok) return;
    std::map<std::size_t, double> best;
    if (options.exhaustive) {
      for (std::size_t v = u + 1; v < groups.size(); ++v) {
        if (!groups[v].ok) continue;
        double d = min_distance(groups[u].pronunciations, groups[v].pronunciations, m);
        if (d <= limit) keep_min(best, v, d);
      }
    } else {
      for (std::size_t pi = 0; pi < groups[u].pronunciations.size(); ++pi) {
        const auto& p = groups[u].pronunciations[pi];
        const auto& pc = groups[u].counts[pi];
        index.for_each_near(p.size(), window, [&](const LengthIndex::Entry& e) {
          if (e.group <= u) return;
          if (count_lower_bound(pc, e.counts, m) > limit) return;
          if (auto d = banded_distance_at_most(p, groups[e.group].pronunciations[e.pronunciation], m, threshold)) {
            keep_min(best, e.group, *d);
          }
        });
      }
    }
    phonetic[u] = to_hits(best);
  });

  // Paraphrase: for each target, candidates near any paraphrase form.
  std::vector<Hits> paraphrase(groups.size());  // indexed by target; hits are candidates
  parallel_for(groups.size(), threads, [&](std::size_t t, unsigned) {
    if (!groups[t].ok) return;
    std::vector<Pronunciation> form_prons;
    for (const auto& form : paraphrase_forms(groups[t].name, cfg)) {
      for (auto& p : phonemize_phrase(form, dict)) form_prons.push_back(std::move(p));
    }
    std::map<std::size_t, double> best;
    if (options.exhaustive) {
      for (std::size_t c = 0; c < groups.size(); ++c) {
        if (c == t || !groups[c].ok) continue;
        double d = min_distance(groups[c].pronunciations, form_prons, m);
        if (d <= limit) keep_min(best, c, d);
      }
    } else {
      for (const auto& fp : form_prons) {
        const auto fc = phoneme_counts(fp);
        index.for_each_near(fp.size(), window, [&](const LengthIndex::Entry& e) {
          if (e.group == t) return;
          if (count_lower_bound(e.counts, fc, m) > limit) return;
          if (auto d = banded_distance_at_most(groups[e.group].pronunciations[e.pronunciation], fp, m, threshold)) {
            keep_min(best, e.group, *d);
          }
        });
      }
    }
    paraphrase[t] = to_hits(best);
  });

  // One relation per ordered pair of names, keyed (attacker side, target).
  std::map<std::pair<std::size_t, std::size_t>, std::pair<CinRelation, double>> relation;
  for (std::size_t u = 0; u < groups.size(); ++u) {
    for (const auto& [v, d] : phonetic[u]) {
      relation[{u, v}] = {CinRelation::phonetic, d};
      relation[{v, u}] = {CinRelation::phonetic, d};
    }
  }
  for (std::size_t t = 0; t < groups.size(); ++t) {
    for (const auto& [c, d] : paraphrase[t]) relation.emplace(std::make_pair(c, t), std::make_pair(CinRelation::paraphrase, d));
  }

  auto& findings = report.findings;
  for (const auto& g : groups) {
    for (auto a : g.skills) {
      for (auto b : g.skills) {
        if (a != b) findings.push_back({catalog[a].id, catalog[b].id, CinRelation::same_spelling, 0.0});
      }
    }
  }
  for (const auto& [key, rel] : relation) {
    for (auto a : groups[key.first].skills) {
      for (auto b : groups[key.second].skills) {
        findings.push_back({catalog[a].id, catalog[b].id, rel.first, rel.second});
      }
    }
  }
  std::sort(findings.begin(), findings.end(), [](const CinFinding& x, const CinFinding& y) {
    return std::tie(x.skill_id, x.competitor_id) < std::tie(y.skill_id, y.competitor_id);
  });

  report.all = column_stats(findings, catalog.size(), [](const CinFinding&) { return true; });
  report.excluding_same_spelling = column_stats(findings, catalog.size(), [](const CinFinding& f) {
    return f.relation != CinRelation::same_spelling;
  });
  report.paraphrase = column_stats(findings, catalog.size(), [](const CinFinding& f) {
    return f.relation == CinRelation::paraphrase;
  });
  return report;
}

namespace {

nlohmann::json stats_json(const ColumnStats& s) {
  return {{"skills", s.skills}, {"fraction", s.fraction}, {"avg_cins", s.avg_cins},
          {"max_cins", s.max_cins}};
}

}  // namespace

nlohmann::json to_json(const ScanReport& report) {
  nlohmann::json findings = nlohmann::json::array();
  for (const auto& f : report.findings) {
    findings.push_back({{"skill_id", f.skill_id},
                        {"competitor_id", f.competitor_id},
                        {"relation", std::string(to_string(f.relation))},
                        {"cost", f.cost}});
  }
  return {
      {"format", "skillguard-scan-report"},
      {"version", 1},
      {"threshold", report.threshold},
      {"skills", report.skills},
      {"unique_invocation_names", report.unique_names},
      {"has_cin", stats_json(report.all)},
      {"has_cin_excluding_same_spelling", stats_json(report.excluding_same_spelling)},
      {"has_cin_by_paraphrase", stats_json(report.paraphrase)},
      {"excluded", report.excluded},
      {"findings", findings},
  };
}

std::string format_table(const ScanReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "skills: %zu  unique invocation names: %zu  threshold: %g\n",
                report.skills, report.unique_names, report.threshold);
  out << line;
  out << "column                          count   share    avg     max\n";
  auto row = [&](const char* label, const ColumnStats& s) {
    std::snprintf(line, sizeof line, "%-30s %6zu  %5.1f%%  %6.2f  %6zu\n", label, s.skills,
                  100.0 * s.fraction, s.avg_cins, s.max_cins);
    out << line;
  };
  row("has CIN", report.all);
  row("has CIN excl. same spelling", report.excluding_same_spelling);
  row("has CIN by paraphrase", report.paraphrase);
  if (report.partial()) out << "excluded (unpronounceable names): " << report.excluded.size() << '\n';
  return out.str();
}

}  // namespace skillguard
