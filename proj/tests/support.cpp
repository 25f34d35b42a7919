#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "skillguard/distance.hpp"
#include "skillguard/text.hpp"

namespace skillguard::testing {

namespace fs = std::filesystem;

std::string data_path(const std::string& relative) { return (fs::path(SKILLGUARD_DATA_DIR) / relative).string(); }

const Dictionary& cmudict() {
  static const Dictionary dict = load_dictionary(data_path("cmudict/cmudict.dict")).dictionary;
  return dict;
}

const CostMatrix& wc_matrix() {
  static const CostMatrix m = load_matrix(data_path("wc_matrix.tsv"));
  return m;
}

Pronunciation pron(const std::string& text) { return parse_pronunciation(text); }

Pronunciation random_pronunciation(Rng& rng, std::size_t min_len, std::size_t max_len) {
  Pronunciation p;
  auto len = min_len + rng.below(max_len - min_len + 1);
  for (std::size_t i = 0; i < len; ++i) p.phonemes.push_back(static_cast<Phoneme>(rng.below(kPhonemeCount)));
  return p;
}

CostMatrix random_matrix(Rng& rng, double lo) {
  CostMatrix m;
  for (std::size_t a = 0; a < kSlotCount; ++a) {
    for (std::size_t b = a + 1; b < kSlotCount; ++b) {
      // Quantized so ties between edit scripts actually occur.
      double step = static_cast<double>(rng.below(17)) / 16.0;
      m.set(a, b, lo + (1.0 - lo) * step);
    }
  }
  return m;
}

namespace {

void enumerate(const Pronunciation& a, const Pronunciation& b, const CostMatrix& m, std::size_t i, std::size_t j,
               double acc, double& best) {
  if (i == a.size() && j == b.size()) {
    best = std::min(best, acc);
    return;
  }
  if (i < a.size() && j < b.size()) {
    enumerate(a, b, m, i + 1, j + 1, acc + m.substitution(a[i], b[j]), best);
  }
  if (i < a.size()) enumerate(a, b, m, i + 1, j, acc + m.deletion(a[i]), best);
  if (j < b.size()) enumerate(a, b, m, i, j + 1, acc + m.insertion(b[j]), best);
}

}  // namespace

double brute_force_distance(const Pronunciation& a, const Pronunciation& b, const CostMatrix& m) {
  double best = std::numeric_limits<double>::infinity();
  enumerate(a, b, m, 0, 0, 0.0, best);
  return best;
}

TempDir::TempDir() {
  static std::uint64_t counter = 0;
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = fs::temp_directory_path() /
                     ("skillguard-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    if (fs::create_directory(candidate)) {
      _path = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(_path, ec);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

void write_catalog(const std::string& path, const std::vector<SkillRecord>& catalog) {
  std::ofstream out(path, std::ios::binary);
  for (const auto& s : catalog) out << to_json(s).dump() << "\n";
}

SkillRecord skill(const std::string& id, const std::string& name) {
  SkillRecord s;
  s.id = id;
  s.invocation_name = name;
  s.display_name = name;
  return s;
}

const std::vector<std::string>& plain_words() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> out;
    for (const auto& [word, prons] : cmudict().entries()) {
      if (prons.size() != 1 || word.size() < 3 || word.size() > 8) continue;
      if (!std::all_of(word.begin(), word.end(), [](char c) { return c >= 'a' && c <= 'z'; })) continue;
      out.push_back(word);
    }
    return out;
  }();
  return words;
}

std::vector<SkillRecord> random_catalog(std::size_t size, std::uint64_t seed) {
  const auto& words = plain_words();
  Rng rng(seed);
  // A few thousand words so names repeat words the way real catalogs do.
  std::vector<std::string> pool;
  for (int i = 0; i < 3000; ++i) pool.push_back(words[rng.below(words.size())]);
  static constexpr std::size_t kWordCounts[] = {1, 2, 2, 2, 3, 3, 4};
  std::vector<SkillRecord> out;
  for (std::size_t i = 0; i < size; ++i) {
    auto n = kWordCounts[rng.below(std::size(kWordCounts))];
    std::vector<std::string> name;
    for (std::size_t k = 0; k < n; ++k) name.push_back(pool[rng.below(pool.size())]);
    char id[32];
    std::snprintf(id, sizeof id, "s%05zu", i);
    out.push_back(skill(id, join_words(name)));
  }
  return out;
}

namespace {

struct WordPairs {
  std::vector<std::pair<std::string, std::string>> homophones;
  std::vector<std::pair<std::string, std::string>> one_edit;  // one extra phoneme
};

const WordPairs& word_pairs() {
  static const WordPairs pairs = [] {
    WordPairs out;
    std::map<Pronunciation, std::vector<std::string>> by_pron;
    for (const auto& w : plain_words()) by_pron[cmudict().find(w)->front()].push_back(w);
    for (const auto& [p, ws] : by_pron) {
      if (ws.size() >= 2) out.homophones.emplace_back(ws[0], ws[1]);
      if (p.size() < 3) continue;
      for (std::size_t i = 0; i < p.size(); ++i) {
        Pronunciation shorter = p;
        shorter.phonemes.erase(shorter.phonemes.begin() + static_cast<std::ptrdiff_t>(i));
        auto it = by_pron.find(shorter);
        if (it != by_pron.end()) {
          out.one_edit.emplace_back(it->second.front(), ws.front());
          break;
        }
      }
    }
    return out;
  }();
  return pairs;
}

}  // namespace

PlantedCatalog planted_catalog(std::size_t size, std::size_t pairs, double threshold, std::uint64_t seed) {
  if (2 * pairs > size) throw std::invalid_argument("planted_catalog: too many pairs");
  const auto& words = plain_words();
  const auto& wp = word_pairs();
  const auto& dict = cmudict();
  const auto& m = wc_matrix();
  Rng rng(seed);
  PlantedCatalog out;
  out.threshold = threshold;
  std::set<std::string> used;
  auto fresh_word = [&] {
    for (;;) {
      auto w = words[rng.below(words.size())];
      if (used.insert(w).second) return w;
    }
  };
  auto add = [&](const std::string& name) {
    char id[32];
    std::snprintf(id, sizeof id, "p%04zu", out.skills.size());
    out.skills.push_back(skill(id, name));
    return out.skills.back().id;
  };

  const auto paraphrase_suffixes = VariantConfig::defaults().suffixes;
  for (std::size_t k = 0; k < pairs; ++k) {
    auto tail = fresh_word();
    std::string a, b;
    switch (k % 3) {
      case 0:
      case 1: {
        const auto& pool = k % 3 == 0 ? wp.homophones : wp.one_edit;
        for (;;) {
          const auto& [x, y] = pool[rng.below(pool.size())];
          if (used.count(x) || used.count(y)) continue;
          used.insert(x);
          used.insert(y);
          a = x + " " + tail;
          b = y + " " + tail;
          if (phrase_distance(a, b, dict, m).cost <= threshold) break;
        }
        break;
      }
      default:
        a = fresh_word() + " " + tail;
        b = a + " " + paraphrase_suffixes[rng.below(paraphrase_suffixes.size())];
        break;
    }
    auto ida = add(a);
    auto idb = add(b);
    out.planted.push_back({ida, idb, phrase_distance(a, b, dict, m).cost});
  }
  while (out.skills.size() < size) add(fresh_word() + " " + fresh_word());
  return out;
}

OracleRelation oracle_relation(const std::string& attacker, const std::string& target, const Dictionary& dict,
                               const CostMatrix& m, const VariantConfig& cfg, double threshold) {
  OracleRelation r;
  auto pa = phonemize_phrase(attacker, dict);
  auto pt = phonemize_phrase(target, dict);
  auto within = [&](const std::vector<Pronunciation>& xs, const std::vector<Pronunciation>& ys) {
    for (const auto& x : xs) {
      for (const auto& y : ys) {
        if (weighted_distance(x, y, m) <= threshold + 1e-9) return true;
      }
    }
    return false;
  };
  r.phonetic = within(pa, pt);
  for (const auto& form : paraphrase_forms(target, cfg)) {
    if (within(pa, phonemize_phrase(form, dict))) {
      r.paraphrase = true;
      break;
    }
  }
  return r;
}

}  // namespace skillguard::testing

namespace skillguard::testing {

std::vector<PronunciationPair> hand_corpus() {
  const char* const pairs[][2] = {
      {"T AH M EY T OW", "T AH M AA T OW"},  // substitute EY -> AA
      {"K AE T", "K AE T S"},                // insert S
      {"D AO G", "D AA G"},                  // substitute AO -> AA
      {"F AE K S", "F AE K T S"},            // insert T
      {"R UW T", "R AW T"},                  // substitute UW -> AW
      {"S IH T", "S IY T"},                  // substitute IH -> IY
      {"HH W AY", "W AY"},                   // delete HH
      {"EY AA", "EY AA"},                    // matches only
      {"N UW Z", "N Y UW Z"},                // insert Y
      {"P IY K AH N", "P IH K AA N"},        // substitute IY -> IH, AH -> AA
  };
  std::vector<PronunciationPair> out;
  for (const auto& p : pairs) out.emplace_back(pron(p[0]), pron(p[1]));
  return out;
}

std::vector<HandCell> hand_costs() {
  // Occurrence counts over all aligned positions (a match counts on both
  // sides): T 11, S 5, AA 5, EY 3, AH 3, UW 3, IH 2, IY 2, none 4, AO 1, AW 1,
  // HH 1, Y 1. Substitution counts are 1 per edit listed in hand_corpus(),
  // and IH/IY is observed once in each direction.
  return {
      {"EY", "AA", 1.0 - 1.0 / (3 + 5)},
      {"-", "S", 1.0 - 1.0 / (4 + 5)},
      {"AO", "AA", 1.0 - 1.0 / (1 + 5)},
      {"-", "T", 1.0 - 1.0 / (4 + 11)},
      {"UW", "AW", 1.0 - 1.0 / (3 + 1)},
      {"IH", "IY", 1.0 - 2.0 / (2 + 2)},
      {"HH", "-", 1.0 - 1.0 / (1 + 4)},
      {"-", "Y", 1.0 - 1.0 / (4 + 1)},
      {"AH", "AA", 1.0 - 1.0 / (3 + 5)},
  };
}

}  // namespace skillguard::testing
