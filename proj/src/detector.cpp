#include "skillguard/detector.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <istream>
#include <unordered_set>

#include "skillguard/error.hpp"
#include "skillguard/paraphrase.hpp"
#include "skillguard/text.hpp"

namespace skillguard {

namespace {

std::vector<std::string> read_entry_lines(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw Error(std::string("cannot open ") + what + " '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(t);
  }
  return out;
}

}  // namespace

Blacklist::Blacklist(std::vector<std::string> entries) : _entries(std::move(entries)) {
  if (std::find(_entries.begin(), _entries.end(), kSilentEntry) == _entries.end()) {
    _entries.emplace_back(kSilentEntry);
  }
  if (_entries.size() < 2) throw InvalidArgument("blacklist has no spoken entries");
}

Blacklist Blacklist::load(const std::string& path) { return Blacklist(read_entry_lines(path, "blacklist")); }

std::vector<std::string> Blacklist::spoken_entries() const {
  std::vector<std::string> out;
  for (const auto& e : _entries) {
    if (e != kSilentEntry) out.push_back(e);
  }
  return out;
}

SystemCommandList::SystemCommandList(std::vector<std::string> entries) : _entries(std::move(entries)) {
  if (_entries.empty()) throw InvalidArgument("system command list is empty");
}

SystemCommandList SystemCommandList::load(const std::string& path) {
  return SystemCommandList(read_entry_lines(path, "system command list"));
}

std::vector<std::string> SystemCommandList::expand(const std::vector<SkillRecord>& catalog) const {
  static constexpr std::string_view kSlot = "<name>";
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  auto add = [&](std::string s) {
    if (seen.insert(s).second) out.push_back(std::move(s));
  };
  for (const auto& e : _entries) {
    auto pos = e.find(kSlot);
    if (pos == std::string::npos) {
      add(e);
      continue;
    }
    for (const auto& skill : catalog) {
      std::string expanded = e;
      expanded.replace(pos, kSlot.size(), normalize_name(skill.invocation_name));
      add(std::move(expanded));
    }
  }
  return out;
}

bool is_silent_response(std::string_view text) {
  bool in_tag = false;
  for (char c : text) {
    if (c == '<') {
      in_tag = true;
    } else if (c == '>') {
      in_tag = false;
    } else if (!in_tag && !std::isspace(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

namespace {

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw InvalidArgument("SRC threshold must be in (0, 1]");
  }
}

}  // namespace

ResponseChecker::ResponseChecker(const Blacklist& blacklist, const EmbeddingProvider& provider,
                                 double threshold)
    : _provider(provider), _threshold(threshold), _entries(blacklist.spoken_entries()) {
  check_threshold(threshold);
  for (const auto& e : _entries) _vectors.push_back(provider.embed(e));
}

SrcVerdict ResponseChecker::check(std::string_view response) const {
  SrcVerdict v;
  if (is_silent_response(response)) {
    v.outcome = SrcOutcome::silent;
    v.matched = std::string(kSilentEntry);
    return v;
  }
  auto vec = _provider.embed(response);
  for (std::size_t i = 0; i < _vectors.size(); ++i) {
    double sr = sentence_relevance(vec, _vectors[i]);
    if (sr > v.max_sr) {
      v.max_sr = sr;
      v.matched = _entries[i];
    }
  }
  if (v.max_sr > _threshold) v.outcome = SrcOutcome::mimicry;
  return v;
}

SrcVerdict src_check(std::string_view response, const Blacklist& blacklist,
                     const EmbeddingProvider& provider, double threshold) {
  return ResponseChecker(blacklist, provider, threshold).check(response);
}

FeatureExtractor::FeatureExtractor(const SystemCommandList& syscmds, const std::vector<SkillRecord>& catalog,
                                   const EmbeddingProvider& provider)
    : _provider(provider) {
  for (const auto& c : syscmds.expand(catalog)) _commands.push_back(provider.embed(c));
  for (const auto& s : catalog) {
    auto words = split_words(normalize_name(s.invocation_name));
    if (!words.empty()) _names.push_back(std::move(words));
    auto& vecs = _descriptions[s.id];
    for (const auto& sentence : s.description) vecs.push_back(provider.embed(sentence));
  }
}

bool FeatureExtractor::names_a_skill(std::string_view utterance) const {
  auto words = split_words(normalize_name(utterance));
  return std::any_of(_names.begin(), _names.end(),
                     [&](const auto& name) { return contains_word_sequence(words, name); });
}

const std::vector<SentenceVector>& FeatureExtractor::description_vectors(
    const SkillRecord& skill, std::vector<SentenceVector>& scratch) const {
  if (auto it = _descriptions.find(skill.id); it != _descriptions.end()) return it->second;
  for (const auto& sentence : skill.description) scratch.push_back(_provider.embed(sentence));
  return scratch;
}

FeatureVector FeatureExtractor::extract(std::string_view utterance,
                                        const std::optional<std::string>& prior_response,
                                        const SkillRecord& skill) const {
  if (trim(utterance).empty()) throw InvalidArgument("extract_features: empty utterance");
  FeatureVector fv;
  auto u = _provider.embed(utterance);

  double max_sr = 0.0, sum_sr = 0.0;
  for (const auto& c : _commands) {
    double sr = sentence_relevance(u, c);
    max_sr = std::max(max_sr, sr);
    sum_sr += sr;
  }
  fv[0] = max_sr;
  fv[1] = _commands.empty() ? 0.0 : sum_sr / static_cast<double>(_commands.size());
  fv[2] = names_a_skill(utterance) ? 1.0 : 0.0;
  fv[3] = prior_response ? sentence_relevance(u, _provider.embed(*prior_response)) : 0.0;

  std::vector<SentenceVector> scratch;
  const auto& desc = description_vectors(skill, scratch);
  std::vector<double> srs;
  srs.reserve(desc.size());
  for (const auto& d : desc) srs.push_back(sentence_relevance(u, d));
  double total = 0.0;
  for (double s : srs) total += s;
  std::sort(srs.begin(), srs.end(), std::greater<>());
  for (std::size_t k = 0; k < 5; ++k) fv[4 + k] = k < srs.size() ? srs[k] : 0.0;
  fv[9] = srs.empty() ? 0.0 : total / static_cast<double>(srs.size());
  return fv;
}

FeatureVector extract_features(std::string_view utterance, const std::optional<std::string>& prior_response,
                               const SkillRecord& skill, const SystemCommandList& syscmds,
                               const std::vector<SkillRecord>& catalog, const EmbeddingProvider& provider) {
  return FeatureExtractor(syscmds, catalog, provider).extract(utterance, prior_response, skill);
}

void validate_transcript(const Transcript& t) {
  const std::string where = "transcript '" + t.session_id + "'";
  if (t.session_id.empty()) throw InvalidArgument("transcript without session_id");
  std::optional<double> last_time;
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    const auto& turn = t.turns[i];
    if (i > 0 && turn.role == t.turns[i - 1].role) {
      throw InvalidArgument(where + ": turns " + std::to_string(i - 1) + " and " + std::to_string(i) +
                            " do not alternate");
    }
    if (turn.role == Role::user && trim(turn.text).empty()) {
      throw InvalidArgument(where + ": user turn " + std::to_string(i) + " is empty");
    }
    if (turn.timestamp) {
      if (last_time && *turn.timestamp < *last_time) {
        throw InvalidArgument(where + ": timestamp decreases at turn " + std::to_string(i));
      }
      last_time = turn.timestamp;
    }
  }
}

Transcript transcript_from_json(const nlohmann::json& j, const std::vector<SkillRecord>& catalog) {
  if (!j.is_object()) throw InvalidArgument("transcript must be a JSON object");
  Transcript t;
  t.session_id = j.value("session_id", std::string());
  if (j.contains("skill")) {
    t.skill = skill_from_json(j.at("skill"));
  } else if (j.contains("skill_id")) {
    auto id = j.at("skill_id").get<std::string>();
    const auto* s = find_skill(catalog, id);
    if (!s) throw InvalidArgument("transcript '" + t.session_id + "': unknown skill_id '" + id + "'");
    t.skill = *s;
  } else {
    throw InvalidArgument("transcript '" + t.session_id + "' names no skill");
  }
  if (!j.contains("turns") || !j.at("turns").is_array()) {
    throw InvalidArgument("transcript '" + t.session_id + "' has no turns array");
  }
  for (const auto& jt : j.at("turns")) {
    ConversationTurn turn;
    auto role = jt.at("role").get<std::string>();
    if (role == "user") {
      turn.role = Role::user;
    } else if (role == "skill") {
      turn.role = Role::skill;
    } else {
      throw InvalidArgument("transcript '" + t.session_id + "': unknown role '" + role + "'");
    }
    turn.text = jt.value("text", std::string());
    if (jt.contains("timestamp") && !jt.at("timestamp").is_null()) turn.timestamp = jt.at("timestamp").get<double>();
    t.turns.push_back(std::move(turn));
  }
  validate_transcript(t);
  return t;
}

namespace {

template <typename T, typename Fn>
std::vector<T> parse_jsonl(std::istream& in, Fn&& convert) {
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(convert(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, e.what());
    } catch (const InvalidArgument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<Transcript> parse_transcripts(std::istream& in, const std::vector<SkillRecord>& catalog) {
  return parse_jsonl<Transcript>(in, [&](const nlohmann::json& j) { return transcript_from_json(j, catalog); });
}

std::vector<Transcript> load_transcripts(const std::string& path, const std::vector<SkillRecord>& catalog) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open transcripts '" + path + "'");
  return parse_transcripts(in, catalog);
}

std::vector<LabeledUtterance> parse_labels(std::istream& in, const std::vector<SkillRecord>& catalog) {
  return parse_jsonl<LabeledUtterance>(in, [&](const nlohmann::json& j) {
    LabeledUtterance l;
    l.utterance = j.at("utterance").get<std::string>();
    if (trim(l.utterance).empty()) throw InvalidArgument("empty utterance");
    if (j.contains("prior_response") && !j.at("prior_response").is_null()) {
      l.prior_response = j.at("prior_response").get<std::string>();
    }
    l.skill_id = j.at("skill_id").get<std::string>();
    if (!find_skill(catalog, l.skill_id)) throw InvalidArgument("unknown skill_id '" + l.skill_id + "'");
    l.label = parse_intent(j.at("label").get<std::string>());
    return l;
  });
}

std::vector<LabeledUtterance> load_labels(const std::string& path, const std::vector<SkillRecord>& catalog) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open labels '" + path + "'");
  return parse_labels(in, catalog);
}

std::vector<LabeledExample> build_examples(std::span<const LabeledUtterance> labels,
                                           const FeatureExtractor& extractor,
                                           const std::vector<SkillRecord>& catalog) {
  std::vector<LabeledExample> out;
  out.reserve(labels.size());
  for (const auto& l : labels) {
    const auto* skill = find_skill(catalog, l.skill_id);
    if (!skill) throw InvalidArgument("unknown skill_id '" + l.skill_id + "'");
    out.push_back({extractor.extract(l.utterance, l.prior_response, *skill), l.label});
  }
  return out;
}

std::string_view to_string(AlarmKind k) {
  switch (k) {
    case AlarmKind::src_silent: return "src-silent";
    case AlarmKind::src_mimicry: return "src-mimicry";
    case AlarmKind::uic_switch: return "uic-switch";
  }
  return "?";
}

nlohmann::json to_json(const Alarm& a) {
  return {{"session_id", a.session_id},
          {"turn", a.turn},
          {"kind", std::string(to_string(a.kind))},
          {"score", a.score},
          {"evidence", a.evidence}};
}

Detector::Detector(const Blacklist& blacklist, const SystemCommandList& syscmds,
                   const std::vector<SkillRecord>& catalog, Forest forest,
                   const EmbeddingProvider& provider, double src_threshold)
    : _checker(blacklist, provider, src_threshold),
      _extractor(syscmds, catalog, provider),
      _forest(std::move(forest)) {
  if (_forest.trees().empty()) throw InvalidArgument("detector needs a trained forest");
}

std::vector<Alarm> Detector::detect(const Transcript& t) const {
  validate_transcript(t);
  std::vector<Alarm> alarms;
  _turn_micros.clear();
  std::optional<std::string> prior;
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    const auto& turn = t.turns[i];
    auto start = std::chrono::steady_clock::now();
    if (turn.role == Role::skill) {
      auto v = _checker.check(turn.text);
      if (v.outcome == SrcOutcome::silent) {
        alarms.push_back({t.session_id, i, AlarmKind::src_silent, 1.0, std::string(kSilentEntry)});
      } else if (v.outcome == SrcOutcome::mimicry) {
        alarms.push_back({t.session_id, i, AlarmKind::src_mimicry, v.max_sr, v.matched});
      }
      prior = turn.text;
    } else {
      auto fv = _extractor.extract(turn.text, prior, t.skill);
      auto c = _forest.classify(fv);
      if (c.label == Intent::context_switch) {
        alarms.push_back({t.session_id, i, AlarmKind::uic_switch, c.switch_fraction, turn.text});
      }
    }
    auto elapsed = std::chrono::steady_clock::now() - start;
    _turn_micros.push_back(std::chrono::duration<double, std::micro>(elapsed).count());
  }
  return alarms;
}

std::vector<Alarm> detect(const Transcript& transcript, const Blacklist& blacklist,
                          const SystemCommandList& syscmds, const std::vector<SkillRecord>& catalog,
                          const Forest& forest, const EmbeddingProvider& provider, double src_threshold) {
  return Detector(blacklist, syscmds, catalog, forest, provider, src_threshold).detect(transcript);
}

namespace {

// Openers and closers an impersonating skill can wrap around a system line.
VariantConfig response_fillers() {
  return VariantConfig{{"okay", "alright", "well", "sure"}, {"now", "then", "for you"}};
}

struct Synonym {
  std::string_view word;
  std::string_view replacement;
};

constexpr Synonym kSynonyms[] = {
    {"skill", "app"},         {"app", "skill"},        {"opening", "launching"}, {"launching", "opening"},
    {"latest", "newest"},     {"recommend", "suggest"}, {"enable", "activate"},  {"enabled", "activated"},
    {"closed", "ended"},      {"exiting", "leaving"},  {"music", "songs"},      {"verify", "confirm"},
    {"password", "passcode"}, {"problem", "issue"},    {"talk", "speak"},       {"goodbye", "bye"},
};

}  // namespace

std::vector<ResponseParaphrase> blacklist_paraphrases(const Blacklist& blacklist) {
  std::vector<ResponseParaphrase> out;
  auto fillers = response_fillers();
  for (const auto& entry : blacklist.spoken_entries()) {
    auto base = normalize_name(entry);
    if (base.empty()) continue;
    for (auto& v : generate_variants(base, fillers)) out.push_back({std::move(v.text), entry});
    auto words = split_words(base);
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (const auto& syn : kSynonyms) {
        if (words[i] != syn.word) continue;
        auto swapped = words;
        swapped[i] = std::string(syn.replacement);
        out.push_back({join_words(swapped), entry});
      }
    }
  }
  return out;
}

SrcCalibration calibrate_src(std::span<const std::string> legit_responses, const Blacklist& blacklist,
                             const EmbeddingProvider& provider) {
  SrcCalibration cal;
  auto entries = blacklist.spoken_entries();
  std::vector<SentenceVector> vecs;
  for (const auto& e : entries) vecs.push_back(provider.embed(e));
  for (const auto& r : legit_responses) {
    if (is_silent_response(r)) continue;
    auto v = provider.embed(r);
    for (const auto& b : vecs) {
      double sr = sentence_relevance(v, b);
      if (sr > cal.legit_max || cal.legit_worst.empty()) {
        cal.legit_max = sr;
        cal.legit_worst = r;
      }
    }
    ++cal.legit_count;
  }
  for (const auto& p : blacklist_paraphrases(blacklist)) {
    double sr = sentence_relevance(provider.embed(p.text), provider.embed(p.original));
    if (sr < cal.paraphrase_min || cal.paraphrase_worst.empty()) {
      cal.paraphrase_min = sr;
      cal.paraphrase_worst = p.text;
    }
    ++cal.paraphrase_count;
  }
  return cal;
}

}  // namespace skillguard
