#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "skillguard/catalog.hpp"
#include "skillguard/embedding.hpp"
#include "skillguard/forest.hpp"

namespace skillguard {

/// Marker line standing for a silent (empty) response in a blacklist file.
inline constexpr std::string_view kSilentEntry = "<silence>";

/// Threshold used when none is configured.
inline constexpr double kDefaultSrcThreshold = 0.8;

/// Responses a skill must not imitate: system utterances plus silence.
class Blacklist {
 public:
  /// The silent entry is added when absent. Throws if no spoken entry remains.
  explicit Blacklist(std::vector<std::string> entries);

  /// One entry per line; blank lines and lines starting with '#' skipped.
  static Blacklist load(const std::string& path);

  const std::vector<std::string>& entries() const { return _entries; }
  std::vector<std::string> spoken_entries() const;

 private:
  std::vector<std::string> _entries;
};

/// User commands addressed to the assistant itself. Entries containing the
/// "<name>" slot expand once per catalog invocation name.
class SystemCommandList {
 public:
  explicit SystemCommandList(std::vector<std::string> entries);
  static SystemCommandList load(const std::string& path);

  const std::vector<std::string>& entries() const { return _entries; }
  std::vector<std::string> expand(const std::vector<SkillRecord>& catalog) const;

 private:
  std::vector<std::string> _entries;
};

/// True for empty or whitespace-only text, and for markup with no spoken text
/// (e.g. an SSML document holding only an audio or break element).
bool is_silent_response(std::string_view text);

enum class SrcOutcome { clean, silent, mimicry };

struct SrcVerdict {
  SrcOutcome outcome = SrcOutcome::clean;
  double max_sr = 0.0;
  std::string matched;  // blacklist entry with the highest SR

  bool flagged() const { return outcome != SrcOutcome::clean; }
};

/// Skill response checker. Blacklist vectors are embedded once.
class ResponseChecker {
 public:
  ResponseChecker(const Blacklist& blacklist, const EmbeddingProvider& provider, double threshold);

  SrcVerdict check(std::string_view response) const;
  double threshold() const { return _threshold; }

 private:
  const EmbeddingProvider& _provider;
  double _threshold;
  std::vector<std::string> _entries;
  std::vector<SentenceVector> _vectors;
};

/// Silent responses are flagged first; otherwise the response is mimicry when
/// its maximum SR against the spoken blacklist entries exceeds `threshold`.
/// Throws InvalidArgument unless 0 < threshold <= 1.
SrcVerdict src_check(std::string_view response, const Blacklist& blacklist,
                     const EmbeddingProvider& provider, double threshold);

/// Computes UIC features. System commands, catalog names and catalog skill
/// descriptions are embedded once at construction.
class FeatureExtractor {
 public:
  FeatureExtractor(const SystemCommandList& syscmds, const std::vector<SkillRecord>& catalog,
                   const EmbeddingProvider& provider);

  FeatureVector extract(std::string_view utterance, const std::optional<std::string>& prior_response,
                        const SkillRecord& skill) const;

  /// True if the normalized utterance contains a catalog invocation name as a
  /// contiguous run of words.
  bool names_a_skill(std::string_view utterance) const;

 private:
  const std::vector<SentenceVector>& description_vectors(const SkillRecord& skill,
                                                         std::vector<SentenceVector>& scratch) const;

  const EmbeddingProvider& _provider;
  std::vector<SentenceVector> _commands;
  std::vector<std::vector<std::string>> _names;
  std::unordered_map<std::string, std::vector<SentenceVector>> _descriptions;
};

FeatureVector extract_features(std::string_view utterance, const std::optional<std::string>& prior_response,
                               const SkillRecord& skill, const SystemCommandList& syscmds,
                               const std::vector<SkillRecord>& catalog, const EmbeddingProvider& provider);

enum class Role { user, skill };

struct ConversationTurn {
  Role role;
  std::string text;
  std::optional<double> timestamp;
};

struct Transcript {
  std::string session_id;
  SkillRecord skill;
  std::vector<ConversationTurn> turns;
};

/// Throws InvalidArgument unless turns alternate roles, user turns carry text
/// and timestamps never decrease.
void validate_transcript(const Transcript& t);

/// {"session_id", "skill_id" | "skill": {...}, "turns": [{"role", "text", "timestamp"?}]}.
/// A skill_id must resolve in `catalog`.
Transcript transcript_from_json(const nlohmann::json& j, const std::vector<SkillRecord>& catalog);
std::vector<Transcript> parse_transcripts(std::istream& in, const std::vector<SkillRecord>& catalog);
std::vector<Transcript> load_transcripts(const std::string& path, const std::vector<SkillRecord>& catalog);

/// One labeled user utterance for UIC training.
struct LabeledUtterance {
  std::string utterance;
  std::optional<std::string> prior_response;
  std::string skill_id;
  Intent label;
};

/// JSONL {utterance, prior_response, skill_id, label}; label is "switch" or
/// "no-switch" and skill_id must resolve in `catalog`.
std::vector<LabeledUtterance> load_labels(const std::string& path, const std::vector<SkillRecord>& catalog);
std::vector<LabeledUtterance> parse_labels(std::istream& in, const std::vector<SkillRecord>& catalog);

std::vector<LabeledExample> build_examples(std::span<const LabeledUtterance> labels,
                                           const FeatureExtractor& extractor,
                                           const std::vector<SkillRecord>& catalog);

enum class AlarmKind { src_silent, src_mimicry, uic_switch };

std::string_view to_string(AlarmKind k);

struct Alarm {
  std::string session_id;
  std::size_t turn;
  AlarmKind kind;
  double score;          // max SR for mimicry, switch vote share for UIC, 1 for silence
  std::string evidence;  // matched blacklist entry or the user utterance

  friend bool operator==(const Alarm&, const Alarm&) = default;
};

nlohmann::json to_json(const Alarm& a);

/// Integrated detector: every skill turn goes through the response checker,
/// every user turn through the intent classifier with the nearest preceding
/// skill turn as context.
class Detector {
 public:
  Detector(const Blacklist& blacklist, const SystemCommandList& syscmds,
           const std::vector<SkillRecord>& catalog, Forest forest,
           const EmbeddingProvider& provider, double src_threshold);

  /// Validates the whole transcript before emitting anything.
  std::vector<Alarm> detect(const Transcript& t) const;

  /// Per-turn decision latency in microseconds for the last detect call.
  const std::vector<double>& last_turn_micros() const { return _turn_micros; }

  const FeatureExtractor& extractor() const { return _extractor; }
  const ResponseChecker& checker() const { return _checker; }
  const Forest& forest() const { return _forest; }

 private:
  ResponseChecker _checker;
  FeatureExtractor _extractor;
  Forest _forest;
  mutable std::vector<double> _turn_micros;
};

std::vector<Alarm> detect(const Transcript& transcript, const Blacklist& blacklist,
                          const SystemCommandList& syscmds, const std::vector<SkillRecord>& catalog,
                          const Forest& forest, const EmbeddingProvider& provider, double src_threshold);

/// A reworded blacklist entry and the entry it came from.
struct ResponseParaphrase {
  std::string text;
  std::string original;
};

/// Rewordings of each spoken blacklist entry: conversational openers and
/// closers wrapped around it and single-word synonym swaps.
std::vector<ResponseParaphrase> blacklist_paraphrases(const Blacklist& blacklist);

/// Separation between legitimate responses and reworded system responses.
struct SrcCalibration {
  double legit_max = 0.0;
  std::string legit_worst;
  double paraphrase_min = 1.0;
  std::string paraphrase_worst;
  std::size_t legit_count = 0;
  std::size_t paraphrase_count = 0;

  bool separable() const { return legit_max < paraphrase_min; }
  /// A threshold flags every paraphrase and no legitimate response.
  bool admits(double threshold) const { return legit_max <= threshold && threshold < paraphrase_min; }
  double midpoint() const { return (legit_max + paraphrase_min) / 2.0; }
};

/// Highest SR of a legitimate response against the blacklist and lowest SR of
/// a paraphrase against its own original.
SrcCalibration calibrate_src(std::span<const std::string> legit_responses, const Blacklist& blacklist,
                             const EmbeddingProvider& provider);

}  // namespace skillguard
