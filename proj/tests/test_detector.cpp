#include <doctest.h>

#include <fstream>
#include <sstream>

#include "skillguard/detector.hpp"
#include "skillguard/error.hpp"
#include "support.hpp"

using namespace skillguard;

namespace {

struct Fixture {
  BaselineEmbedding provider;
  std::vector<SkillRecord> catalog = load_catalog(testing::data_path("detector/skills.jsonl"));
  Blacklist blacklist = Blacklist::load(testing::data_path("detector/blacklist.txt"));
  SystemCommandList syscmds = SystemCommandList::load(testing::data_path("detector/syscmds.txt"));

  const SkillRecord& skill(const std::string& id) const { return *find_skill(catalog, id); }
};

const Fixture& fx() {
  static const Fixture f;
  return f;
}

const Forest& shipped_forest() {
  static const Forest f = [] {
    std::ifstream in(testing::data_path("detector/uic_forest.json"));
    return Forest::from_json(nlohmann::json::parse(in));
  }();
  return f;
}

Transcript session(std::vector<std::pair<Role, std::string>> turns) {
  Transcript t{"s", fx().skill("sleep-sounds"), {}};
  double ts = 0.0;
  for (auto& [role, text] : turns) t.turns.push_back({role, std::move(text), ts += 1.0});
  return t;
}

}  // namespace

TEST_CASE("silent responses") {
  for (const char* s : {"", "   ", "\n\t", "<speak></speak>", "<speak><break time=\"10s\"/></speak>",
                        "<speak><audio src=\"https://x/silence.mp3\"/></speak>"}) {
    CAPTURE(s);
    CHECK(is_silent_response(s));
  }
  CHECK_FALSE(is_silent_response("<speak>Hello</speak>"));
  CHECK_FALSE(is_silent_response("ok"));
}

TEST_CASE("blacklist loading") {
  const auto& bl = fx().blacklist;
  CHECK(std::count(bl.entries().begin(), bl.entries().end(), std::string(kSilentEntry)) == 1);
  CHECK(bl.spoken_entries().size() + 1 == bl.entries().size());
  Blacklist added({"Goodbye."});
  CHECK(added.entries().size() == 2);
  CHECK_THROWS_AS(Blacklist({std::string(kSilentEntry)}), InvalidArgument);
}

TEST_CASE("system command templates expand per invocation name") {
  SystemCommandList cmds({"open <name>", "stop", "open <name>"});
  std::vector<SkillRecord> cat{testing::skill("a", "Cat Facts"), testing::skill("b", "dog fact")};
  auto out = cmds.expand(cat);
  CHECK(out == std::vector<std::string>{"open cat facts", "open dog fact", "stop"});
}

TEST_CASE("response checker verdicts") {
  const auto& f = fx();
  ResponseChecker checker(f.blacklist, f.provider, 0.5);
  CHECK(checker.check("").outcome == SrcOutcome::silent);
  auto v = checker.check("Goodbye, talk to you later.");
  CHECK(v.outcome == SrcOutcome::mimicry);
  CHECK(v.max_sr == doctest::Approx(1.0));
  CHECK(v.matched == "Goodbye, talk to you later.");
  auto clean = checker.check("Which sleep sound would you like today?");
  CHECK(clean.outcome == SrcOutcome::clean);
  CHECK(clean.max_sr <= 0.5);
  CHECK_THROWS_AS(ResponseChecker(f.blacklist, f.provider, 0.0), InvalidArgument);
  CHECK_THROWS_AS(src_check("x", f.blacklist, f.provider, 1.5), InvalidArgument);
}

TEST_CASE("raising the threshold never adds mimicry verdicts") {
  const auto& f = fx();
  std::vector<std::string> responses{"Goodbye.", "Sure, goodbye!", "Here is the latest news for you.",
                                     "Which sleep sound would you like today?", "Okay, bye now.",
                                     "Playing rain sounds.", "Would you like to enable this skill?"};
  for (const auto& r : responses) {
    bool flagged = true;
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
      bool now = src_check(r, f.blacklist, f.provider, t).flagged();
      if (!flagged) CHECK_FALSE(now);
      flagged = now;
    }
  }
}

TEST_CASE("feature vector layout") {
  const auto& f = fx();
  FeatureExtractor ex(f.syscmds, f.catalog, f.provider);
  const auto& sk = f.skill("sleep-sounds");
  auto x = ex.extract("open cat facts", std::nullopt, sk);
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] > 0.0);
  CHECK(x[1] <= x[0]);
  CHECK(x[2] == 1.0);
  CHECK(x[3] == 0.0);
  for (std::size_t i = 4; i + 1 < 9; ++i) CHECK(x[i] >= x[i + 1]);

  auto y = ex.extract("rain please", std::string("Which sleep sound would you like?"), sk);
  CHECK(y[2] == 0.0);
  CHECK(ex.names_a_skill("please open the Cat Facts"));
  CHECK_FALSE(ex.names_a_skill("cat"));

  // fewer than five description sentences are zero padded
  SkillRecord tiny = testing::skill("t", "tiny");
  tiny.description = {"Rain sounds.", "Ocean sounds."};
  auto z = ex.extract("rain sounds", std::nullopt, tiny);
  CHECK(z[6] == 0.0);
  CHECK(z[9] == doctest::Approx((z[4] + z[5]) / 2.0));
  CHECK(extract_features("open cat facts", std::nullopt, sk, f.syscmds, f.catalog, f.provider) == x);
}

TEST_CASE("features stay in range over the shipped labels") {
  const auto& f = fx();
  FeatureExtractor ex(f.syscmds, f.catalog, f.provider);
  auto labels = load_labels(testing::data_path("detector/uic_labels.jsonl"), f.catalog);
  CHECK(labels.size() >= 400);
  auto examples = build_examples(labels, ex, f.catalog);
  REQUIRE(examples.size() == labels.size());
  for (const auto& e : examples) {
    for (double v : e.features.values) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
    }
    CHECK(e.features[1] <= e.features[0] + 1e-12);
    CHECK((e.features[2] == 0.0 || e.features[2] == 1.0));
    for (std::size_t i = 4; i < 8; ++i) CHECK(e.features[i] >= e.features[i + 1]);
  }
}

TEST_CASE("transcript validation") {
  auto ok = session({{Role::skill, "Hi"}, {Role::user, "rain"}});
  CHECK_NOTHROW(validate_transcript(ok));
  auto twice = session({{Role::user, "a"}, {Role::user, "b"}});
  CHECK_THROWS_AS(validate_transcript(twice), InvalidArgument);
  auto empty_user = session({{Role::skill, "Hi"}, {Role::user, ""}});
  CHECK_THROWS_AS(validate_transcript(empty_user), InvalidArgument);
  auto backwards = ok;
  backwards.turns[1].timestamp = 0.5;
  CHECK_THROWS_AS(validate_transcript(backwards), InvalidArgument);
}

TEST_CASE("transcript parsing") {
  const auto& f = fx();
  std::istringstream in(
      R"({"session_id": "x", "skill_id": "cat-facts", "turns": [{"role": "skill", "text": "Hi"}]})"
      "\n"
      R"({"session_id": "y", "skill_id": "nope", "turns": []})"
      "\n");
  try {
    parse_transcripts(in, f.catalog);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  auto t = transcript_from_json(
      nlohmann::json::parse(R"({"session_id": "z", "skill": {"id": "q", "invocation_name": "quiz"},
                               "turns": [{"role": "user", "text": "go"}]})"),
      f.catalog);
  CHECK(t.skill.invocation_name == "quiz");
  CHECK_FALSE(t.turns[0].timestamp);
  CHECK_THROWS_AS(transcript_from_json(nlohmann::json::parse(
                                           R"({"session_id": "z", "skill_id": "cat-facts",
                                               "turns": [{"role": "bot", "text": "go"}]})"),
                                       f.catalog),
                  Error);
  CHECK(load_transcripts(testing::data_path("detector/transcripts_benign.jsonl"), f.catalog).size() == 10);
}

TEST_CASE("label parsing") {
  const auto& f = fx();
  std::istringstream in(
      R"({"utterance": "open cat facts", "prior_response": null, "skill_id": "sleep-sounds", "label": "switch"})"
      "\n"
      R"({"utterance": "rain", "prior_response": "Which one?", "skill_id": "sleep-sounds", "label": "no-switch"})"
      "\n");
  auto labels = parse_labels(in, f.catalog);
  REQUIRE(labels.size() == 2);
  CHECK(labels[0].label == Intent::context_switch);
  CHECK_FALSE(labels[0].prior_response);
  CHECK(*labels[1].prior_response == "Which one?");
  std::istringstream bad(R"({"utterance": "x", "skill_id": "sleep-sounds", "label": "maybe"})");
  CHECK_THROWS_AS(parse_labels(bad, f.catalog), ParseError);
}

TEST_CASE("detector on handcrafted sessions") {
  const auto& f = fx();
  Detector det(f.blacklist, f.syscmds, f.catalog, shipped_forest(), f.provider, 0.5);

  auto benign = session({{Role::skill, "Which sleep sound would you like today?"},
                         {Role::user, "Can I hear the ocean waves?"},
                         {Role::skill, "Playing ocean waves."}});
  CHECK(det.detect(benign).empty());
  CHECK(det.last_turn_micros().size() == 3);

  auto fake_exit = session({{Role::skill, "Which sleep sound would you like today?"},
                            {Role::user, "Rain please."},
                            {Role::skill, "Goodbye."}});
  auto alarms = det.detect(fake_exit);
  REQUIRE(alarms.size() == 1);
  CHECK(alarms[0].kind == AlarmKind::src_mimicry);
  CHECK(alarms[0].turn == 2);

  auto silent = session({{Role::skill, "Which sleep sound would you like today?"},
                         {Role::user, "Rain please."},
                         {Role::skill, "<speak><break time=\"10s\"/></speak>"}});
  alarms = det.detect(silent);
  REQUIRE(alarms.size() == 1);
  CHECK(alarms[0].kind == AlarmKind::src_silent);
  CHECK(alarms[0].score == 1.0);

  auto switcher = session({{Role::skill, "Which sleep sound would you like today?"},
                           {Role::user, "open cat facts please"}});
  alarms = det.detect(switcher);
  REQUIRE(alarms.size() == 1);
  CHECK(alarms[0].kind == AlarmKind::uic_switch);
  CHECK(alarms[0].evidence == "open cat facts please");
  CHECK(alarms[0].score > 0.5);

  auto j = to_json(alarms[0]);
  CHECK(j.at("kind") == "uic-switch");
  CHECK(j.at("turn") == 1);

  auto broken = session({{Role::user, "a"}, {Role::user, "b"}});
  CHECK_THROWS_AS(det.detect(broken), InvalidArgument);
}

TEST_CASE("paraphrased system responses and calibration") {
  const auto& f = fx();
  auto paraphrases = blacklist_paraphrases(f.blacklist);
  CHECK(paraphrases.size() > f.blacklist.spoken_entries().size());
  for (const auto& p : paraphrases) CHECK(p.text != p.original);

  std::ifstream in(testing::data_path("detector/legit_responses.txt"));
  std::vector<std::string> legit;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) legit.push_back(line);
  }
  auto cal = calibrate_src(legit, f.blacklist, f.provider);
  CHECK(cal.legit_count == legit.size());
  CHECK(cal.paraphrase_count == paraphrases.size());
  CHECK(cal.separable());
  CHECK(cal.admits(0.5));
  CHECK_FALSE(cal.admits(kDefaultSrcThreshold));
}
