#include <doctest.h>

#include <filesystem>
#include <initializer_list>

#include <json.hpp>

#include "skillguard/cli.hpp"
#include "skillguard/io.hpp"
#include "support.hpp"

using namespace skillguard;
using testing::data_path;

namespace {

int run(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"skillguard"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : owned) argv.push_back(a.data());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

nlohmann::json read_json(const std::string& path) { return nlohmann::json::parse(testing::slurp(path)); }

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}) == cli::kExitUsage);
  CHECK(run({"frobnicate"}) == cli::kExitUsage);
  CHECK(run({"scan", "--threshold", "abc"}) == cli::kExitUsage);
  CHECK(run({"distance", "one"}) == cli::kExitUsage);
  CHECK(run({"--help"}) == cli::kExitClean);
}

TEST_CASE("scan exit codes") {
  testing::TempDir dir;
  auto out = dir.file("report.json");

  testing::write_catalog(dir.file("clean.jsonl"), {testing::skill("a", "weather report"), testing::skill("b", "sleep sounds")});
  CHECK(run({"scan", "--catalog", dir.file("clean.jsonl"), "--out", out}) == cli::kExitClean);
  CHECK(read_json(out).at("findings").empty());

  testing::write_catalog(dir.file("dirty.jsonl"), {testing::skill("a", "cat facts"), testing::skill("b", "cat fax")});
  CHECK(run({"scan", "--catalog", dir.file("dirty.jsonl"), "--out", out}) == cli::kExitFindings);
  CHECK(read_json(out).at("findings").size() == 2);

  testing::write_catalog(dir.file("partial.jsonl"), {testing::skill("a", "cat facts"), testing::skill("b", "42")});
  CHECK(run({"scan", "--catalog", dir.file("partial.jsonl"), "--out", out}) == cli::kExitError);
  CHECK(read_json(out).at("excluded").size() == 1);

  CHECK(run({"scan", "--catalog", dir.file("missing.jsonl")}) == cli::kExitError);
  testing::write_text(dir.file("bad.jsonl"), "{not json\n");
  CHECK(run({"scan", "--catalog", dir.file("bad.jsonl")}) == cli::kExitError);
  CHECK(run({"scan", "--catalog", dir.file("clean.jsonl"), "--threshold", "-1"}) == cli::kExitError);
}

TEST_CASE("flags override the config file") {
  testing::TempDir dir;
  testing::write_catalog(dir.file("cat.jsonl"), {testing::skill("a", "cat facts"), testing::skill("b", "dog facts")});
  nlohmann::json cfg = {{"dictionary", data_path("cmudict/cmudict.dict")},
                        {"matrix", data_path("wc_matrix.tsv")},
                        {"catalog", "cat.jsonl"},
                        {"scan_threshold", 0.0}};
  testing::write_text(dir.file("cfg.json"), cfg.dump());
  auto out = dir.file("r.json");
  CHECK(run({"--config", dir.file("cfg.json"), "scan", "--out", out}) == cli::kExitClean);
  CHECK(read_json(out).at("threshold") == 0.0);
  CHECK(run({"--config", dir.file("cfg.json"), "scan", "--threshold", "5", "--out", out}) == cli::kExitFindings);
  CHECK(read_json(out).at("threshold") == 5.0);

  testing::write_text(dir.file("unknown.json"), R"({"colour": "blue"})");
  CHECK(run({"--config", dir.file("unknown.json"), "scan"}) == cli::kExitError);
  testing::write_text(dir.file("broken.json"), "{");
  CHECK(run({"--config", dir.file("broken.json"), "scan"}) == cli::kExitError);
}

TEST_CASE("failed runs leave the output untouched") {
  testing::TempDir dir;
  auto out = dir.file("alarms.json");
  testing::write_text(out, "previous\n");
  CHECK(run({"detect", "--transcripts", data_path("detector/transcripts_benign.jsonl"), "--model",
             dir.file("no-model.json"), "--out", out}) == cli::kExitError);
  CHECK(testing::slurp(out) == "previous\n");
  CHECK(run({"detect", "--transcripts", data_path("detector/transcripts_benign.jsonl"), "--model",
             data_path("detector/uic_forest.json"), "--src-threshold", "0", "--out", out}) == cli::kExitError);
  CHECK(testing::slurp(out) == "previous\n");
  for (const auto& e : std::filesystem::directory_iterator(dir.path())) {
    CHECK(e.path().filename() == "alarms.json");
  }
}

TEST_CASE("detect exit codes") {
  testing::TempDir dir;
  auto out = dir.file("alarms.json");
  auto model = data_path("detector/uic_forest.json");
  CHECK(run({"detect", "--transcripts", data_path("detector/transcripts_benign.jsonl"), "--model", model, "--out",
             out}) == cli::kExitClean);
  auto j = read_json(out);
  CHECK(j.at("format") == "skillguard-alarms");
  CHECK(j.at("alarm_count") == 0);
  CHECK(run({"detect", "--transcripts", data_path("detector/transcripts_attack.jsonl"), "--model", model, "--out",
             out}) == cli::kExitFindings);
  CHECK(read_json(out).at("alarm_count") == 25);
  testing::write_text(dir.file("t.jsonl"), R"({"session_id": "x", "skill_id": "missing", "turns": []})" "\n");
  CHECK(run({"detect", "--transcripts", dir.file("t.jsonl"), "--model", model}) == cli::kExitError);
}

TEST_CASE("train and evaluate") {
  testing::TempDir dir;
  auto labels = data_path("detector/uic_labels.jsonl");
  CHECK(run({"train-uic", "--data", labels, "--trees", "10", "--out", dir.file("m.json")}) == cli::kExitClean);
  auto m = read_json(dir.file("m.json"));
  CHECK(m.at("trees").size() == 10);
  CHECK(run({"eval-uic", "--data", labels, "--trees", "10", "--folds", "3", "--out", dir.file("cv.json")}) ==
        cli::kExitClean);
  auto cv = read_json(dir.file("cv.json"));
  CHECK(cv.at("folds") == 3);
  CHECK(cv.at("precision").get<double>() > 0.8);
  CHECK(run({"eval-uic", "--data", labels, "--folds", "1"}) == cli::kExitUsage);
}

TEST_CASE("calibration and matrix commands") {
  testing::TempDir dir;
  CHECK(run({"calibrate-src", "--legit", data_path("detector/legit_responses.txt"), "--out", dir.file("c.json")}) ==
        cli::kExitClean);
  CHECK(read_json(dir.file("c.json")).at("separable") == true);

  testing::write_text(dir.file("mini.dict"), "cat K AE1 T\ncat(2) K AA1 T\nfoo F UW1\n");
  CHECK(run({"build-matrix", "--dict", dir.file("mini.dict"), "--out", dir.file("m.tsv")}) == cli::kExitClean);
  CHECK(testing::slurp(dir.file("m.tsv")).find("AA") != std::string::npos);
  testing::write_text(dir.file("bad.dict"), "cat K AE1 T\nbroken QQ\n");
  CHECK(run({"build-matrix", "--strict", "--dict", dir.file("bad.dict"), "--out", dir.file("m2.tsv")}) ==
        cli::kExitError);
  CHECK_FALSE(std::filesystem::exists(dir.file("m2.tsv")));
}

TEST_CASE("atomic writes replace whole files") {
  testing::TempDir dir;
  auto p = dir.file("x.txt");
  write_file_atomic(p, "one");
  write_file_atomic(p, "two");
  CHECK(testing::slurp(p) == "two");
  CHECK_THROWS(write_file_atomic(dir.file("no/such/dir/x.txt"), "z"));
}
