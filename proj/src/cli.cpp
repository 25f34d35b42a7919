#include "skillguard/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skillguard/catalog.hpp"
#include "skillguard/cost_matrix.hpp"
#include "skillguard/detector.hpp"
#include "skillguard/dictionary.hpp"
#include "skillguard/distance.hpp"
#include "skillguard/embedding.hpp"
#include "skillguard/error.hpp"
#include "skillguard/forest.hpp"
#include "skillguard/io.hpp"
#include "skillguard/parallel.hpp"
#include "skillguard/paraphrase.hpp"
#include "skillguard/scanner.hpp"
#include "skillguard/text.hpp"

namespace skillguard::cli {

namespace {

using nlohmann::json;

const char* const kSchemas = R"(File formats:
  dictionary     CMU dict text: WORD[(n)] PH PH ...; ';;;' comment lines; stress digits ignored
  matrix         TSV written by build-matrix; '# checksum' header is verified on load
  catalog        JSONL, one skill per line:
                   {"id", "invocation_name", "display_name"?, "author"?, "category"?,
                    "description": "text" | ["sentence", ...]}
  variants       JSON {"prefixes": [...], "suffixes": [...]}
  blacklist      text, one system response per line, '#' comments; "<silence>" is implied
  syscmds        text, one system command per line; "<name>" expands to every catalog name
  labels         JSONL {"utterance", "prior_response"?, "skill_id", "label": "switch"|"no-switch"}
  transcripts    JSONL {"session_id", "skill_id" | "skill": {...},
                        "turns": [{"role": "user"|"skill", "text", "timestamp"?}]}
  model          JSON forest written by train-uic
  config         JSON object; keys: dictionary, matrix, catalog, blacklist, syscmds, variants,
                 scan_threshold, src_threshold, provider, seed, threads. Relative paths resolve
                 against the config file. Without --config the bundled data/skillguard.json is
                 used when present. Flags override it.

Exit codes: 0 clean, 2 findings or alarms, 1 input/output or validation error, 64 usage error.
)";

struct Config {
  std::string dictionary;
  std::string matrix;
  std::string catalog;
  std::string blacklist;
  std::string syscmds;
  std::string variants;
  double scan_threshold = 1.0;
  double src_threshold = kDefaultSrcThreshold;
  std::string provider = "baseline";
  std::uint64_t seed = 42;
  unsigned threads = default_threads();
};

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw InvalidArgument(std::string("no ") + what + " path given");
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(std::string(what) + " '" + path + "' does not exist");
  }
}

Config load_config(const std::string& path) {
  Config c;
  if (path.empty()) return c;
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error("config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw Error("config '" + path + "' must hold a JSON object");
  static const char* const kKnown[] = {"dictionary", "matrix", "catalog", "blacklist", "syscmds", "variants",
                                       "scan_threshold", "src_threshold", "provider", "seed", "threads"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      throw Error("config '" + path + "': unknown key '" + key + "'");
    }
  }
  // Relative paths in a config file resolve against the file's directory.
  auto base = std::filesystem::path(path).parent_path();
  auto path_of = [&](const char* key, std::string& out) {
    if (!j.contains(key)) return;
    std::filesystem::path p = j.at(key).get<std::string>();
    out = (p.is_relative() ? base / p : p).lexically_normal().string();
  };
  try {
    path_of("dictionary", c.dictionary);
    path_of("matrix", c.matrix);
    path_of("catalog", c.catalog);
    path_of("blacklist", c.blacklist);
    path_of("syscmds", c.syscmds);
    path_of("variants", c.variants);
    if (j.contains("scan_threshold")) c.scan_threshold = j.at("scan_threshold").get<double>();
    if (j.contains("src_threshold")) c.src_threshold = j.at("src_threshold").get<double>();
    if (j.contains("provider")) c.provider = j.at("provider").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
  } catch (const json::exception& e) {
    throw Error("config '" + path + "': " + e.what());
  }
  return c;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_file_atomic(out_path, text);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Dictionary open_dictionary(const std::string& path, bool strict) {
  require_file(path, "dictionary");
  auto result = load_dictionary(path, strict ? ParseMode::strict : ParseMode::lenient);
  if (!result.skipped.empty()) {
    log_line("warn", "dictionary: skipped " + std::to_string(result.skipped.size()) + " malformed line(s), first at line " +
                         std::to_string(result.skipped.front().line) + ": " + result.skipped.front().message);
  }
  return std::move(result.dictionary);
}

CostMatrix open_matrix(const std::string& path) {
  require_file(path, "matrix");
  return load_matrix(path);
}

VariantConfig open_variants(const std::string& path) {
  if (path.empty()) return VariantConfig::defaults();
  require_file(path, "variant config");
  return VariantConfig::load(path);
}

std::vector<SkillRecord> open_catalog(const std::string& path) {
  require_file(path, "catalog");
  return load_catalog(path);
}

void check_unit_interval(double t, const char* what, bool allow_zero) {
  if (!(t <= 1.0 && (allow_zero ? t >= 0.0 : t > 0.0))) {
    throw InvalidArgument(std::string(what) + " must be in " + (allow_zero ? "[0, 1]" : "(0, 1]"));
  }
}

std::string join_pronunciation(const Pronunciation& p) { return to_string(p); }

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (!t.empty() && t.front() != '#') out.emplace_back(t);
  }
  return out;
}

Forest open_forest(const std::string& path) {
  require_file(path, "model");
  try {
    return Forest::from_json(json::parse(read_file(path)));
  } catch (const json::exception& e) {
    throw Error("model '" + path + "': " + e.what());
  }
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Voice-assistant skill vetting: invocation-name squatting and voice masquerading detection",
               "skillguard"};
  app.footer(kSchemas);
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");

  // Flag values; unset optionals fall back to the config file.
  std::optional<std::string> dict_path, matrix_path, catalog_path, variants_path, blacklist_path, syscmds_path;
  std::optional<double> threshold, src_threshold;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out_path;
  bool strict = false;

  auto* build = app.add_subcommand("build-matrix", "Derive the phoneme substitution cost matrix from a dictionary");
  build->add_option("--dict", dict_path, "pronouncing dictionary");
  build->add_option("--out", out_path, "matrix TSV output (default stdout)");
  build->add_flag("--strict", strict, "fail on the first malformed dictionary line");
  build->add_option("--threads", threads, "worker threads");

  std::string phrase_a, phrase_b;
  auto* dist = app.add_subcommand("distance", "Weighted phonetic distance between two phrases");
  dist->add_option("phrase-a", phrase_a)->required();
  dist->add_option("phrase-b", phrase_b)->required();
  dist->add_option("--dict", dict_path, "pronouncing dictionary");
  dist->add_option("--matrix", matrix_path, "cost matrix TSV");

  std::string variant_name, lexicon_path;
  bool homophones = false;
  double homophone_bound = 0.0;
  auto* vars = app.add_subcommand("variants", "List paraphrase (and optionally homophone) variants of a name");
  vars->add_option("name", variant_name)->required();
  vars->add_option("--variants", variants_path, "variant config JSON");
  vars->add_flag("--homophones", homophones, "also list single-word homophone substitutions");
  vars->add_option("--bound", homophone_bound, "homophone distance bound")->check(CLI::NonNegativeNumber);
  vars->add_option("--lexicon", lexicon_path, "candidate words for homophones, one per line (default: dictionary)");
  vars->add_option("--dict", dict_path, "pronouncing dictionary");
  vars->add_option("--matrix", matrix_path, "cost matrix TSV");

  bool table = false, exhaustive = false;
  auto* scan_cmd = app.add_subcommand("scan", "Find competitive invocation names in a skill catalog");
  scan_cmd->add_option("--catalog", catalog_path, "skill catalog JSONL");
  scan_cmd->add_option("--dict", dict_path, "pronouncing dictionary");
  scan_cmd->add_option("--matrix", matrix_path, "cost matrix TSV");
  scan_cmd->add_option("--variants", variants_path, "variant config JSON");
  scan_cmd->add_option("--threshold", threshold, "maximum distance for a CIN (>= 0)");
  scan_cmd->add_option("--threads", threads, "worker threads");
  scan_cmd->add_option("--out", out_path, "report JSON output (default stdout)");
  scan_cmd->add_flag("--table", table, "print the summary table to standard error");
  scan_cmd->add_flag("--exhaustive", exhaustive, "disable pruning (reference mode)");

  std::string data_path;
  std::size_t trees = ForestParams{}.trees;
  auto* train = app.add_subcommand("train-uic", "Train the user intention classifier");
  train->add_option("--data", data_path, "labeled utterances JSONL")->required();
  train->add_option("--catalog", catalog_path, "skill catalog JSONL");
  train->add_option("--syscmds", syscmds_path, "system command list");
  train->add_option("--seed", seed, "random seed");
  train->add_option("--trees", trees, "number of trees")->check(CLI::PositiveNumber);
  train->add_option("--threads", threads, "worker threads");
  train->add_option("--out", out_path, "model JSON output (default stdout)");

  std::size_t folds = 5;
  auto* eval = app.add_subcommand("eval-uic", "Stratified k-fold cross-validation of the intention classifier");
  eval->add_option("--data", data_path, "labeled utterances JSONL")->required();
  eval->add_option("--catalog", catalog_path, "skill catalog JSONL");
  eval->add_option("--syscmds", syscmds_path, "system command list");
  eval->add_option("--folds", folds, "number of folds")->check(CLI::Range(2, 1000));
  eval->add_option("--seed", seed, "random seed");
  eval->add_option("--trees", trees, "number of trees")->check(CLI::PositiveNumber);
  eval->add_option("--threads", threads, "worker threads");
  eval->add_option("--out", out_path, "metrics JSON output (default stdout)");

  std::string transcripts_path, model_path;
  auto* det = app.add_subcommand("detect", "Run the masquerading detector over transcripts");
  det->add_option("--transcripts", transcripts_path, "transcripts JSONL")->required();
  det->add_option("--model", model_path, "model written by train-uic")->required();
  det->add_option("--catalog", catalog_path, "skill catalog JSONL");
  det->add_option("--blacklist", blacklist_path, "system response blacklist");
  det->add_option("--syscmds", syscmds_path, "system command list");
  det->add_option("--src-threshold", src_threshold, "response SR threshold in (0, 1]");
  det->add_option("--out", out_path, "alarms JSON output (default stdout)");

  std::string legit_path;
  auto* calib = app.add_subcommand("calibrate-src", "Measure legitimate vs reworded-blacklist SR separation");
  calib->add_option("--legit", legit_path, "legitimate skill responses, one per line")->required();
  calib->add_option("--blacklist", blacklist_path, "system response blacklist");
  calib->add_option("--out", out_path, "calibration JSON output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitClean : kExitUsage;
  }

  try {
    if (config_path.empty()) {
      auto bundled = std::filesystem::path(SKILLGUARD_DATA_DIR) / "skillguard.json";
      if (std::filesystem::is_regular_file(bundled)) config_path = bundled.string();
    }
    Config cfg = load_config(config_path);
    if (dict_path) cfg.dictionary = *dict_path;
    if (matrix_path) cfg.matrix = *matrix_path;
    if (catalog_path) cfg.catalog = *catalog_path;
    if (variants_path) cfg.variants = *variants_path;
    if (blacklist_path) cfg.blacklist = *blacklist_path;
    if (syscmds_path) cfg.syscmds = *syscmds_path;
    if (threshold) cfg.scan_threshold = *threshold;
    if (src_threshold) cfg.src_threshold = *src_threshold;
    if (seed) cfg.seed = *seed;
    if (threads) cfg.threads = *threads;
    if (cfg.threads == 0) throw InvalidArgument("threads must be positive");

    if (*build) {
      auto dict = open_dictionary(cfg.dictionary, strict);
      auto pairs = alternative_pairs(dict);
      auto tables = accumulate(pairs, cfg.threads);
      auto m = build_matrix(tables);
      std::ostringstream os;
      write_matrix_tsv(os, m, std::filesystem::path(cfg.dictionary).filename().string(), tables.pairs);
      emit(out_path, os.str());
      log_line("info", "matrix built from " + std::to_string(tables.pairs) + " alternative-pronunciation pairs");
      return kExitClean;
    }

    if (*dist) {
      auto dict = open_dictionary(cfg.dictionary, false);
      auto m = open_matrix(cfg.matrix);
      auto d = phrase_distance(phrase_a, phrase_b, dict, m);
      std::cout << "cost\t" << fixed(d.cost) << "\n"
                << "a\t" << normalize_name(phrase_a) << "\t" << join_pronunciation(d.first) << "\n"
                << "b\t" << normalize_name(phrase_b) << "\t" << join_pronunciation(d.second) << "\n";
      return kExitClean;
    }

    if (*vars) {
      auto vcfg = open_variants(cfg.variants);
      auto list = generate_variants(variant_name, vcfg);
      if (homophones) {
        auto dict = open_dictionary(cfg.dictionary, false);
        auto m = open_matrix(cfg.matrix);
        std::vector<std::string> lexicon;
        if (!lexicon_path.empty()) lexicon = read_lines(lexicon_path);
        auto extra = homophone_variants(variant_name, dict, m, homophone_bound, lexicon);
        list.insert(list.end(), extra.begin(), extra.end());
      }
      for (const auto& v : list) std::cout << to_string(v.kind) << "\t" << v.text << "\n";
      return kExitClean;
    }

    if (*scan_cmd) {
      if (!(cfg.scan_threshold >= 0.0)) throw InvalidArgument("threshold must be >= 0");
      auto catalog = open_catalog(cfg.catalog);
      auto dict = open_dictionary(cfg.dictionary, false);
      auto m = open_matrix(cfg.matrix);
      auto vcfg = open_variants(cfg.variants);
      ScanOptions opts;
      opts.threshold = cfg.scan_threshold;
      opts.threads = cfg.threads;
      opts.exhaustive = exhaustive;
      auto report = scan(catalog, dict, m, vcfg, opts);
      emit(out_path, dump(to_json(report)));
      if (table) std::cerr << format_table(report);
      if (report.partial()) {
        log_line("error", "partial scan: " + std::to_string(report.excluded.size()) + " skill(s) excluded");
        return kExitError;
      }
      return report.findings.empty() ? kExitClean : kExitFindings;
    }

    if (*train || *eval) {
      auto catalog = open_catalog(cfg.catalog);
      require_file(cfg.syscmds, "system command list");
      auto syscmds = SystemCommandList::load(cfg.syscmds);
      require_file(data_path, "labels");
      auto labels = load_labels(data_path, catalog);
      auto provider = make_provider(cfg.provider);
      FeatureExtractor extractor(syscmds, catalog, *provider);
      auto examples = build_examples(labels, extractor, catalog);
      ForestParams params;
      params.trees = trees;
      if (*train) {
        auto forest = train_forest(examples, params, cfg.seed, cfg.threads);
        emit(out_path, dump(forest.to_json()));
        log_line("info", "trained " + std::to_string(params.trees) + " trees on " + std::to_string(examples.size()) +
                             " examples");
        return kExitClean;
      }
      auto cv = cross_validate(examples, params, cfg.seed, folds, cfg.threads);
      json j = {{"format", "skillguard-cv"},
                {"folds", cv.folds},
                {"seed", cfg.seed},
                {"instances", examples.size()},
                {"true_positive", cv.true_positive},
                {"false_positive", cv.false_positive},
                {"true_negative", cv.true_negative},
                {"false_negative", cv.false_negative},
                {"precision", cv.precision()},
                {"recall", cv.recall()},
                {"f1", cv.f1()},
                {"accuracy", cv.accuracy()}};
      emit(out_path, dump(j));
      return kExitClean;
    }

    if (*det) {
      check_unit_interval(cfg.src_threshold, "src threshold", false);
      auto catalog = open_catalog(cfg.catalog);
      require_file(cfg.blacklist, "blacklist");
      require_file(cfg.syscmds, "system command list");
      auto blacklist = Blacklist::load(cfg.blacklist);
      auto syscmds = SystemCommandList::load(cfg.syscmds);
      require_file(transcripts_path, "transcripts");
      auto transcripts = load_transcripts(transcripts_path, catalog);
      auto forest = open_forest(model_path);
      auto provider = make_provider(cfg.provider);
      Detector detector(blacklist, syscmds, catalog, std::move(forest), *provider, cfg.src_threshold);
      json alarms = json::array();
      std::size_t turns = 0;
      std::vector<double> micros;
      for (const auto& t : transcripts) {
        for (const auto& a : detector.detect(t)) alarms.push_back(to_json(a));
        turns += t.turns.size();
        const auto& m = detector.last_turn_micros();
        micros.insert(micros.end(), m.begin(), m.end());
      }
      json j = {{"format", "skillguard-alarms"},
                {"version", 1},
                {"src_threshold", cfg.src_threshold},
                {"sessions", transcripts.size()},
                {"turns", turns},
                {"alarm_count", alarms.size()},
                {"alarms", alarms}};
      emit(out_path, dump(j));
      if (!micros.empty()) {
        std::nth_element(micros.begin(), micros.begin() + micros.size() / 2, micros.end());
        log_line("info", "median per-turn decision " + fixed(micros[micros.size() / 2], 1) + " us over " +
                             std::to_string(turns) + " turns");
      }
      return alarms.empty() ? kExitClean : kExitFindings;
    }

    if (*calib) {
      require_file(cfg.blacklist, "blacklist");
      require_file(legit_path, "legitimate responses");
      auto blacklist = Blacklist::load(cfg.blacklist);
      auto legit = read_lines(legit_path);
      auto provider = make_provider(cfg.provider);
      auto cal = calibrate_src(legit, blacklist, *provider);
      json j = {{"format", "skillguard-src-calibration"},
                {"legit_responses", cal.legit_count},
                {"paraphrases", cal.paraphrase_count},
                {"legit_max", cal.legit_max},
                {"legit_worst", cal.legit_worst},
                {"paraphrase_min", cal.paraphrase_min},
                {"paraphrase_worst", cal.paraphrase_worst},
                {"separable", cal.separable()}};
      if (cal.separable()) j["midpoint"] = cal.midpoint();
      emit(out_path, dump(j));
      return cal.separable() ? kExitClean : kExitFindings;
    }
  } catch (const std::exception& e) {
    log_line("error", e.what());
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace skillguard::cli
