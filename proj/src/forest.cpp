#include "skillguard/forest.hpp"

#include <algorithm>
#include <numeric>

#include "skillguard/error.hpp"
#include "skillguard/parallel.hpp"

namespace skillguard {

std::string_view to_string(Intent i) {
  return i == Intent::context_switch ? "switch" : "no-switch";
}

Intent parse_intent(std::string_view label) {
  if (label == "switch") return Intent::context_switch;
  if (label == "no-switch") return Intent::stay;
  throw InvalidArgument("unknown label '" + std::string(label) + "' (expected switch or no-switch)");
}

// splitmix64
Rng::Rng(std::uint64_t seed) : _state(seed) {}

std::uint64_t Rng::next() {
  std::uint64_t z = (_state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("Rng::below(0)");
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

Intent DecisionTree::predict(const FeatureVector& x) const {
  std::size_t i = 0;
  while (nodes[i].feature >= 0) {
    const auto& n = nodes[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
  }
  const auto& leaf = nodes[i];
  return leaf.counts[1] > leaf.counts[0] ? Intent::context_switch : Intent::stay;
}

Forest::Forest(ForestParams params, std::uint64_t seed, std::vector<DecisionTree> trees)
    : _params(params), _seed(seed), _trees(std::move(trees)) {}

Classification Forest::classify(const FeatureVector& x) const {
  if (_trees.empty()) throw InvalidArgument("forest has no trees");
  std::size_t votes = 0;
  for (const auto& t : _trees) votes += t.predict(x) == Intent::context_switch ? 1 : 0;
  double fraction = static_cast<double>(votes) / static_cast<double>(_trees.size());
  Intent label = 2 * votes > _trees.size() ? Intent::context_switch : Intent::stay;
  return {label, fraction};
}

Classification uic_classify(const FeatureVector& x, const Forest& forest) {
  return forest.classify(x);
}

namespace {

constexpr std::string_view kForestFormat = "skillguard-forest";
constexpr int kForestVersion = 1;

double gini(std::size_t neg, std::size_t pos) {
  double n = static_cast<double>(neg + pos);
  if (n == 0) return 0.0;
  double p = static_cast<double>(pos) / n;
  return 2.0 * p * (1.0 - p);
}

class TreeBuilder {
 public:
  TreeBuilder(std::span<const LabeledExample> data, const ForestParams& params, Rng& rng)
      : _data(data), _params(params), _rng(rng) {}

  DecisionTree build(std::vector<std::size_t> sample) {
    _tree.nodes.clear();
    grow(std::move(sample));
    return std::move(_tree);
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;
  };

  std::int32_t grow(std::vector<std::size_t> sample) {
    auto id = static_cast<std::int32_t>(_tree.nodes.size());
    _tree.nodes.emplace_back();
    std::array<std::uint32_t, 2> counts{};
    for (auto s : sample) ++counts[static_cast<std::size_t>(_data[s].label)];
    _tree.nodes[static_cast<std::size_t>(id)].counts = counts;

    if (counts[0] == 0 || counts[1] == 0 || sample.size() < 2 * _params.min_leaf) return id;
    Split best = find_split(sample);
    if (best.feature < 0) return id;

    std::vector<std::size_t> left, right;
    for (auto s : sample) {
      (_data[s].features[static_cast<std::size_t>(best.feature)] <= best.threshold ? left : right).push_back(s);
    }
    sample.clear();
    sample.shrink_to_fit();
    auto l = grow(std::move(left));
    auto r = grow(std::move(right));
    auto& node = _tree.nodes[static_cast<std::size_t>(id)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = l;
    node.right = r;
    return id;
  }

  // Draws features without replacement; keeps drawing past max_features only
  // while no drawn feature admits a valid split.
  Split find_split(const std::vector<std::size_t>& sample) {
    std::array<std::size_t, kFeatureCount> order;
    std::iota(order.begin(), order.end(), 0);
    Split best;
    bool found = false;
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      auto pick = k + static_cast<std::size_t>(_rng.below(kFeatureCount - k));
      std::swap(order[k], order[pick]);
      if (k >= _params.max_features && found) break;
      Split s;
      if (best_split_on(order[k], sample, s) && (!found || s.impurity < best.impurity)) {
        best = s;
        found = true;
      }
    }
    return best;
  }

  bool best_split_on(std::size_t feature, const std::vector<std::size_t>& sample, Split& out) {
    std::vector<std::pair<double, std::size_t>> column;
    column.reserve(sample.size());
    std::size_t total_pos = 0;
    for (auto s : sample) {
      auto label = static_cast<std::size_t>(_data[s].label);
      column.emplace_back(_data[s].features[feature], label);
      total_pos += label;
    }
    std::sort(column.begin(), column.end());
    const std::size_t n = column.size();
    const std::size_t total_neg = n - total_pos;
    std::size_t left_pos = 0;
    bool found = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      left_pos += column[i].second;
      if (column[i].first == column[i + 1].first) continue;
      std::size_t nl = i + 1, nr = n - nl;
      if (nl < _params.min_leaf || nr < _params.min_leaf) continue;
      std::size_t left_neg = nl - left_pos;
      double impurity = (static_cast<double>(nl) * gini(left_neg, left_pos) +
                         static_cast<double>(nr) * gini(total_neg - left_neg, total_pos - left_pos)) /
                        static_cast<double>(n);
      if (!found || impurity < out.impurity) {
        out.feature = static_cast<int>(feature);
        out.threshold = column[i].first + (column[i + 1].first - column[i].first) / 2.0;
        out.impurity = impurity;
        found = true;
      }
    }
    return found;
  }

  std::span<const LabeledExample> _data;
  const ForestParams& _params;
  Rng& _rng;
  DecisionTree _tree;
};

void validate(std::span<const LabeledExample> data, const ForestParams& params) {
  if (data.empty()) throw InvalidArgument("train_forest: empty dataset");
  bool has[2] = {false, false};
  for (const auto& e : data) has[static_cast<std::size_t>(e.label)] = true;
  if (!has[0] || !has[1]) throw InvalidArgument("train_forest: dataset needs both labels");
  if (params.trees < 1) throw InvalidArgument("train_forest: need at least one tree");
  if (params.max_features < 1 || params.max_features > kFeatureCount) {
    throw InvalidArgument("train_forest: max_features must be in [1, 10]");
  }
  if (params.min_leaf < 1) throw InvalidArgument("train_forest: min_leaf must be >= 1");
}

}  // namespace

Forest train_forest(std::span<const LabeledExample> data, const ForestParams& params,
                    std::uint64_t seed, unsigned threads) {
  validate(data, params);
  std::vector<DecisionTree> trees(params.trees);
  parallel_for(params.trees, threads, [&](std::size_t t, unsigned) {
    Rng rng(seed + t);
    std::vector<std::size_t> sample(data.size());
    for (auto& s : sample) s = static_cast<std::size_t>(rng.below(data.size()));
    TreeBuilder builder(data, params, rng);
    trees[t] = builder.build(std::move(sample));
  });
  return Forest(params, seed, std::move(trees));
}

nlohmann::json Forest::to_json() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : _trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : t.nodes) {
      nodes.push_back({n.feature, n.threshold, n.left, n.right, n.counts[0], n.counts[1]});
    }
    trees.push_back(std::move(nodes));
  }
  return {
      {"format", kForestFormat},
      {"version", kForestVersion},
      {"seed", _seed},
      {"features", kFeatureCount},
      {"params",
       {{"trees", _params.trees}, {"max_features", _params.max_features}, {"min_leaf", _params.min_leaf}}},
      {"trees", std::move(trees)},
  };
}

Forest Forest::from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != kForestFormat) throw InvalidArgument("not a skillguard forest");
    if (j.at("version") != kForestVersion) throw InvalidArgument("unsupported forest version");
    if (j.at("features") != kFeatureCount) throw InvalidArgument("forest feature count mismatch");
    ForestParams p;
    p.trees = j.at("params").at("trees").get<std::size_t>();
    p.max_features = j.at("params").at("max_features").get<std::size_t>();
    p.min_leaf = j.at("params").at("min_leaf").get<std::size_t>();
    std::vector<DecisionTree> trees;
    for (const auto& jt : j.at("trees")) {
      DecisionTree t;
      for (const auto& jn : jt) {
        TreeNode n;
        n.feature = jn.at(0).get<int>();
        n.threshold = jn.at(1).get<double>();
        n.left = jn.at(2).get<std::int32_t>();
        n.right = jn.at(3).get<std::int32_t>();
        n.counts = {jn.at(4).get<std::uint32_t>(), jn.at(5).get<std::uint32_t>()};
        t.nodes.push_back(n);
      }
      auto size = static_cast<std::int32_t>(t.nodes.size());
      if (size == 0) throw InvalidArgument("forest contains an empty tree");
      for (std::int32_t i = 0; i < size; ++i) {
        const auto& n = t.nodes[static_cast<std::size_t>(i)];
        if (n.feature < 0) continue;
        if (n.feature >= static_cast<int>(kFeatureCount) || n.left <= i || n.right <= i ||
            n.left >= size || n.right >= size) {
          throw InvalidArgument("forest contains a malformed node");
        }
      }
      trees.push_back(std::move(t));
    }
    if (trees.size() != p.trees) throw InvalidArgument("forest tree count mismatch");
    return Forest(p, j.at("seed").get<std::uint64_t>(), std::move(trees));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed forest: ") + e.what());
  }
}

double CrossValidation::precision() const {
  auto d = true_positive + false_positive;
  return d == 0 ? 0.0 : static_cast<double>(true_positive) / static_cast<double>(d);
}

double CrossValidation::recall() const {
  auto d = true_positive + false_negative;
  return d == 0 ? 0.0 : static_cast<double>(true_positive) / static_cast<double>(d);
}

double CrossValidation::f1() const {
  double p = precision(), r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

double CrossValidation::accuracy() const {
  auto n = true_positive + false_positive + true_negative + false_negative;
  return n == 0 ? 0.0 : static_cast<double>(true_positive + true_negative) / static_cast<double>(n);
}

CrossValidation cross_validate(std::span<const LabeledExample> data, const ForestParams& params,
                               std::uint64_t seed, std::size_t folds, unsigned threads) {
  if (folds < 2) throw InvalidArgument("cross_validate: need at least 2 folds");
  validate(data, params);
  std::vector<std::size_t> fold_of(data.size());
  Rng rng(seed);
  for (std::size_t cls = 0; cls < 2; ++cls) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (static_cast<std::size_t>(data[i].label) == cls) members.push_back(i);
    }
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[static_cast<std::size_t>(rng.below(i))]);
    }
    for (std::size_t i = 0; i < members.size(); ++i) fold_of[members[i]] = i % folds;
  }

  CrossValidation cv;
  cv.folds = folds;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<LabeledExample> train;
    std::vector<std::size_t> test;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (fold_of[i] == f) {
        test.push_back(i);
      } else {
        train.push_back(data[i]);
      }
    }
    auto forest = train_forest(train, params, seed, threads);
    for (auto i : test) {
      bool predicted = forest.classify(data[i].features).label == Intent::context_switch;
      bool actual = data[i].label == Intent::context_switch;
      if (predicted && actual) ++cv.true_positive;
      else if (predicted) ++cv.false_positive;
      else if (actual) ++cv.false_negative;
      else ++cv.true_negative;
    }
  }
  return cv;
}

}  // namespace skillguard
