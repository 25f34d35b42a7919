#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace skillguard {

inline constexpr std::size_t kFeatureCount = 10;

/// UIC features, in order:
///   0 max SR vs system commands        1 mean SR vs system commands
///   2 utterance names a catalog skill  3 SR vs the prior skill response
///   4..8 top-5 SRs vs description sentences (descending, zero-padded)
///   9 mean SR vs description sentences
struct FeatureVector {
  std::array<double, kFeatureCount> values{};

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

enum class Intent : std::uint8_t { stay = 0, context_switch = 1 };

std::string_view to_string(Intent i);
Intent parse_intent(std::string_view label);

struct LabeledExample {
  FeatureVector features;
  Intent label;
};

struct ForestParams {
  std::size_t trees = 100;
  std::size_t max_features = 4;  // ceil(sqrt(10))
  std::size_t min_leaf = 2;

  friend bool operator==(const ForestParams&, const ForestParams&) = default;
};

/// Node of a binary decision tree stored in a flat array. Leaves have
/// feature == -1 and carry class counts; internal nodes send
/// x[feature] <= threshold left.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::array<std::uint32_t, 2> counts{};

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;

  /// Majority class of the reached leaf; ties go to Intent::stay.
  Intent predict(const FeatureVector& x) const;
  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

struct Classification {
  Intent label;
  double switch_fraction;  // share of trees voting context_switch
};

class Forest {
 public:
  Forest() = default;
  Forest(ForestParams params, std::uint64_t seed, std::vector<DecisionTree> trees);

  /// Majority vote; a tie is resolved to Intent::stay.
  Classification classify(const FeatureVector& x) const;

  const ForestParams& params() const { return _params; }
  std::uint64_t seed() const { return _seed; }
  const std::vector<DecisionTree>& trees() const { return _trees; }

  nlohmann::json to_json() const;
  static Forest from_json(const nlohmann::json& j);

  friend bool operator==(const Forest&, const Forest&) = default;

 private:
  ForestParams _params;
  std::uint64_t _seed = 0;
  std::vector<DecisionTree> _trees;
};

/// Bootstrap-sampled CART trees with Gini impurity and `max_features` random
/// candidate features per split, grown until pure or until no split leaves
/// `min_leaf` samples on both sides. Tree t draws from seed + t, so training
/// is deterministic and trees can be built in parallel.
Forest train_forest(std::span<const LabeledExample> data, const ForestParams& params,
                    std::uint64_t seed, unsigned threads = 1);

Classification uic_classify(const FeatureVector& x, const Forest& forest);

struct CrossValidation {
  std::size_t folds = 0;
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t true_negative = 0;
  std::size_t false_negative = 0;

  double precision() const;
  double recall() const;
  double f1() const;
  double accuracy() const;
};

/// Stratified k-fold evaluation with context_switch as the positive class.
/// Fold assignment is a seeded shuffle within each class.
CrossValidation cross_validate(std::span<const LabeledExample> data, const ForestParams& params,
                               std::uint64_t seed, std::size_t folds, unsigned threads = 1);

/// Small portable PRNG wrapper: identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t _state;
};

}  // namespace skillguard
