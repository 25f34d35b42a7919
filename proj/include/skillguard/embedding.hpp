#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace skillguard {

/// Fixed-dimension sentence vector with its Euclidean norm cached.
class SentenceVector {
 public:
  SentenceVector() = default;
  explicit SentenceVector(std::vector<double> values);

  const std::vector<double>& values() const { return _values; }
  std::size_t dimension() const { return _values.size(); }
  double norm() const { return _norm; }
  /// Indices of the non-zero components, ascending.
  const std::vector<std::uint32_t>& nonzero() const { return _nonzero; }

  SentenceVector scaled(double factor) const;

  friend bool operator==(const SentenceVector&, const SentenceVector&) = default;

 private:
  std::vector<double> _values;
  std::vector<std::uint32_t> _nonzero;
  double _norm = 0.0;
};

/// Maps text to sentence vectors. Implementations must be deterministic,
/// thread-safe, and map empty text to the zero vector.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual SentenceVector embed(std::string_view sentence) const = 0;
  virtual std::size_t dimension() const = 0;
  virtual std::string_view key() const = 0;
};

/// Hashed bag of unigrams and bigrams. Text is lowercased, split on
/// non-alphanumerics, stop words removed and suffixes stripped; each distinct
/// term adds 1 + ln(tf) to its bin. Unigrams hash into the lower half of the
/// vector and bigrams into the upper half.
class BaselineEmbedding final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDimension = 4096;
  static constexpr std::size_t kUnigramBins = kDimension / 2;
  static constexpr std::string_view kHashSeed = "skillguard-embed-v1";

  SentenceVector embed(std::string_view sentence) const override;
  std::size_t dimension() const override { return kDimension; }
  std::string_view key() const override { return "baseline"; }

  /// The processed term sequence that feeds the unigram bins.
  static std::vector<std::string> terms(std::string_view sentence);
  static std::string stem(std::string_view token);
  /// Folds a known synonym onto its class term, otherwise stems.
  static std::string normalize_term(std::string_view token);
  static bool is_stop_word(std::string_view token);
  static std::size_t unigram_bin(std::string_view term);
  static std::size_t bigram_bin(std::string_view first, std::string_view second);
};

/// Provider by configuration key; only "baseline" is built in.
std::unique_ptr<EmbeddingProvider> make_provider(std::string_view key);

/// Absolute cosine similarity in [0, 1]; 0 when either vector is zero.
double sentence_relevance(const SentenceVector& a, const SentenceVector& b);
double sentence_relevance(std::string_view a, std::string_view b, const EmbeddingProvider& provider);

}  // namespace skillguard
