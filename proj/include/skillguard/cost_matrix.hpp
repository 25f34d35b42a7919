#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skillguard/dictionary.hpp"
#include "skillguard/phoneme.hpp"

namespace skillguard {

enum class OpKind { match, substitute, insert, remove };

/// One column of an alignment. `a` is from the first sequence, `b` from the
/// second; an insert has no `a`, a remove has no `b`.
struct AlignmentOp {
  OpKind kind;
  std::optional<Phoneme> a;
  std::optional<Phoneme> b;

  friend bool operator==(const AlignmentOp&, const AlignmentOp&) = default;
};

/// Needleman-Wunsch global alignment under unit costs. Backtrace prefers
/// match, then substitute, then remove, then insert, so the path is
/// deterministic. Throws InvalidArgument on empty input.
std::vector<AlignmentOp> align_uniform(const Pronunciation& first, const Pronunciation& second);

using PronunciationPair = std::pair<Pronunciation, Pronunciation>;

/// Phoneme and substitution counts over the edit paths of a corpus. Slot
/// kGapSlot stands for "none".
struct FrequencyTables {
  std::array<std::uint64_t, kSlotCount> phoneme{};
  std::array<std::array<std::uint64_t, kSlotCount>, kSlotCount> substitution{};
  std::size_t pairs = 0;

  void merge(const FrequencyTables& other);
  friend bool operator==(const FrequencyTables&, const FrequencyTables&) = default;
};

/// Aligns each pair once (first -> second) and counts every aligned position:
/// F gains one per phoneme present on each side (gap counts as "none"),
/// SF(a, b) gains one per substitute/insert/remove. Throws on an empty corpus.
FrequencyTables accumulate(std::span<const PronunciationPair> corpus, unsigned threads = 1);

/// All unordered pairs of alternative pronunciations in a dictionary, in
/// headword order and, within a headword, listing order.
std::vector<PronunciationPair> alternative_pairs(const Dictionary& dict);

/// Symmetric phoneme edit costs in [0, 1]:
///   WC(a, b) = 1 - (SF(a,b) + SF(b,a)) / (F(a) + F(b)),
/// zero on the diagonal, one for pairs never observed.
class CostMatrix {
 public:
  /// Every off-diagonal cost 1 (plain Levenshtein over phonemes).
  CostMatrix();

  double cost(std::size_t from_slot, std::size_t to_slot) const {
    return _costs[from_slot * kSlotCount + to_slot];
  }
  double substitution(Phoneme a, Phoneme b) const { return cost(slot(a), slot(b)); }
  double insertion(Phoneme b) const { return cost(kGapSlot, slot(b)); }
  double deletion(Phoneme a) const { return cost(slot(a), kGapSlot); }

  /// Cheapest insertion or deletion; drives length-based pruning.
  double min_indel() const { return _min_indel; }
  /// Cheapest non-match operation (substitution, insertion or deletion).
  double min_operation() const { return _min_operation; }

  /// Sets both (a, b) and (b, a). Diagonal entries are fixed at 0.
  void set(std::size_t a, std::size_t b, double value);

  const std::array<double, kSlotCount * kSlotCount>& values() const { return _costs; }

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  void refresh_bounds();

  std::array<double, kSlotCount * kSlotCount> _costs;
  double _min_indel = 1.0;
  double _min_operation = 1.0;
};

CostMatrix build_matrix(const FrequencyTables& tables);

struct MatrixFileInfo {
  std::string source;
  std::size_t pairs = 0;
  std::string checksum;
};

/// Versioned TSV: "#" header lines (format, source, pairs, checksum) then a
/// symbol header row and one row per slot. The checksum is FNV-1a 64 over the
/// table body.
void write_matrix_tsv(std::ostream& out, const CostMatrix& m, const std::string& source,
                      std::size_t pairs);

/// Reads a matrix TSV; throws ParseError on malformed tables or a checksum
/// mismatch.
CostMatrix read_matrix_tsv(std::istream& in, MatrixFileInfo* info = nullptr);
CostMatrix load_matrix(const std::string& path, MatrixFileInfo* info = nullptr);

}  // namespace skillguard
