#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "skillguard/cost_matrix.hpp"
#include "skillguard/dictionary.hpp"

namespace skillguard {

/// Tolerance added to distance bounds so sums that equal a threshold in exact
/// arithmetic are not lost to rounding.
inline constexpr double kDistanceSlack = 1e-9;

/// Minimum total cost of a global alignment of `first` onto `second`, with
/// substitution WC(a,b), insertion WC(none,b) and deletion WC(a,none).
/// Raw cost, not length-normalized. O(|first|*|second|).
double weighted_distance(const Pronunciation& first, const Pronunciation& second,
                         const CostMatrix& m);

/// Same value as weighted_distance whenever that value is <= bound; otherwise
/// nullopt. Restricts the table to the diagonal band reachable within the
/// bound and abandons once a whole row exceeds it.
std::optional<double> banded_distance_at_most(const Pronunciation& first,
                                              const Pronunciation& second,
                                              const CostMatrix& m, double bound);

/// Minimum over the cross product of two alternative sets.
double min_distance(std::span<const Pronunciation> first, std::span<const Pronunciation> second,
                    const CostMatrix& m);

/// Banded counterpart of min_distance.
std::optional<double> min_distance_at_most(std::span<const Pronunciation> first,
                                           std::span<const Pronunciation> second,
                                           const CostMatrix& m, double bound);

/// Per-phoneme occurrence counts of a pronunciation.
using PhonemeCounts = std::array<std::uint8_t, kPhonemeCount>;

PhonemeCounts phoneme_counts(const Pronunciation& p);

/// Lower bound on weighted_distance from counts alone: every non-match
/// operation moves the L1 count difference by at most 2 and costs at least
/// m.min_operation().
inline double count_lower_bound(const PhonemeCounts& a, const PhonemeCounts& b, const CostMatrix& m) {
  unsigned l1 = 0;
  for (std::size_t i = 0; i < kPhonemeCount; ++i) l1 += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
  return static_cast<double>((l1 + 1) / 2) * m.min_operation();
}

struct PhraseDistance {
  double cost = 0.0;
  Pronunciation first;   // phonemization of the first phrase realizing `cost`
  Pronunciation second;  // ... and of the second
};

/// Minimum weighted distance over all phonemizations of both phrases.
PhraseDistance phrase_distance(std::string_view a, std::string_view b, const Dictionary& dict,
                               const CostMatrix& m);

}  // namespace skillguard
