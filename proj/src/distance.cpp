#include "skillguard/distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "skillguard/error.hpp"

namespace skillguard {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

thread_local std::vector<double> g_prev;
thread_local std::vector<double> g_cur;

}  // namespace

double weighted_distance(const Pronunciation& first, const Pronunciation& second,
                         const CostMatrix& m) {
  const std::size_t n = first.size();
  const std::size_t w = second.size();
  auto& prev = g_prev;
  auto& cur = g_cur;
  prev.assign(w + 1, 0.0);
  cur.assign(w + 1, 0.0);
  for (std::size_t j = 1; j <= w; ++j) prev[j] = prev[j - 1] + m.insertion(second[j - 1]);
  for (std::size_t i = 1; i <= n; ++i) {
    const Phoneme a = first[i - 1];
    cur[0] = prev[0] + m.deletion(a);
    for (std::size_t j = 1; j <= w; ++j) {
      const Phoneme b = second[j - 1];
      double diag = prev[j - 1] + m.substitution(a, b);
      double up = prev[j] + m.deletion(a);
      double left = cur[j - 1] + m.insertion(b);
      cur[j] = std::min({diag, up, left});
    }
    std::swap(prev, cur);
  }
  return prev[w];
}

std::optional<double> banded_distance_at_most(const Pronunciation& first,
                                              const Pronunciation& second,
                                              const CostMatrix& m, double bound) {
  if (bound < 0.0) throw InvalidArgument("banded_distance_at_most: negative bound");
  const std::size_t n = first.size();
  const std::size_t w = second.size();
  const double limit = bound + kDistanceSlack;
  const double g = m.min_indel();
  const long long len_gap = static_cast<long long>(n) - static_cast<long long>(w);
  if (g * static_cast<double>(std::llabs(len_gap)) > limit) return std::nullopt;

  // Diagonal offsets k = i - j a path can visit within the bound satisfy
  // |k| + |len_gap - k| <= limit / g.
  long long kmin = std::min(0LL, len_gap);
  long long kmax = std::max(0LL, len_gap);
  if (g > 0.0) {
    double budget = std::floor(limit / g);
    long long spare = static_cast<long long>((budget - static_cast<double>(std::llabs(len_gap))) / 2.0);
    if (spare < 0) spare = 0;
    kmin -= spare;
    kmax += spare;
  } else {
    kmin = -static_cast<long long>(w);
    kmax = static_cast<long long>(n);
  }

  // Lower bound on the cost still needed from cell (i, j) to the corner.
  auto remaining = [&](std::size_t i, std::size_t j) {
    long long k = static_cast<long long>(i) - static_cast<long long>(j);
    return g * static_cast<double>(std::llabs(len_gap - k));
  };

  auto& prev = g_prev;
  auto& cur = g_cur;
  prev.assign(w + 1, kInf);
  cur.assign(w + 1, kInf);

  prev[0] = 0.0;
  {
    long long jhi = std::min<long long>(static_cast<long long>(w), -kmin);
    for (long long j = 1; j <= jhi; ++j) {
      double v = prev[j - 1] + m.insertion(second[j - 1]);
      prev[j] = v + remaining(0, j) > limit ? kInf : v;
    }
  }

  for (std::size_t i = 1; i <= n; ++i) {
    const Phoneme a = first[i - 1];
    long long ii = static_cast<long long>(i);
    long long jlo = std::max(0LL, ii - kmax);
    long long jhi = std::min<long long>(static_cast<long long>(w), ii - kmin);
    // Row i reads row i-1 only on [jlo-1, jhi]; bands move right by at most
    // one per row, so clearing one cell either side keeps every read defined.
    for (long long jj = std::max(0LL, jlo - 1); jj <= std::min<long long>(w, jhi + 1); ++jj) {
      cur[static_cast<std::size_t>(jj)] = kInf;
    }
    double row_min = kInf;
    for (long long jj = jlo; jj <= jhi; ++jj) {
      auto j = static_cast<std::size_t>(jj);
      double v;
      if (j == 0) {
        v = prev[0] + m.deletion(a);
      } else {
        const Phoneme b = second[j - 1];
        double diag = prev[j - 1] + m.substitution(a, b);
        double up = prev[j] + m.deletion(a);
        double left = cur[j - 1] + m.insertion(b);
        v = std::min({diag, up, left});
      }
      if (v + remaining(i, j) > limit) v = kInf;
      cur[j] = v;
      row_min = std::min(row_min, v);
    }
    if (row_min > limit) return std::nullopt;
    std::swap(prev, cur);
  }
  double d = prev[w];
  if (d > bound) return std::nullopt;
  return d;
}

double min_distance(std::span<const Pronunciation> first, std::span<const Pronunciation> second,
                    const CostMatrix& m) {
  double best = kInf;
  for (const auto& a : first) {
    for (const auto& b : second) best = std::min(best, weighted_distance(a, b, m));
  }
  return best;
}

std::optional<double> min_distance_at_most(std::span<const Pronunciation> first,
                                           std::span<const Pronunciation> second,
                                           const CostMatrix& m, double bound) {
  std::optional<double> best;
  for (const auto& a : first) {
    for (const auto& b : second) {
      auto d = banded_distance_at_most(a, b, m, bound);
      if (d && (!best || *d < *best)) best = d;
    }
  }
  return best;
}

PhonemeCounts phoneme_counts(const Pronunciation& p) {
  PhonemeCounts c{};
  for (auto ph : p.phonemes) {
    auto& n = c[static_cast<std::size_t>(ph)];
    if (n < UINT8_MAX) ++n;
  }
  return c;
}

PhraseDistance phrase_distance(std::string_view a, std::string_view b, const Dictionary& dict,
                               const CostMatrix& m) {
  auto pa = phonemize_phrase(a, dict);
  auto pb = phonemize_phrase(b, dict);
  PhraseDistance best{kInf, {}, {}};
  for (const auto& x : pa) {
    for (const auto& y : pb) {
      double d = weighted_distance(x, y, m);
      if (d < best.cost) best = {d, x, y};
    }
  }
  return best;
}

}  // namespace skillguard
