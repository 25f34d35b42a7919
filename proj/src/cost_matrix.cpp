#include "skillguard/cost_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "skillguard/error.hpp"
#include "skillguard/parallel.hpp"
#include "skillguard/text.hpp"

namespace skillguard {

std::vector<AlignmentOp> align_uniform(const Pronunciation& first, const Pronunciation& second) {
  if (first.empty() || second.empty()) throw InvalidArgument("align_uniform: empty pronunciation");
  const std::size_t n = first.size();
  const std::size_t m = second.size();
  std::vector<std::size_t> d((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return d[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t diag = at(i - 1, j - 1) + (first[i - 1] == second[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  std::vector<AlignmentOp> path;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      bool same = first[i - 1] == second[j - 1];
      if (same && at(i - 1, j - 1) == at(i, j)) {
        path.push_back({OpKind::match, first[i - 1], second[j - 1]});
        --i, --j;
        continue;
      }
      if (!same && at(i - 1, j - 1) + 1 == at(i, j)) {
        path.push_back({OpKind::substitute, first[i - 1], second[j - 1]});
        --i, --j;
        continue;
      }
    }
    if (i > 0 && at(i - 1, j) + 1 == at(i, j)) {
      path.push_back({OpKind::remove, first[i - 1], std::nullopt});
      --i;
    } else {
      path.push_back({OpKind::insert, std::nullopt, second[j - 1]});
      --j;
    }
  }
  std::reverse(path.begin(), path.end());
  return path;
}

void FrequencyTables::merge(const FrequencyTables& other) {
  for (std::size_t a = 0; a < kSlotCount; ++a) {
    phoneme[a] += other.phoneme[a];
    for (std::size_t b = 0; b < kSlotCount; ++b) substitution[a][b] += other.substitution[a][b];
  }
  pairs += other.pairs;
}

namespace {

void count_pair(const PronunciationPair& pair, FrequencyTables& t) {
  for (const auto& op : align_uniform(pair.first, pair.second)) {
    std::size_t a = op.a ? slot(*op.a) : kGapSlot;
    std::size_t b = op.b ? slot(*op.b) : kGapSlot;
    ++t.phoneme[a];
    ++t.phoneme[b];
    if (op.kind != OpKind::match) ++t.substitution[a][b];
  }
  ++t.pairs;
}

}  // namespace

FrequencyTables accumulate(std::span<const PronunciationPair> corpus, unsigned threads) {
  if (corpus.empty()) throw InvalidArgument("accumulate: empty pronunciation-pair corpus");
  threads = std::max(1u, threads);
  std::vector<FrequencyTables> partial(threads);
  const std::size_t chunk = (corpus.size() + threads - 1) / threads;
  parallel_for(threads, threads, [&](std::size_t w, unsigned) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(corpus.size(), begin + chunk);
    for (std::size_t i = begin; i < end; ++i) count_pair(corpus[i], partial[w]);
  });
  FrequencyTables total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

std::vector<PronunciationPair> alternative_pairs(const Dictionary& dict) {
  std::vector<PronunciationPair> out;
  for (const auto& [word, alts] : dict.entries()) {
    for (std::size_t i = 0; i < alts.size(); ++i) {
      for (std::size_t j = i + 1; j < alts.size(); ++j) out.emplace_back(alts[i], alts[j]);
    }
  }
  return out;
}

CostMatrix::CostMatrix() {
  for (std::size_t a = 0; a < kSlotCount; ++a) {
    for (std::size_t b = 0; b < kSlotCount; ++b) _costs[a * kSlotCount + b] = a == b ? 0.0 : 1.0;
  }
}

void CostMatrix::set(std::size_t a, std::size_t b, double value) {
  if (a >= kSlotCount || b >= kSlotCount) throw InvalidArgument("cost matrix slot out of range");
  if (a == b) return;
  value = std::clamp(value, 0.0, 1.0);
  _costs[a * kSlotCount + b] = value;
  _costs[b * kSlotCount + a] = value;
  refresh_bounds();
}

void CostMatrix::refresh_bounds() {
  double best = 1.0;
  for (std::size_t p = 0; p < kPhonemeCount; ++p) {
    best = std::min({best, cost(kGapSlot, p), cost(p, kGapSlot)});
  }
  _min_indel = best;
  for (std::size_t a = 0; a < kPhonemeCount; ++a) {
    for (std::size_t b = 0; b < kPhonemeCount; ++b) {
      if (a != b) best = std::min(best, cost(a, b));
    }
  }
  _min_operation = best;
}

CostMatrix build_matrix(const FrequencyTables& tables) {
  CostMatrix m;
  for (std::size_t a = 0; a < kSlotCount; ++a) {
    for (std::size_t b = a + 1; b < kSlotCount; ++b) {
      auto shared = tables.substitution[a][b] + tables.substitution[b][a];
      auto occurrences = tables.phoneme[a] + tables.phoneme[b];
      if (shared == 0 || occurrences == 0) continue;
      m.set(a, b, 1.0 - static_cast<double>(shared) / static_cast<double>(occurrences));
    }
  }
  return m;
}

namespace {

constexpr std::string_view kMatrixFormat = "# skillguard-cost-matrix v1";

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string matrix_body(const CostMatrix& m) {
  std::string body = "slot";
  for (std::size_t b = 0; b < kSlotCount; ++b) {
    body += '\t';
    body += slot_symbol(b);
  }
  body += '\n';
  for (std::size_t a = 0; a < kSlotCount; ++a) {
    body += slot_symbol(a);
    for (std::size_t b = 0; b < kSlotCount; ++b) {
      body += '\t';
      body += format_double(m.cost(a, b));
    }
    body += '\n';
  }
  return body;
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace

void write_matrix_tsv(std::ostream& out, const CostMatrix& m, const std::string& source,
                      std::size_t pairs) {
  auto body = matrix_body(m);
  out << kMatrixFormat << '\n'
      << "# source: " << source << '\n'
      << "# pairs: " << pairs << '\n'
      << "# checksum: fnv1a64:" << hex64(fnv1a64(body)) << '\n'
      << body;
}

CostMatrix read_matrix_tsv(std::istream& in, MatrixFileInfo* info) {
  MatrixFileInfo meta;
  std::string line;
  std::size_t line_no = 0;
  std::string body;
  bool format_seen = false;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.starts_with("#")) {
      if (line == kMatrixFormat) {
        format_seen = true;
      } else if (line.starts_with("# source: ")) {
        meta.source = line.substr(10);
      } else if (line.starts_with("# pairs: ")) {
        meta.pairs = std::stoull(line.substr(9));
      } else if (line.starts_with("# checksum: fnv1a64:")) {
        meta.checksum = line.substr(20);
      }
      continue;
    }
    if (line.empty()) continue;
    body += line;
    body += '\n';
    rows.push_back(line);
  }
  if (!format_seen) throw ParseError(1, "missing cost-matrix format header");
  if (rows.size() != kSlotCount + 1) {
    throw ParseError(line_no, "expected " + std::to_string(kSlotCount + 1) + " table rows, found " +
                                  std::to_string(rows.size()));
  }
  if (!meta.checksum.empty() && meta.checksum != hex64(fnv1a64(body))) {
    throw ParseError(line_no, "cost-matrix checksum mismatch");
  }

  auto header = split_tabs(rows[0]);
  if (header.size() != kSlotCount + 1) throw ParseError(0, "malformed cost-matrix header row");
  std::vector<std::size_t> columns;
  for (std::size_t c = 1; c < header.size(); ++c) {
    auto s = parse_slot(header[c]);
    if (!s) throw ParseError(0, "unknown column symbol '" + header[c] + "'");
    columns.push_back(*s);
  }

  std::array<double, kSlotCount * kSlotCount> raw{};
  std::array<bool, kSlotCount> row_seen{};
  for (std::size_t r = 1; r < rows.size(); ++r) {
    auto cells = split_tabs(rows[r]);
    if (cells.size() != kSlotCount + 1) throw ParseError(0, "malformed cost-matrix row " + std::to_string(r));
    auto row = parse_slot(cells[0]);
    if (!row || row_seen[*row]) throw ParseError(0, "bad or repeated row symbol '" + cells[0] + "'");
    row_seen[*row] = true;
    for (std::size_t c = 1; c < cells.size(); ++c) {
      double v = 0;
      const auto& cell = cells[c];
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || v < 0.0 || v > 1.0) {
        throw ParseError(0, "bad cost '" + cell + "' at row " + cells[0]);
      }
      raw[*row * kSlotCount + columns[c - 1]] = v;
    }
  }

  CostMatrix m;
  for (std::size_t a = 0; a < kSlotCount; ++a) {
    if (raw[a * kSlotCount + a] != 0.0) {
      throw ParseError(0, "non-zero diagonal at " + std::string(slot_symbol(a)));
    }
    for (std::size_t b = a + 1; b < kSlotCount; ++b) {
      if (raw[a * kSlotCount + b] != raw[b * kSlotCount + a]) {
        throw ParseError(0, "asymmetric costs for " + std::string(slot_symbol(a)) + "/" +
                                std::string(slot_symbol(b)));
      }
      m.set(a, b, raw[a * kSlotCount + b]);
    }
  }
  if (info) *info = meta;
  return m;
}

CostMatrix load_matrix(const std::string& path, MatrixFileInfo* info) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open cost matrix '" + path + "'");
  return read_matrix_tsv(in, info);
}

}  // namespace skillguard
