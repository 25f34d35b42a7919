#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "skillguard/cost_matrix.hpp"
#include "skillguard/error.hpp"
#include "support.hpp"

using namespace skillguard;
using skillguard::testing::pron;

namespace {

std::size_t sl(const char* s) { return *parse_slot(s); }

void check_invariants(const CostMatrix& m) {
  for (std::size_t a = 0; a < kSlotCount; ++a) {
    CHECK(m.cost(a, a) == 0.0);
    for (std::size_t b = 0; b < kSlotCount; ++b) {
      CHECK(m.cost(a, b) == m.cost(b, a));
      CHECK(m.cost(a, b) >= 0.0);
      CHECK(m.cost(a, b) <= 1.0);
    }
  }
}

}  // namespace

TEST_CASE("align_uniform examples") {
  auto ops = align_uniform(pron("T AH M EY T OW"), pron("T AH M AA T OW"));
  REQUIRE(ops.size() == 6);
  CHECK(std::count_if(ops.begin(), ops.end(), [](auto& o) { return o.kind == OpKind::match; }) == 5);
  CHECK(ops[3] == AlignmentOp{OpKind::substitute, Phoneme::EY, Phoneme::AA});

  auto same = align_uniform(pron("K AE T"), pron("K AE T"));
  CHECK(std::all_of(same.begin(), same.end(), [](auto& o) { return o.kind == OpKind::match; }));

  auto ks = align_uniform(pron("K"), pron("K S"));
  REQUIRE(ks.size() == 2);
  CHECK(ks[0].kind == OpKind::match);
  CHECK(ks[1] == AlignmentOp{OpKind::insert, std::nullopt, Phoneme::S});

  auto del = align_uniform(pron("HH W AY"), pron("W AY"));
  CHECK(del.front() == AlignmentOp{OpKind::remove, Phoneme::HH, std::nullopt});
}

TEST_CASE("tie-break: substitute before delete before insert") {
  // AA B vs B AA costs 2 along three different paths.
  auto ops = align_uniform(pron("AA B"), pron("B AA"));
  REQUIRE(ops.size() == 2);
  CHECK(ops[0] == AlignmentOp{OpKind::substitute, Phoneme::AA, Phoneme::B});
  CHECK(ops[1] == AlignmentOp{OpKind::substitute, Phoneme::B, Phoneme::AA});

  // AA vs B AA: inserting B and matching AA beats any substitution.
  auto ins = align_uniform(pron("AA"), pron("B AA"));
  REQUIRE(ins.size() == 2);
  CHECK(ins[0].kind == OpKind::insert);
  CHECK(ins[1].kind == OpKind::match);
}

TEST_CASE("property: alignment ops respect their kind invariants and cost") {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    auto a = testing::random_pronunciation(rng, 1, 9);
    auto b = testing::random_pronunciation(rng, 1, 9);
    auto ops = align_uniform(a, b);
    std::size_t ia = 0, ib = 0, edits = 0;
    for (const auto& o : ops) {
      switch (o.kind) {
        case OpKind::match: CHECK(o.a == o.b); REQUIRE(o.a); CHECK(*o.a == a[ia++]); ib++; break;
        case OpKind::substitute: CHECK(o.a != o.b); CHECK(*o.a == a[ia++]); CHECK(*o.b == b[ib++]); edits++; break;
        case OpKind::insert: CHECK_FALSE(o.a); CHECK(*o.b == b[ib++]); edits++; break;
        case OpKind::remove: CHECK_FALSE(o.b); CHECK(*o.a == a[ia++]); edits++; break;
      }
    }
    CHECK(ia == a.size());
    CHECK(ib == b.size());
    CostMatrix uniform;
    CHECK(static_cast<double>(edits) == testing::brute_force_distance(a, b, uniform));
  }
}

TEST_CASE("tomato single pair") {
  std::vector<PronunciationPair> corpus{{pron("T AH M EY T OW"), pron("T AH M AA T OW")}};
  auto t = accumulate(corpus);
  CHECK(t.phoneme[slot(Phoneme::EY)] == 1);
  CHECK(t.phoneme[slot(Phoneme::AA)] == 1);
  CHECK(t.substitution[slot(Phoneme::EY)][slot(Phoneme::AA)] == 1);
  CHECK(t.substitution[slot(Phoneme::AA)][slot(Phoneme::EY)] == 0);
  auto m = build_matrix(t);
  CHECK(m.substitution(Phoneme::EY, Phoneme::AA) == 0.5);
  CHECK(m.substitution(Phoneme::CH, Phoneme::SH) == 1.0);
  check_invariants(m);
}

TEST_CASE("mirrored pairs count both directions") {
  auto a = pron("T AH M EY T OW"), b = pron("T AH M AA T OW");
  std::vector<PronunciationPair> corpus{{a, b}, {b, a}};
  auto t = accumulate(corpus);
  CHECK(t.substitution[slot(Phoneme::EY)][slot(Phoneme::AA)] == 1);
  CHECK(t.substitution[slot(Phoneme::AA)][slot(Phoneme::EY)] == 1);
}

TEST_CASE("identical pairs leave SF empty") {
  std::vector<PronunciationPair> corpus{{pron("K AE T"), pron("K AE T")}};
  auto t = accumulate(corpus);
  for (const auto& row : t.substitution) {
    for (auto v : row) CHECK(v == 0);
  }
  CHECK(t.phoneme[slot(Phoneme::K)] == 2);
  CHECK(build_matrix(t) == CostMatrix());
}

TEST_CASE("empty corpus is an error") {
  CHECK_THROWS_AS(accumulate({}), InvalidArgument);
}

TEST_CASE("hand-built corpus matches hand counts") {
  auto m = build_matrix(accumulate(testing::hand_corpus()));
  check_invariants(m);
  std::vector<std::vector<double>> expected(kSlotCount, std::vector<double>(kSlotCount, 1.0));
  for (std::size_t i = 0; i < kSlotCount; ++i) expected[i][i] = 0.0;
  for (const auto& c : testing::hand_costs()) {
    expected[sl(c.a)][sl(c.b)] = c.cost;
    expected[sl(c.b)][sl(c.a)] = c.cost;
  }
  for (std::size_t a = 0; a < kSlotCount; ++a) {
    for (std::size_t b = 0; b < kSlotCount; ++b) {
      INFO(slot_symbol(a) << "/" << slot_symbol(b));
      CHECK(std::abs(m.cost(a, b) - expected[a][b]) <= 1e-12);
    }
  }
}

TEST_CASE("property: pair order and thread count do not change the matrix") {
  auto corpus = testing::hand_corpus();
  auto reference = build_matrix(accumulate(corpus));
  Rng rng(5);
  for (int round = 0; round < 10; ++round) {
    for (std::size_t i = corpus.size(); i > 1; --i) std::swap(corpus[i - 1], corpus[rng.below(i)]);
    CHECK(build_matrix(accumulate(corpus, 1 + round % 4)) == reference);
  }
}

TEST_CASE("property: more observations of a substitution never raise its cost") {
  Rng rng(9);
  std::vector<PronunciationPair> corpus;
  for (int i = 0; i < 200; ++i) {
    auto a = testing::random_pronunciation(rng, 2, 7);
    auto b = a;
    b.phonemes[rng.below(b.size())] = static_cast<Phoneme>(rng.below(kPhonemeCount));
    corpus.emplace_back(a, b);
  }
  auto before = build_matrix(accumulate(corpus));
  corpus.emplace_back(pron("T AH M EY T OW"), pron("T AH M AA T OW"));
  auto after = build_matrix(accumulate(corpus));
  CHECK(after.substitution(Phoneme::EY, Phoneme::AA) <= before.substitution(Phoneme::EY, Phoneme::AA));
  check_invariants(after);
}

TEST_CASE("alternative_pairs takes every pair within a headword") {
  Dictionary d;
  d.add("x", pron("AA"));
  d.add("x", pron("AE"));
  d.add("x", pron("AH"));
  d.add("y", pron("B"));
  auto pairs = alternative_pairs(d);
  CHECK(pairs.size() == 3);
  CHECK(pairs[0] == PronunciationPair{pron("AA"), pron("AE")});
}

TEST_CASE("TSV round trip, checksum and validation") {
  auto m = build_matrix(accumulate(testing::hand_corpus()));
  std::ostringstream out;
  write_matrix_tsv(out, m, "hand", 10);
  std::istringstream in(out.str());
  MatrixFileInfo info;
  CHECK(read_matrix_tsv(in, &info) == m);
  CHECK(info.source == "hand");
  CHECK(info.pairs == 10);

  auto text = out.str();
  auto pos = text.find("0.875");
  REQUIRE(pos != std::string::npos);
  auto tampered = text;
  tampered.replace(pos, 5, "0.870");
  std::istringstream bad(tampered);
  CHECK_THROWS_AS(read_matrix_tsv(bad), ParseError);

  std::istringstream garbage("not a matrix\n");
  CHECK_THROWS_AS(read_matrix_tsv(garbage), ParseError);
}

TEST_CASE("bundled matrix is the one derived from the bundled dictionary") {
  auto derived = build_matrix(accumulate(alternative_pairs(testing::cmudict())));
  CHECK(derived == testing::wc_matrix());
  check_invariants(derived);
}
