#include <doctest.h>

#include "skillguard/text.hpp"

using namespace skillguard;

TEST_CASE("normalize_name") {
  CHECK(normalize_name("  Sleep   Sounds!! ") == "sleep sounds");
  CHECK(normalize_name("What's the Weather?") == "what's the weather");
  CHECK(normalize_name("'quoted'") == "quoted");
  CHECK(normalize_name("7-Minute Workout") == "7 minute workout");
  CHECK(normalize_name("") == "");
}

TEST_CASE("word sequences") {
  auto words = split_words("open sleep sounds please");
  CHECK(words.size() == 4);
  CHECK(join_words(words) == "open sleep sounds please");
  CHECK(contains_word_sequence(words, split_words("sleep sounds")));
  CHECK_FALSE(contains_word_sequence(words, split_words("sounds sleep")));
  CHECK_FALSE(contains_word_sequence(split_words("sleepy sounds"), split_words("sleep sounds")));
  CHECK_FALSE(contains_word_sequence(words, {}));
}

TEST_CASE("sentence splitting") {
  auto s = split_sentences("First one. Second one! Third?  ");
  REQUIRE(s.size() == 3);
  CHECK(s[0] == "First one.");
  CHECK(s[2] == "Third?");
  CHECK(split_sentences("no terminator").size() == 1);
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}
