#include <doctest.h>

#include "spark/text.hpp"

using namespace spark::text;

TEST_CASE("words splits on whitespace and trims edge punctuation") {
  CHECK(words("hello, world!") == std::vector<std::string>{"hello", "world"});
  CHECK(words("  spaced\tout\nlines ") == std::vector<std::string>{"spaced", "out", "lines"});
  CHECK(words("don't stop") == std::vector<std::string>{"don't", "stop"});
  CHECK(words("--- !!! ...") == std::vector<std::string>{});
  CHECK(words("") == std::vector<std::string>{});
  CHECK(words("(parens) [brackets]") == std::vector<std::string>{"parens", "brackets"});
}

TEST_CASE("word_count is the length of words()") {
  CHECK(word_count("one two three") == 3);
  CHECK(word_count("") == 0);
  CHECK(word_count("a, b. c!") == 3);
}

TEST_CASE("lowercase") {
  CHECK(lowercase("MiXeD Case 42") == "mixed case 42");
  CHECK(lowercase("") == "");
}

TEST_CASE("alnum_tokens lowercases and splits at non-alphanumerics") {
  CHECK(alnum_tokens("She took my CAR!") ==
        std::vector<std::string>{"she", "took", "my", "car"});
  CHECK(alnum_tokens("don't") == std::vector<std::string>{"don", "t"});
  CHECK(alnum_tokens("...") == std::vector<std::string>{});
}

TEST_CASE("jaccard") {
  std::vector<std::string> a{"a", "b", "c"};
  std::vector<std::string> b{"b", "c", "d"};
  CHECK(jaccard(a, a) == doctest::Approx(1.0));
  CHECK(jaccard(a, b) == doctest::Approx(2.0 / 4.0));
  CHECK(jaccard(a, {}) == doctest::Approx(0.0));
  CHECK(jaccard({}, {}) == doctest::Approx(0.0));
  // duplicates count once (set semantics)
  CHECK(jaccard({"a", "a", "b"}, {"a", "b"}) == doctest::Approx(1.0));
}

TEST_CASE("split_lines handles \\n and \\r\\n") {
  CHECK(split_lines("a\nb") == std::vector<std::string>{"a", "b"});
  CHECK(split_lines("a\r\nb\n") == std::vector<std::string>{"a", "b", ""});
  CHECK(split_lines("") == std::vector<std::string>{""});
}

TEST_CASE("join") {
  CHECK(join({"a", "b", "c"}, ", ") == "a, b, c");
  CHECK(join({}, ",") == "");
  CHECK(join({"solo"}, ",") == "solo");
}

TEST_CASE("trim") {
  CHECK(trim("  x  ") == "x");
  CHECK(trim("\t\n") == "");
  CHECK(trim("no-op") == "no-op");
}

TEST_CASE("starts_with_icase") {
  CHECK(starts_with_icase("NTA obviously", "nta"));
  CHECK(starts_with_icase("abc", ""));
  CHECK_FALSE(starts_with_icase("ab", "abc"));
  CHECK_FALSE(starts_with_icase("xNTA", "nta"));
}
