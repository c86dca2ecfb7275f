#include <doctest.h>

#include <random>

#include "spark/instance.hpp"

using namespace spark::instance;
using spark::parse::RuleParser;

namespace {

Instance parsed(const std::string& sentence, const RuleParser& parser) {
  Instance inst;
  inst.id = "t";
  inst.raw_text = sentence;
  inst.tokens = parser.annotate(sentence);
  return inst;
}

} // namespace

TEST_CASE("split_instances yields one instance per accepted sentence, in order") {
  RuleParser parser;
  spark::corpus::Post post;
  post.id = "p1";
  post.body = "I yelled at my sister. She cried.";
  auto instances = split_instances(post, parser);
  REQUIRE(instances.size() == 2);
  CHECK(instances[0].raw_text == "I yelled at my sister.");
  CHECK(instances[1].raw_text == "She cried.");
  CHECK(instances[0].id == "p1_i0");
  CHECK(instances[1].post_id == "p1");
}

TEST_CASE("fragments are rejected by the full-sentence check") {
  RuleParser parser;
  spark::corpus::Post post;
  post.id = "p1";
  post.body = "I yelled at my sister. Because of her.";
  auto instances = split_instances(post, parser);
  REQUIRE(instances.size() == 1);
  CHECK(instances[0].raw_text == "I yelled at my sister.");
}

TEST_CASE("empty body produces no instances") {
  RuleParser parser;
  spark::corpus::Post post;
  post.id = "p1";
  CHECK(split_instances(post, parser).empty());
}

TEST_CASE("filter_instances needs a subject and a verb root") {
  RuleParser parser;
  std::vector<Instance> in = {
      parsed("She left.", parser),
      parsed("In the morning.", parser),
      parsed("Stop calling me.", parser), // imperative: no overt subject
  };
  auto out = filter_instances(in);
  REQUIRE(out.size() == 1);
  CHECK(out[0].raw_text == "She left.");
}

TEST_CASE("split then filter preserves document order") {
  RuleParser parser;
  spark::corpus::Post post;
  post.id = "p";
  post.body = "I paid the bill. Stop calling me. My sister stole my money.";
  auto out = filter_instances(split_instances(post, parser));
  REQUIRE(out.size() == 2);
  CHECK(out[0].raw_text == "I paid the bill.");
  CHECK(out[1].raw_text == "My sister stole my money.");
}

TEST_CASE("clean_text expands contractions before removing stopwords") {
  CleanerConfig cfg;
  cfg.contractions = CleanerConfig::defaults().contractions;
  CHECK(clean_text("can't", cfg) == "can not");
  CHECK(clean_text("I won't go", cfg) == "i will not go");
}

TEST_CASE("clean_text removes stopwords, emoji, and punctuation") {
  auto cfg = CleanerConfig::defaults();
  CHECK(clean_text("I love it \xF0\x9F\x8E\x89!!", cfg) == "love");
  CHECK(clean_text("", cfg) == "");
  CHECK(clean_text("She YELLED at me!", cfg) == "yelled");
}

TEST_CASE("clean_text is idempotent") {
  auto cfg = CleanerConfig::bundled(SPARK_DATA_DIR);
  for (const auto* s : {"I can't believe she took my car!", "wow \xF0\x9F\x98\xA1 unreal",
                        "My sister yelled at me yesterday.", "", "a b c d"}) {
    auto once = clean_text(s, cfg);
    CHECK(clean_text(once, cfg) == once);
  }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(0, 40);
  std::uniform_int_distribution<int> ch(32, 126);
  for (int t = 0; t < 500; ++t) {
    std::string s;
    int n = len(rng);
    for (int i = 0; i < n; ++i) s.push_back(static_cast<char>(ch(rng)));
    auto once = clean_text(s, cfg);
    CHECK(clean_text(once, cfg) == once);
  }
}

TEST_CASE("triple extraction on an active clause") {
  RuleParser parser;
  RuleTripleExtractor ex;
  auto inst = parsed("I forced her to apologize.", parser);
  auto t = ex.extract(inst);
  REQUIRE(t.has_value());
  CHECK(t->subject == "I");
  CHECK(t->predicate == "forced");
  REQUIRE(t->object.has_value());
  CHECK(*t->object == "her");
  CHECK_FALSE(t->was_passive);
}

TEST_CASE("passive maps nsubjpass to object and the by-phrase to subject") {
  RuleParser parser;
  RuleTripleExtractor ex;
  auto t = ex.extract(parsed("He was pushed by John.", parser));
  REQUIRE(t.has_value());
  CHECK(t->subject == "John");
  CHECK(t->predicate == "pushed");
  REQUIRE(t->object.has_value());
  CHECK(*t->object == "He");
  CHECK(t->was_passive);
}

TEST_CASE("passive round-trip produces the same triple as the active form") {
  RuleParser parser;
  RuleTripleExtractor ex;
  auto active = ex.extract(parsed("Tom pushed Anna.", parser));
  auto passive = ex.extract(parsed("Anna was pushed by Tom.", parser));
  REQUIRE(active.has_value());
  REQUIRE(passive.has_value());
  CHECK(active->subject == passive->subject);
  CHECK(parser.verb_lemma(active->predicate) == parser.verb_lemma(passive->predicate));
  REQUIRE(active->object.has_value());
  REQUIRE(passive->object.has_value());
  CHECK(*active->object == *passive->object);
}

TEST_CASE("no verb root means no triple") {
  RuleParser parser;
  RuleTripleExtractor ex;
  CHECK_FALSE(ex.extract(parsed("Absolutely not.", parser)).has_value());
}

TEST_CASE("triple predicate shares a verb lemma with the instance") {
  RuleParser parser;
  RuleTripleExtractor ex;
  for (const auto* s : {"I yelled at my sister.", "My friend paid the bill.",
                        "She took my car.", "They invited me to the party."}) {
    auto inst = parsed(s, parser);
    auto t = ex.extract(inst);
    REQUIRE(t.has_value());
    auto lemmas = inst.verb_lemmas();
    CHECK(lemmas.count(parser.verb_lemma(t->predicate)) == 1);
  }
}

TEST_CASE("character extraction finds authors and descriptive words") {
  RuleParser parser;
  auto inst = parsed("I told my lazy brother.", parser);
  auto mentions = extract_characters(inst);
  REQUIRE(mentions.size() == 2);
  CHECK(mentions[0].surface == "I");
  CHECK(mentions[0].is_author);
  CHECK(mentions[0].descriptive_words.empty());
  CHECK(mentions[1].surface == "brother");
  CHECK_FALSE(mentions[1].is_author);
  REQUIRE(mentions[1].descriptive_words.size() == 1);
  CHECK(inst.tokens[mentions[1].descriptive_words[0]].surface == "lazy");
}

TEST_CASE("predicate adjectives describe the clause subject") {
  RuleParser parser;
  auto inst = parsed("My mom said I was rude.", parser);
  auto mentions = extract_characters(inst);
  REQUIRE(mentions.size() == 2);
  CHECK(mentions[0].surface == "mom");
  CHECK_FALSE(mentions[0].is_author);
  CHECK(mentions[1].surface == "I");
  CHECK(mentions[1].is_author);
  REQUIRE(mentions[1].descriptive_words.size() == 1);
  CHECK(inst.tokens[mentions[1].descriptive_words[0]].surface == "rude");
}

TEST_CASE("descriptive words are always ADJ or ADV") {
  RuleParser parser;
  for (const auto* s : {"I told my lazy brother.", "My mom said I was rude.",
                        "My angry sister yelled loudly.", "It rained."}) {
    auto inst = parsed(s, parser);
    for (const auto& m : extract_characters(inst)) {
      for (int k : m.descriptive_words) {
        const auto& pos = inst.tokens[k].pos;
        CHECK((pos == "ADJ" || pos == "ADV"));
      }
    }
  }
}

TEST_CASE("no characters in weather sentences") {
  RuleParser parser;
  CHECK(extract_characters(parsed("It rained.", parser)).empty());
}

TEST_CASE("negation edges") {
  RuleParser parser;
  auto happy = parsed("I am not happy.", parser);
  CHECK(has_negation_edge(happy, {3}));
  auto fine = parsed("I am happy.", parser);
  CHECK_FALSE(has_negation_edge(fine, {2}));
  auto never = parsed("I never lied.", parser);
  CHECK(has_negation_edge(never, {2}));
}

TEST_CASE("is_author_word covers first-person singular forms only") {
  for (const auto* w : {"I", "me", "my", "mine", "myself", "Me"}) CHECK(is_author_word(w));
  for (const auto* w : {"we", "you", "she", "sister"}) CHECK_FALSE(is_author_word(w));
}
