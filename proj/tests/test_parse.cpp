#include <doctest.h>

#include "spark/parse.hpp"

using namespace spark::parse;

namespace {

int find_dep(const std::vector<TokenAnnotation>& toks, const std::string& dep) {
  for (std::size_t i = 0; i < toks.size(); ++i)
    if (toks[i].dep == dep) return static_cast<int>(i);
  return -1;
}

void check_well_formed(const std::vector<TokenAnnotation>& toks) {
  int roots = 0;
  for (const auto& t : toks) {
    CHECK(t.head >= 0);
    CHECK(t.head < static_cast<int>(toks.size()));
    if (t.dep == "root") {
      ++roots;
      CHECK(t.head == &t - toks.data());
    }
  }
  CHECK(roots == 1);
}

} // namespace

TEST_CASE("active transitive clause") {
  RuleParser p;
  auto toks = p.annotate("I pushed my sister.");
  REQUIRE(toks.size() == 4);
  check_well_formed(toks);
  CHECK(toks[0].dep == "nsubj");
  CHECK(toks[1].dep == "root");
  CHECK(toks[1].pos == "VERB");
  CHECK(toks[1].lemma == "push");
  CHECK(toks[2].dep == "poss");
  CHECK(toks[3].dep == "dobj");
  CHECK(toks[3].head == 1);
}

TEST_CASE("passive clause maps the by-phrase to an agent") {
  RuleParser p;
  auto toks = p.annotate("He was pushed by John.");
  REQUIRE(toks.size() == 5);
  check_well_formed(toks);
  CHECK(toks[0].dep == "nsubjpass");
  CHECK(toks[1].dep == "auxpass");
  CHECK(toks[2].dep == "root");
  CHECK(toks[2].lemma == "push");
  CHECK(toks[4].dep == "agent");
  CHECK(toks[4].pos == "PROPN");
}

TEST_CASE("to-infinitive becomes an open complement") {
  RuleParser p;
  auto toks = p.annotate("I refused to apologize.");
  REQUIRE(toks.size() == 4);
  check_well_formed(toks);
  CHECK(toks[1].dep == "root");
  CHECK(toks[1].lemma == "refuse");
  CHECK(toks[2].dep == "mark");
  CHECK(toks[3].dep == "xcomp");
  CHECK(toks[3].pos == "VERB");
}

TEST_CASE("complement clause attaches a described character") {
  RuleParser p;
  auto toks = p.annotate("My mom said I was rude.");
  REQUIRE(toks.size() == 6);
  check_well_formed(toks);
  CHECK(toks[2].dep == "root");
  CHECK(toks[2].lemma == "say");
  const int i_tok = 3;
  CHECK(toks[i_tok].dep == "nsubj");
  CHECK(toks[5].dep == "ccomp");
  CHECK(toks[i_tok].head == 5);
  CHECK(toks[5].pos == "ADJ");
}

TEST_CASE("copular clause roots at the predicate with a neg edge") {
  RuleParser p;
  auto toks = p.annotate("I am not happy.");
  REQUIRE(toks.size() == 4);
  check_well_formed(toks);
  CHECK(toks[3].dep == "root");
  CHECK(toks[3].pos == "ADJ");
  CHECK(toks[1].dep == "cop");
  CHECK(toks[2].dep == "neg");
  CHECK(toks[2].head == 3);
  CHECK(toks[0].dep == "nsubj");
}

TEST_CASE("never is a negation edge on the verb") {
  RuleParser p;
  auto toks = p.annotate("I never lied.");
  REQUIRE(toks.size() == 3);
  check_well_formed(toks);
  CHECK(toks[1].dep == "neg");
  CHECK(toks[1].head == 2);
  CHECK(toks[2].dep == "root");
  CHECK(toks[2].lemma == "lie");
}

TEST_CASE("verb lemmatization covers irregular and inflected forms") {
  RuleParser p;
  CHECK(p.verb_lemma("took") == "take");
  CHECK(p.verb_lemma("yelled") == "yell");
  CHECK(p.verb_lemma("screamed") == "scream");
  CHECK(p.verb_lemma("paid") == "pay");
  CHECK(p.verb_lemma("abandons") == "abandon");
  CHECK(p.verb_lemma("ignores") == "ignore");
  CHECK(p.verb_lemma("stopped") == "stop");
  CHECK(p.verb_lemma("carried") == "carry");
  CHECK(p.verb_lemma("invites") == "invite");
  CHECK(p.verb_lemma("ruined") == "ruin");
}

TEST_CASE("past participle detection") {
  RuleParser p;
  CHECK(p.is_past_participle("pushed"));
  CHECK(p.is_past_participle("taken"));
  CHECK(p.is_past_participle("stolen"));
  CHECK_FALSE(p.is_past_participle("happy"));
  CHECK_FALSE(p.is_past_participle("push"));
}

TEST_CASE("split_sentences honors terminators and newlines") {
  auto s = split_sentences("I yelled. She cried!\nWhy though?");
  REQUIRE(s.size() == 3);
  CHECK(s[0] == "I yelled.");
  CHECK(s[1] == "She cried!");
  CHECK(s[2] == "Why though?");
  CHECK(split_sentences("no terminator") == std::vector<std::string>{"no terminator"});
  CHECK(split_sentences("").empty());
}

TEST_CASE("person noun lexicon") {
  CHECK(person_noun("sister"));
  CHECK(person_noun("Roommate"));
  CHECK_FALSE(person_noun("car"));
}

TEST_CASE("every annotation is well formed across a sentence battery") {
  RuleParser p;
  for (const auto* s : {"My sister stole my money.", "I helped my friend move.",
                        "They were invited to the party.", "She lied to me.",
                        "Everyone was angry at me.", "I forgot the birthday again.",
                        "Stop calling me.", "Because of her.", "wow"}) {
    auto toks = p.annotate(s);
    if (toks.empty()) continue;
    check_well_formed(toks);
  }
}

TEST_CASE("make_parser") {
  CHECK(make_parser("rule")->version() == "rule-parser/1");
  CHECK_THROWS(make_parser("neural"));
}
