#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "spark/kg.hpp"
#include "spark/text.hpp"

using namespace spark::kg;
using spark::instance::Instance;
using spark::parse::RuleParser;

namespace {

const std::string kToyKg = std::string(SPARK_DATA_DIR) + "/toy_kg/atomic.tsv";

Instance make_instance(const std::string& sentence, const RuleParser& parser) {
  Instance inst;
  inst.id = "t";
  inst.raw_text = sentence;
  inst.tokens = parser.annotate(sentence);
  inst.clean_text = spark::text::lowercase(sentence);
  return inst;
}

// exhaustive reference: verb-overlap pool, library dedup, then a direct
// selection sort on (score, frequency, id)
std::vector<std::string> brute_force_top3(const Instance& inst, const KGStore& kg,
                                          const SemanticScorer& scorer) {
  std::vector<std::string> pool;
  for (const auto& [id, ev] : kg.events) {
    bool overlap = false;
    for (const auto& v : inst.verb_lemmas())
      if (ev.verb_lemmas.count(v)) overlap = true;
    if (overlap) pool.push_back(id);
  }
  auto refined = refine_pool(pool, kg, 0.5);
  std::vector<std::pair<std::string, double>> scored;
  for (const auto& id : refined)
    scored.emplace_back(id, scorer.score(inst.clean_text, kg.events.at(id).text));
  std::vector<std::string> out;
  std::vector<bool> used(scored.size(), false);
  while (out.size() < 3 && out.size() < scored.size()) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(scored.size()); ++i) {
      if (used[i]) continue;
      if (best < 0) { best = i; continue; }
      const auto& a = scored[i];
      const auto& b = scored[best];
      bool better = a.second > b.second;
      if (a.second == b.second) {
        const auto fa = kg.events.at(a.first).frequency;
        const auto fb = kg.events.at(b.first).frequency;
        better = fa > fb || (fa == fb && a.first < b.first);
      }
      if (better) best = i;
    }
    used[best] = true;
    out.push_back(scored[best].first);
  }
  return out;
}

} // namespace

TEST_CASE("load_atomic builds events, attributes, and the verb index") {
  RuleParser parser;
  auto kg = load_atomic(kToyKg, parser);
  CHECK(kg.events.size() == 20);

  // every event is reachable from each of its verb lemmas
  for (const auto& [id, ev] : kg.events) {
    CHECK_FALSE(ev.text.empty());
    for (const auto& v : ev.verb_lemmas) {
      const auto& ids = kg.verb_index.at(v);
      CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
    }
  }

  const auto& yell_ids = kg.verb_index.at("yell");
  REQUIRE(yell_ids.size() == 1);
  const auto& yell = kg.events.at(yell_ids[0]);
  CHECK(yell.text == "PersonX yells at PersonY");
  CHECK(yell.attributes == std::vector<std::string>{"aggressive", "rude", "angry"});

  CHECK(kg.verb_index.at("abandon").size() == 2);
}

TEST_CASE("load_atomic ignores non-xAttr rows and deduplicates attributes") {
  RuleParser parser;
  auto dir = testutil::temp_dir("kg_rows");
  auto path = testutil::write_file(dir / "atomic.tsv",
      "PersonX forces people\txAttr\tcontrolling\n"
      "PersonX forces people\txAttr\tcontrolling\n"
      "PersonX forces people\txWant\tto dominate\n"
      "PersonX waits\txAttr\tpatient\n");
  auto kg = load_atomic(path, parser);
  CHECK(kg.events.size() == 2);
  bool found = false;
  for (const auto& [id, ev] : kg.events) {
    if (ev.text == "PersonX forces people") {
      found = true;
      CHECK(ev.attributes == std::vector<std::string>{"controlling"});
    }
  }
  CHECK(found);
}

TEST_CASE("load_atomic with no xAttr rows is fatal") {
  RuleParser parser;
  auto dir = testutil::temp_dir("kg_noattr");
  auto path = testutil::write_file(dir / "atomic.tsv", "PersonX waits\txWant\tto rest\n");
  CHECK_THROWS_AS(load_atomic(path, parser), KGError);
}

TEST_CASE("coarse_filter unions verb index lookups") {
  RuleParser parser;
  auto kg = load_atomic(kToyKg, parser);

  auto abandons = make_instance("I abandoned the plan.", parser);
  auto pool = coarse_filter(abandons, kg);
  CHECK(pool.size() == 2); // both surface variants

  auto none = make_instance("I vacuumed the rug.", parser);
  CHECK(coarse_filter(none, kg).empty());

  auto multi = make_instance("I yelled and screamed.", parser);
  auto pool2 = coarse_filter(multi, kg);
  std::vector<std::string> expect;
  for (const auto& v : {"yell", "scream"})
    for (const auto& id : kg.verb_index.at(v)) expect.push_back(id);
  std::sort(expect.begin(), expect.end());
  CHECK(pool2 == expect);
}

TEST_CASE("tfidf matches the hand-computed 3-document fixture to 1e-9") {
  auto m = tfidf_vectors({"the cat sat", "the cat ran", "dog barks"});
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 6); // vocab: barks cat dog ran sat the
  const double a = 0.5178561161676974;  // shared-term weight in docs 0/1
  const double b = 0.680918560398684;   // unique-term weight in docs 0/1
  const double c = 0.7071067811865476;  // doc 2, both terms unique
  Eigen::MatrixXd expect(3, 6);
  expect << 0, a, 0, 0, b, a,
            0, a, 0, b, 0, a,
            c, 0, c, 0, 0, 0;
  CHECK((m - expect).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("tfidf basic contracts") {
  auto m = tfidf_vectors({"same text", "same text"});
  CHECK((m.row(0) - m.row(1)).norm() == doctest::Approx(0.0));

  auto single = tfidf_vectors({"alpha beta gamma"});
  for (int j = 1; j < single.cols(); ++j)
    CHECK(single(0, j) == doctest::Approx(single(0, 0)));

  CHECK_THROWS_AS(tfidf_vectors({"...", "!!"}), KGError);
  CHECK_THROWS_AS(tfidf_vectors({}), KGError);
}

TEST_CASE("cosine symmetry and self-similarity") {
  Eigen::VectorXd a(3), b(3), z(3);
  a << 1, 2, 3;
  b << -1, 0.5, 2;
  z << 0, 0, 0;
  CHECK(cosine(a, a) == doctest::Approx(1.0));
  CHECK(cosine(a, b) == doctest::Approx(cosine(b, a)));
  CHECK(cosine(a, z) == doctest::Approx(0.0));
}

TEST_CASE("refine_pool collapses the abandons surface variants at 0.5") {
  RuleParser parser;
  auto kg = load_atomic(kToyKg, parser);
  auto pool = kg.verb_index.at("abandon");
  REQUIRE(pool.size() == 2);
  auto refined = refine_pool(pool, kg, 0.5);
  REQUIRE(refined.size() == 1);
  // representative: longest text, then lexicographically smallest
  CHECK(kg.events.at(refined[0]).text == "PersonX abandons the ___ altogether");
}

TEST_CASE("refine_pool keeps disjoint candidates and passes singletons") {
  RuleParser parser;
  auto kg = load_atomic(kToyKg, parser);
  std::vector<std::string> pool;
  pool.push_back(kg.verb_index.at("yell")[0]);
  pool.push_back(kg.verb_index.at("pay")[0]);
  auto refined = refine_pool(pool, kg, 0.5);
  CHECK(refined.size() == 2);

  std::vector<std::string> one{kg.verb_index.at("yell")[0]};
  CHECK(refine_pool(one, kg, 0.5) == one);
}

TEST_CASE("refine_pool above max cosine is the identity, never grows") {
  RuleParser parser;
  auto kg = load_atomic(kToyKg, parser);
  std::vector<std::string> pool;
  for (const auto& [id, ev] : kg.events) pool.push_back(id);
  auto refined = refine_pool(pool, kg, 1.01);
  CHECK(refined.size() == pool.size());
  CHECK(refine_pool(pool, kg, 0.0).size() <= pool.size());
}

TEST_CASE("overlap scorer is maximal on identical text") {
  OverlapScorer scorer;
  CHECK(scorer.score("personx yells at persony", "personx yells at persony") ==
        doctest::Approx(scorer.max_score()));
  CHECK(scorer.score("abc def", "ghi jkl") == doctest::Approx(0.0));
  CHECK(scorer.score("", "abc") == doctest::Approx(0.0));
}

TEST_CASE("semantic_rank is a sorted permutation with deterministic ties") {
  RuleParser parser;
  auto kg = load_atomic(kToyKg, parser);
  OverlapScorer scorer(kg.idf);
  auto inst = make_instance("I yelled at my sister and screamed at my brother.", parser);
  auto pool = coarse_filter(inst, kg);
  auto ranked = semantic_rank(inst, pool, kg, scorer);
  REQUIRE(ranked.size() == pool.size());
  for (std::size_t i = 1; i < ranked.size(); ++i)
    CHECK(ranked[i - 1].score >= ranked[i].score);

  // permutation invariance of the candidate list
  auto reversed_pool = pool;
  std::reverse(reversed_pool.begin(), reversed_pool.end());
  auto ranked2 = semantic_rank(inst, reversed_pool, kg, scorer);
  REQUIRE(ranked2.size() == ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i)
    CHECK(ranked[i].event_id == ranked2[i].event_id);
}

TEST_CASE("align composes the phases and truncates to the pool size") {
  RuleParser parser;
  auto kg = load_atomic(kToyKg, parser);
  OverlapScorer scorer(kg.idf);

  auto two = make_instance("I yelled and paid.", parser);
  auto r = align(two, kg, scorer);
  CHECK(r.candidate_pool.size() == 2);
  CHECK(r.top3.size() == 2);

  auto none = make_instance("I vacuumed the rug.", parser);
  auto r2 = align(none, kg, scorer);
  CHECK(r2.candidate_pool.empty());
  CHECK(r2.refined_pool.empty());
  CHECK(r2.top3.empty());
}

TEST_CASE("25 fixture instances match the exhaustive oracle exactly") {
  RuleParser parser;
  auto kg = load_atomic(kToyKg, parser);
  OverlapScorer scorer(kg.idf);
  const char* sentences[25] = {
      "I yelled at my sister.",
      "I screamed at my brother.",
      "My roommate stole my money.",
      "She ignored me all week.",
      "He lied to me about the party.",
      "I helped my friend move.",
      "I paid the bill.",
      "I borrowed money from my dad.",
      "I refused to apologize.",
      "They invited me to the party.",
      "I broke the phone.",
      "I ruined the wedding.",
      "She blamed me for everything.",
      "I forgot the birthday.",
      "I left the party early.",
      "I told my mom the truth.",
      "He pushed me at the party.",
      "My neighbor threatened me.",
      "I abandoned the plan altogether.",
      "I yelled and screamed at everyone.",
      "My sister stole money and lied to me.",
      "I helped my mom and paid the rent.",
      "She ignored me and left the party.",
      "I pushed my brother and blamed my sister.",
      "My cousin borrowed my car and broke it.",
  };
  for (const auto* s : sentences) {
    auto inst = make_instance(s, parser);
    auto got = align(inst, kg, scorer);
    auto expect = brute_force_top3(inst, kg, scorer);
    INFO("sentence: ", s);
    CHECK(got.top3 == expect);
  }
}

TEST_CASE("containment chain holds over 1000 randomized instances") {
  RuleParser parser;
  auto kg = load_atomic(kToyKg, parser);
  OverlapScorer scorer(kg.idf);
  std::vector<std::string> verbs;
  for (const auto& [v, ids] : kg.verb_index) verbs.push_back(v);
  verbs.push_back("vacuum");
  verbs.push_back("ponder");
  const std::vector<std::string> fillers = {"sister",  "money", "party",  "car",
                                            "truth",   "plan",  "birthday", "phone"};
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> nverbs(0, 3);
  std::uniform_int_distribution<int> vpick(0, static_cast<int>(verbs.size()) - 1);
  std::uniform_int_distribution<int> fpick(0, static_cast<int>(fillers.size()) - 1);
  for (int t = 0; t < 1000; ++t) {
    Instance inst;
    inst.id = "r" + std::to_string(t);
    std::string txt;
    int k = nverbs(rng);
    for (int i = 0; i < k; ++i) {
      spark::parse::TokenAnnotation tok;
      tok.surface = verbs[static_cast<std::size_t>(vpick(rng))];
      tok.lemma = tok.surface;
      tok.pos = "VERB";
      tok.dep = i == 0 ? "root" : "dep";
      tok.head = 0;
      inst.tokens.push_back(tok);
      txt += tok.surface + " " + fillers[static_cast<std::size_t>(fpick(rng))] + " ";
    }
    inst.clean_text = txt;
    auto r = align(inst, kg, scorer);
    CHECK(r.top3.size() <= 3);
    for (const auto& id : r.top3)
      CHECK(std::find(r.refined_pool.begin(), r.refined_pool.end(), id) !=
            r.refined_pool.end());
    for (const auto& id : r.refined_pool)
      CHECK(std::find(r.candidate_pool.begin(), r.candidate_pool.end(), id) !=
            r.candidate_pool.end());
    CHECK(r.refined_pool.size() <= r.candidate_pool.size());
  }
}
