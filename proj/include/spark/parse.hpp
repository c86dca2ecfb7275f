#ifndef SPARK_PARSE_HPP
#define SPARK_PARSE_HPP

#include <memory>
#include <string>
#include <vector>

namespace spark::parse {

struct TokenAnnotation {
  std::string surface;
  std::string lemma;
  std::string pos;  // universal POS tag
  std::string dep;  // dependency relation; "root" exactly once
  int head = -1;    // token index; root points to itself
};

// text in -> token annotations out; deterministic given version().
class ParserBackend {
public:
  virtual ~ParserBackend() = default;
  virtual std::vector<TokenAnnotation> annotate(const std::string& sentence) const = 0;
  virtual std::string version() const = 0;
};

// Deterministic lexicon-and-heuristic dependency annotator. Covers the
// pronoun/kinship/common-verb vocabulary of the bundled corpora; no model
// downloads.
class RuleParser : public ParserBackend {
public:
  RuleParser();
  std::vector<TokenAnnotation> annotate(const std::string& sentence) const override;
  std::string version() const override { return "rule-parser/1"; }

  std::string verb_lemma(const std::string& word) const;
  bool is_verb_form(const std::string& word) const;
  bool is_past_participle(const std::string& word) const;
  bool is_person_noun(const std::string& word) const;
};

std::vector<std::string> split_sentences(const std::string& body);

bool person_noun(const std::string& word);

std::shared_ptr<ParserBackend> make_parser(const std::string& name);

} // namespace spark::parse

#endif
