#ifndef SPARK_INSTANCE_HPP
#define SPARK_INSTANCE_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spark/corpus.hpp"
#include "spark/parse.hpp"

namespace spark::instance {

struct Instance {
  std::string id;
  std::string post_id;
  std::string raw_text;
  std::string clean_text;
  std::vector<parse::TokenAnnotation> tokens;

  std::set<std::string> verb_lemmas() const;
};

struct EventTriple {
  std::string subject;
  std::string predicate;
  std::optional<std::string> object;
  bool was_passive = false;
  std::string source_instance;
};

struct CharacterMention {
  std::string surface;
  bool is_author = false;
  std::vector<int> token_span;
  std::vector<int> descriptive_words; // ADJ/ADV dependents
};

class TripleExtractor {
public:
  virtual ~TripleExtractor() = default;
  virtual std::optional<EventTriple> extract(const Instance& inst) const = 0;
  virtual std::string version() const = 0;
};

// Dependency-pattern fallback: (nsubj, root, dobj/attr); passives map
// nsubjpass -> object and the by-phrase agent -> subject.
class RuleTripleExtractor : public TripleExtractor {
public:
  std::optional<EventTriple> extract(const Instance& inst) const override;
  std::string version() const override { return "rule-triples/1"; }
};

// One Instance per sentence the parser accepts as a full sentence
// (verb-rooted clause), in document order.
std::vector<Instance> split_instances(const corpus::Post& post, const parse::ParserBackend& parser);

// Keeps instances with a subject relation and a verb root.
std::vector<Instance> filter_instances(const std::vector<Instance>& instances);

struct CleanerConfig {
  std::set<std::string> stopwords;
  std::vector<std::pair<std::string, std::string>> contractions;

  static CleanerConfig bundled(const std::string& data_dir);
  static CleanerConfig defaults();
};

// Contraction expansion, emoji/unicode and punctuation removal, stopword
// removal, lowercasing, whitespace collapse. Idempotent.
std::string clean_text(const std::string& s, const CleanerConfig& cfg);

std::vector<CharacterMention> extract_characters(const Instance& inst);

bool has_negation_edge(const Instance& inst, const std::vector<int>& span);

bool is_author_word(const std::string& surface);

} // namespace spark::instance

#endif
