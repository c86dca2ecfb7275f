#ifndef SPARK_KG_HPP
#define SPARK_KG_HPP

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "spark/instance.hpp"
#include "spark/parse.hpp"

namespace spark::kg {

struct CEvent {
  std::string id;
  std::string text; // "PersonX ..." snippet, blanks preserved
  std::set<std::string> verb_lemmas;
  std::vector<std::string> attributes; // xAttr tails, deduplicated
  std::size_t frequency = 0;           // corpus frequency after alignment
};

struct KGStore {
  std::map<std::string, CEvent> events;
  std::map<std::string, std::vector<std::string>> verb_index; // lemma -> event ids
  std::map<std::string, double> idf;                          // token idf over event texts
};

class KGError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// atomic.tsv rows: head\trelation\ttail; only xAttr rows are consumed.
KGStore load_atomic(const std::string& path, const parse::ParserBackend& parser);

std::vector<std::string> coarse_filter(const instance::Instance& inst, const KGStore& kg);

// Smoothed idf = ln((1+N)/(1+df)) + 1, L2-normalized rows; vocabulary from
// the given texts.
Eigen::MatrixXd tfidf_vectors(const std::vector<std::string>& texts);

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Single-linkage grouping of candidates with pairwise cosine >= threshold;
// representative = longest text, then lexicographically smallest.
std::vector<std::string> refine_pool(const std::vector<std::string>& pool, const KGStore& kg,
                                     double threshold = 0.5);

class SemanticScorer {
public:
  virtual ~SemanticScorer() = default;
  virtual double score(const std::string& instance_text, const std::string& candidate_text) const = 0;
  virtual double max_score() const { return 1.0; }
  virtual std::string version() const = 0;
};

// Deterministic fallback: idf-weighted token-overlap F1.
class OverlapScorer : public SemanticScorer {
public:
  explicit OverlapScorer(std::map<std::string, double> idf = {});
  double score(const std::string& instance_text, const std::string& candidate_text) const override;
  std::string version() const override { return "idf-overlap-f1/1"; }

private:
  std::map<std::string, double> idf_;
};

struct ScoredEvent {
  std::string event_id;
  double score = 0.0;
};

struct AlignmentResult {
  std::string instance_id;
  std::vector<std::string> candidate_pool; // E_i
  std::vector<std::string> refined_pool;   // P_i
  std::vector<ScoredEvent> ranked;
  std::vector<std::string> top3;
};

// Ties broken by candidate frequency (descending) then event id.
std::vector<ScoredEvent> semantic_rank(const instance::Instance& inst,
                                       const std::vector<std::string>& refined_pool,
                                       const KGStore& kg, const SemanticScorer& scorer);

AlignmentResult align(const instance::Instance& inst, const KGStore& kg,
                      const SemanticScorer& scorer, double tfidf_threshold = 0.5,
                      std::size_t topk = 3);

} // namespace spark::kg

#endif
