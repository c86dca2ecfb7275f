#ifndef SPARK_PIPELINE_HPP
#define SPARK_PIPELINE_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace spark::pipeline {

// exit codes surfaced by the CLI
enum class ErrorKind { Config = 2, Data = 3, Stage = 4 };

class PipelineError : public std::runtime_error {
public:
  PipelineError(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind(kind) {}
  ErrorKind kind;
};

struct RunConfig {
  // paths
  std::string corpus_posts;
  std::string corpus_comments;
  std::string kg_path;
  std::string lexicon_dir;
  std::string data_dir; // stopwords, contractions, verdict patterns
  std::string out_dir = "out";
  std::string cluster_names_path; // optional cluster_id,name CSV

  // thresholds
  std::size_t min_words_post = 50;
  std::size_t min_top_comments = 10;
  std::size_t min_words_comment = 15;
  double tfidf_threshold = 0.5;
  std::size_t topk_alignments = 3;
  std::size_t min_event_count = 5;
  double sentiment_neg = -0.05;
  double sentiment_pos = 0.05;
  double match_threshold = 0.8;
  double alpha = 0.05;

  // seeds and backends
  std::uint64_t seed = 42;
  std::string parser_backend = "rule";
  std::string embedder_backend = "hash";
  int embed_dim = 64;
  std::string scorer_backend = "overlap";
  std::string sentiment_backend = "lexicon";
  std::size_t tune_budget = 12;
  int tune_min_cluster_lo = 3;
  int tune_min_cluster_hi = 12;

  // precedence: CLI flag > SPARK_* env > file > default
  static RunConfig load(const std::string& path,
                        const std::map<std::string, std::string>& cli_overrides = {});
  void validate() const;
};

extern const std::vector<std::string> kStageOrder; // ingest..report

// Runs one stage against cached upstream artifacts in config.out_dir and
// appends a manifest entry. Missing upstream artifacts raise a Stage error
// naming the required stage.
void run_stage(const std::string& name, const RunConfig& config);

void run_all(const RunConfig& config);

} // namespace spark::pipeline

#endif
