#ifndef SPARK_CORPUS_HPP
#define SPARK_CORPUS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spark::corpus {

struct Post {
  std::string id;
  std::string author_id;
  std::int64_t created_utc = 0;
  std::string title;
  std::string body;
  bool is_deleted = false;
  bool is_moderator = false;
};

struct Comment {
  std::string id;
  std::string link_id;   // post this comment answers
  std::string parent_id; // post or comment replied to
  std::string author_id;
  std::string body;
  bool is_deleted = false;
  bool is_moderator = false;
  std::int64_t vote_score = 0;

  bool is_top_level() const { return parent_id == link_id; }
};

struct FilterStage {
  std::string stage;
  std::size_t n_posts = 0;
  std::size_t n_comments = 0;
};

struct Provenance {
  std::string source_path;
  std::string load_timestamp;
  std::size_t malformed_lines = 0;
  std::size_t dangling_comments = 0;
  std::vector<std::string> load_warnings;
};

struct CorpusStore {
  std::map<std::string, Post> posts;
  std::map<std::string, Comment> comments;
  Provenance provenance;
  std::vector<FilterStage> filter_log;

  std::size_t top_level_count(const std::string& post_id) const;
};

class CorpusError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Line-delimited JSON ingestion. Deleted/moderator records are retained but
// flagged; comments with a link_id that resolves to no post are rejected and
// counted. More than 10% malformed lines is fatal.
CorpusStore load_corpus(const std::string& posts_path, const std::string& comments_path);

CorpusStore filter_posts(const CorpusStore& store, std::size_t min_words = 50,
                         std::size_t min_top_comments = 10);

using VerdictFn = std::function<bool(const std::string&)>; // true when a verdict is present

CorpusStore filter_comments(const CorpusStore& store, std::size_t min_words,
                            const VerdictFn& has_verdict);

CorpusStore select_quoting_comments(const CorpusStore& store);

// Maximal runs of consecutive "> " lines, marker stripped, lines in a run
// joined by single spaces. A blank or non-quote line ends a run.
std::vector<std::string> extract_quotes(const std::string& comment_body);

bool has_quote_line(const std::string& body);

void write_filter_log_csv(const CorpusStore& store, const std::string& path);

} // namespace spark::corpus

#endif
