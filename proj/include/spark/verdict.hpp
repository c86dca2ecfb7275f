#ifndef SPARK_VERDICT_HPP
#define SPARK_VERDICT_HPP

#include <optional>
#include <string>
#include <vector>

namespace spark::verdict {

enum class Code { YTA, NTA, ESH, NAH, INFO };

std::string to_string(Code c);
std::optional<Code> code_from_string(const std::string& s);

struct PatternSet {
  // code -> regex strings matched case-insensitively with word boundaries
  std::vector<std::pair<Code, std::string>> patterns;
  std::vector<std::string> negation_cues;   // flip YTA<->NTA within window
  std::vector<std::string> transition_words; // "but", "however", ...
  std::size_t negation_window = 5;           // tokens before the match

  static PatternSet defaults();
  static PatternSet load(const std::string& json_path);
};

class VerdictExtractor {
public:
  explicit VerdictExtractor(PatternSet patterns = PatternSet::defaults());

  // Rightmost transition word partitions the comment; the first match after
  // it wins, else the first match overall. A negation cue within the window
  // before a match reverses YTA<->NTA.
  std::optional<Code> extract(const std::string& comment_text) const;

private:
  PatternSet patterns_;
};

struct SparkLabel {
  std::string instance_id;
  bool is_spark = false;
  std::vector<std::string> quoting_comment_ids;
};

struct BlameLabel {
  std::string instance_id;
  std::string comment_id;
  bool subject_is_author = false;
  Code verdict = Code::NTA;
  int blameworthy = 0;
};

// blameworthy = 0 iff (author & NTA) or (non-author & YTA); defined only for
// NTA/YTA verdicts.
std::optional<BlameLabel> label_blame(const std::string& instance_id,
                                      const std::string& comment_id,
                                      bool subject_is_author, Code verdict);

struct QuoteMatch {
  std::string instance_id;
  double overlap = 0.0;
};

// Highest Jaccard-overlap instance for one quote among candidate instances of
// the same post; empty id when nothing reaches the threshold.
QuoteMatch match_quote(const std::string& quote,
                       const std::vector<std::pair<std::string, std::string>>& instances,
                       double threshold = 0.8);

} // namespace spark::verdict

#endif
