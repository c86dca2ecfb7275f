#include "spark/verdict.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <stdexcept>

#include "spark/text.hpp"
#include <nlohmann/json.hpp>

namespace spark::verdict {

std::string to_string(Code c) {
  switch (c) {
    case Code::YTA: return "YTA";
    case Code::NTA: return "NTA";
    case Code::ESH: return "ESH";
    case Code::NAH: return "NAH";
    case Code::INFO: return "INFO";
  }
  return "?";
}

std::optional<Code> code_from_string(const std::string& s) {
  if (s == "YTA") return Code::YTA;
  if (s == "NTA") return Code::NTA;
  if (s == "ESH") return Code::ESH;
  if (s == "NAH") return Code::NAH;
  if (s == "INFO") return Code::INFO;
  return std::nullopt;
}

PatternSet PatternSet::defaults() {
  PatternSet ps;
  ps.patterns = {
      {Code::YTA, R"(\byta\b)"},
      {Code::NTA, R"(\bnta\b)"},
      {Code::ESH, R"(\besh\b)"},
      {Code::NAH, R"(\bnah\b)"},
      {Code::INFO, R"(\binfo\b)"},
      {Code::NTA, R"(\bnot the a-?hole\b)"},
      {Code::NTA, R"(\bnot the asshole\b)"},
      {Code::NTA, R"(\bnot an asshole\b)"},
      {Code::YTA, R"(\byou('| a)re the a-?hole\b)"},
      {Code::YTA, R"(\byou('| a)re the asshole\b)"},
      {Code::ESH, R"(\beveryone sucks here\b)"},
      {Code::ESH, R"(\beverybody sucks here\b)"},
      {Code::NAH, R"(\bno a-?holes here\b)"},
      {Code::NAH, R"(\bno assholes here\b)"},
      {Code::INFO, R"(\bmore info(rmation)? needed\b)"},
  };
  ps.negation_cues = {"not", "never", "don't", "dont", "doesn't", "didn't", "hardly"};
  ps.transition_words = {"but", "however", "although", "though", "yet"};
  ps.negation_window = 5;
  return ps;
}

PatternSet PatternSet::load(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) throw std::runtime_error("cannot read verdict patterns: " + json_path);
  nlohmann::json j;
  in >> j;
  PatternSet ps;
  for (auto& [code_str, arr] : j.at("patterns").items()) {
    auto code = code_from_string(code_str);
    if (!code) throw std::runtime_error("unknown verdict code in patterns: " + code_str);
    for (const auto& pat : arr) ps.patterns.emplace_back(*code, pat.get<std::string>());
  }
  ps.negation_cues = j.value("negation_cues", std::vector<std::string>{});
  ps.transition_words = j.value("transition_words", std::vector<std::string>{});
  ps.negation_window = j.value("negation_window", std::size_t{5});
  return ps;
}

VerdictExtractor::VerdictExtractor(PatternSet patterns) : patterns_(std::move(patterns)) {}

namespace {

struct Match {
  std::size_t pos;
  Code code;
};

struct TokenPos {
  std::string token; // lowercased
  std::size_t begin;
  std::size_t end;
};

std::vector<TokenPos> tokenize_with_pos(const std::string& s) {
  std::vector<TokenPos> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > b) {
      std::string tok = text::lowercase(s.substr(b, i - b));
      // trim edge punctuation
      std::size_t tb = 0, te = tok.size();
      while (tb < te && !std::isalnum(static_cast<unsigned char>(tok[tb])) && tok[tb] != '\'')
        ++tb;
      while (te > tb && !std::isalnum(static_cast<unsigned char>(tok[te - 1])) &&
             tok[te - 1] != '\'')
        --te;
      if (te > tb) out.push_back({tok.substr(tb, te - tb), b, i});
    }
  }
  return out;
}

Code flip(Code c) {
  if (c == Code::YTA) return Code::NTA;
  if (c == Code::NTA) return Code::YTA;
  return c;
}

} // namespace

std::optional<Code> VerdictExtractor::extract(const std::string& comment_text) const {
  std::vector<Match> matches;
  for (const auto& [code, pat] : patterns_.patterns) {
    std::regex re(pat, std::regex::icase | std::regex::ECMAScript);
    for (auto it = std::sregex_iterator(comment_text.begin(), comment_text.end(), re);
         it != std::sregex_iterator(); ++it) {
      matches.push_back({static_cast<std::size_t>(it->position()), code});
    }
  }
  if (matches.empty()) return std::nullopt;
  std::sort(matches.begin(), matches.end(),
            [](const Match& a, const Match& b) { return a.pos < b.pos; });

  const auto tokens = tokenize_with_pos(comment_text);

  // Rightmost transition word partitions the comment.
  std::size_t transition_end = 0;
  bool has_transition = false;
  for (const auto& tp : tokens) {
    for (const auto& tw : patterns_.transition_words) {
      if (tp.token == tw) {
        transition_end = tp.end;
        has_transition = true;
      }
    }
  }

  const Match* chosen = &matches.front();
  if (has_transition) {
    for (const auto& m : matches) {
      if (m.pos >= transition_end) {
        chosen = &m;
        break;
      }
    }
  }

  // Negation cue within the token window before the match reverses YTA<->NTA.
  Code code = chosen->code;
  std::size_t match_tok = tokens.size();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].begin <= chosen->pos && chosen->pos < tokens[i].end) {
      match_tok = i;
      break;
    }
  }
  if (match_tok < tokens.size()) {
    std::size_t lo =
        match_tok > patterns_.negation_window ? match_tok - patterns_.negation_window : 0;
    for (std::size_t i = lo; i < match_tok; ++i) {
      for (const auto& cue : patterns_.negation_cues) {
        if (tokens[i].token == cue) {
          code = flip(code);
          i = match_tok; // one reversal at most
          break;
        }
      }
    }
  }
  return code;
}

std::optional<BlameLabel> label_blame(const std::string& instance_id,
                                      const std::string& comment_id,
                                      bool subject_is_author, Code verdict) {
  if (verdict != Code::NTA && verdict != Code::YTA) return std::nullopt;
  BlameLabel b;
  b.instance_id = instance_id;
  b.comment_id = comment_id;
  b.subject_is_author = subject_is_author;
  b.verdict = verdict;
  const bool exonerated = (subject_is_author && verdict == Code::NTA) ||
                          (!subject_is_author && verdict == Code::YTA);
  b.blameworthy = exonerated ? 0 : 1;
  return b;
}

QuoteMatch match_quote(const std::string& quote,
                       const std::vector<std::pair<std::string, std::string>>& instances,
                       double threshold) {
  const auto qtok = text::alnum_tokens(quote);
  QuoteMatch best;
  for (const auto& [id, txt] : instances) {
    double ov = text::jaccard(qtok, text::alnum_tokens(txt));
    if (ov > best.overlap || (ov == best.overlap && !best.instance_id.empty() && id < best.instance_id)) {
      best.overlap = ov;
      best.instance_id = id;
    }
  }
  if (best.overlap < threshold) best.instance_id.clear();
  return best;
}

} // namespace spark::verdict
