#include "spark/instance.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "spark/text.hpp"
#include <nlohmann/json.hpp>

namespace spark::instance {

namespace {

int root_index(const std::vector<parse::TokenAnnotation>& toks) {
  for (std::size_t i = 0; i < toks.size(); ++i)
    if (toks[i].dep == "root") return static_cast<int>(i);
  return -1;
}

bool has_cop_child(const std::vector<parse::TokenAnnotation>& toks, int idx) {
  for (const auto& t : toks)
    if (t.dep == "cop" && t.head == idx) return true;
  return false;
}

bool verb_rooted(const std::vector<parse::TokenAnnotation>& toks) {
  int r = root_index(toks);
  if (r < 0) return false;
  return toks[r].pos == "VERB" || has_cop_child(toks, r);
}

bool ends_with_terminator(const std::string& s) {
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    if (std::isspace(static_cast<unsigned char>(*it))) continue;
    return *it == '.' || *it == '!' || *it == '?';
  }
  return false;
}

} // namespace

std::set<std::string> Instance::verb_lemmas() const {
  std::set<std::string> out;
  for (const auto& t : tokens)
    if (t.pos == "VERB") out.insert(t.lemma);
  return out;
}

std::vector<Instance> split_instances(const corpus::Post& post,
                                      const parse::ParserBackend& parser) {
  std::vector<Instance> out;
  std::size_t idx = 0;
  for (const auto& sent : parse::split_sentences(post.body)) {
    auto toks = parser.annotate(sent);
    if (toks.empty()) continue;
    // full-sentence check: verb-rooted clause, and either terminal
    // punctuation or at least 3 tokens
    if (!verb_rooted(toks)) continue;
    if (!ends_with_terminator(sent) && toks.size() < 3) continue;
    Instance inst;
    inst.id = post.id + "_i" + std::to_string(idx++);
    inst.post_id = post.id;
    inst.raw_text = sent;
    inst.tokens = std::move(toks);
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<Instance> filter_instances(const std::vector<Instance>& instances) {
  std::vector<Instance> out;
  for (const auto& inst : instances) {
    bool has_subj = false;
    for (const auto& t : inst.tokens)
      if (t.dep == "nsubj" || t.dep == "nsubjpass") has_subj = true;
    if (has_subj && verb_rooted(inst.tokens)) out.push_back(inst);
  }
  return out;
}

CleanerConfig CleanerConfig::defaults() {
  CleanerConfig cfg;
  static const char* sw[] = {
      "i",     "me",    "my",    "myself", "we",   "our",   "ours",  "ourselves",
      "you",   "your",  "yours", "he",     "him",  "his",   "she",   "her",
      "hers",  "it",    "its",   "they",   "them", "their", "theirs", "what",
      "which", "who",   "whom",  "this",   "that", "these", "those", "am",
      "is",    "are",   "was",   "were",   "be",   "been",  "being", "have",
      "has",   "had",   "having", "do",    "does", "did",   "doing", "a",
      "an",    "the",   "and",   "but",    "if",   "or",    "because", "as",
      "until", "while", "of",    "at",     "by",   "for",   "with",  "about",
      "against", "between", "into", "through", "during", "before", "after",
      "above", "below", "to",    "from",   "up",   "down",  "in",    "out",
      "on",    "off",   "over",  "under",  "again", "further", "then", "once",
      "here",  "there", "when",  "where",  "why",  "how",   "all",   "any",
      "both",  "each",  "few",   "more",   "most", "other", "some",  "such",
      "no",    "nor",   "not",   "only",   "own",  "same",  "so",    "than",
      "too",   "very",  "s",     "t",      "can",  "will",  "just",  "don",
      "should", "now"};
  for (const char* w : sw) cfg.stopwords.insert(w);
  cfg.contractions = {{"can't", "can not"},   {"won't", "will not"}, {"n't", " not"},
                      {"'re", " are"},        {"'ve", " have"},      {"'ll", " will"},
                      {"'d", " would"},       {"'m", " am"},         {"it's", "it is"},
                      {"let's", "let us"}};
  return cfg;
}

CleanerConfig CleanerConfig::bundled(const std::string& data_dir) {
  CleanerConfig cfg = defaults();
  {
    std::ifstream in(data_dir + "/stopwords.txt");
    if (in) {
      cfg.stopwords.clear();
      std::string w;
      while (std::getline(in, w)) {
        w = text::trim(w);
        if (!w.empty()) cfg.stopwords.insert(text::lowercase(w));
      }
    }
  }
  {
    std::ifstream in(data_dir + "/contractions.json");
    if (in) {
      nlohmann::json j;
      in >> j;
      cfg.contractions.clear();
      for (auto& [k, v] : j.items())
        cfg.contractions.emplace_back(text::lowercase(k), v.get<std::string>());
      // longest first so "can't" wins over "n't"
      std::sort(cfg.contractions.begin(), cfg.contractions.end(),
                [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
    }
  }
  return cfg;
}

std::string clean_text(const std::string& s, const CleanerConfig& cfg) {
  std::string lower = text::lowercase(s);
  // contraction expansion (substring, longest pattern first)
  auto patterns = cfg.contractions;
  std::stable_sort(patterns.begin(), patterns.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  for (const auto& [pat, rep] : patterns) {
    std::size_t pos = 0;
    while ((pos = lower.find(pat, pos)) != std::string::npos) {
      lower.replace(pos, pat.size(), rep);
      pos += rep.size();
    }
  }
  // tokenize, strip punctuation, drop non-ASCII tokens and stopwords
  std::vector<std::string> kept;
  std::string cur;
  bool non_ascii = false;
  auto flush = [&] {
    if (!cur.empty() && !non_ascii && !cfg.stopwords.count(cur)) kept.push_back(cur);
    cur.clear();
    non_ascii = false;
  };
  for (unsigned char c : lower) {
    if (std::isspace(c)) {
      flush();
    } else if (c >= 0x80) {
      non_ascii = true; // emoji / unicode token
    } else if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(c));
    }
    // ASCII punctuation dropped
  }
  flush();
  return text::join(kept, " ");
}

std::optional<EventTriple> RuleTripleExtractor::extract(const Instance& inst) const {
  const auto& toks = inst.tokens;
  int root = root_index(toks);
  if (root < 0 || toks[root].pos != "VERB") return std::nullopt;

  auto phrase = [&](int idx) {
    // head plus its contiguous det/poss/amod dependents
    std::vector<std::string> parts;
    for (int i = 0; i < static_cast<int>(toks.size()); ++i) {
      if (i == idx ||
          (toks[i].head == idx &&
           (toks[i].dep == "det" || toks[i].dep == "poss" || toks[i].dep == "amod")))
        parts.push_back(toks[i].surface);
    }
    return text::join(parts, " ");
  };

  int nsubj = -1, nsubjpass = -1, agent = -1, dobj = -1, acomp = -1;
  for (int i = 0; i < static_cast<int>(toks.size()); ++i) {
    if (toks[i].head != root) continue;
    if (toks[i].dep == "nsubj") nsubj = i;
    else if (toks[i].dep == "nsubjpass") nsubjpass = i;
    else if (toks[i].dep == "agent") agent = i;
    else if (toks[i].dep == "dobj") dobj = i;
    else if (toks[i].dep == "acomp") acomp = i;
  }

  EventTriple t;
  t.source_instance = inst.id;
  t.predicate = toks[root].surface;
  if (nsubjpass >= 0) {
    t.was_passive = true;
    t.object = phrase(nsubjpass);
    if (agent >= 0) t.subject = phrase(agent);
  } else {
    if (nsubj < 0) return std::nullopt;
    t.subject = phrase(nsubj);
    if (dobj >= 0) t.object = phrase(dobj);
    else if (acomp >= 0) t.object = phrase(acomp);
  }
  if (t.subject.empty()) return std::nullopt; // passive without agent: no logical subject
  return t;
}

bool is_author_word(const std::string& surface) {
  const std::string w = text::lowercase(surface);
  return w == "i" || w == "me" || w == "my" || w == "mine" || w == "myself";
}

std::vector<CharacterMention> extract_characters(const Instance& inst) {
  const auto& toks = inst.tokens;
  std::vector<CharacterMention> out;
  for (int i = 0; i < static_cast<int>(toks.size()); ++i) {
    const auto& t = toks[i];
    bool personal_pron = t.pos == "PRON" && t.lemma != "it";
    bool proper = t.pos == "PROPN";
    bool person = t.pos == "NOUN" && parse::person_noun(t.lemma);
    if (!personal_pron && !proper && !person) continue;
    CharacterMention m;
    m.surface = t.surface;
    m.is_author = is_author_word(t.surface);
    m.token_span = {i};
    for (int k = 0; k < static_cast<int>(toks.size()); ++k) {
      if (toks[k].pos != "ADJ" && toks[k].pos != "ADV") continue;
      if (toks[k].head == i && (toks[k].dep == "amod" || toks[k].dep == "advmod")) {
        m.descriptive_words.push_back(k);
      } else if (toks[k].pos == "ADJ" &&
                 (toks[k].dep == "acomp" || toks[k].dep == "ccomp" || toks[k].dep == "root")) {
        // predicate adjective describing this mention via its subject edge
        bool subj_is_mention = false;
        for (int s = 0; s < static_cast<int>(toks.size()); ++s)
          if (toks[s].head == k && toks[s].dep == "nsubj" && s == i) subj_is_mention = true;
        if (!subj_is_mention && toks[k].dep == "acomp") {
          // acomp hangs off the root verb; its subject is the clause subject
          int r = root_index(toks);
          for (int s = 0; s < static_cast<int>(toks.size()); ++s)
            if (toks[s].head == r && toks[s].dep == "nsubj" && s == i) subj_is_mention = true;
        }
        if (toks[k].dep == "root") {
          for (int s = 0; s < static_cast<int>(toks.size()); ++s)
            if (toks[s].head == k && toks[s].dep == "nsubj" && s == i) subj_is_mention = true;
        }
        if (subj_is_mention) m.descriptive_words.push_back(k);
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

bool has_negation_edge(const Instance& inst, const std::vector<int>& span) {
  const auto& toks = inst.tokens;
  // climb the head chain from each span token; a neg dependent anywhere on
  // the chain (or inside the span) negates
  std::set<int> chain(span.begin(), span.end());
  for (int idx : span) {
    int cur = idx;
    for (std::size_t guard = 0; guard < toks.size(); ++guard) {
      int h = toks[cur].head;
      if (h < 0 || h == cur) break;
      chain.insert(h);
      cur = h;
    }
  }
  for (const auto& t : toks)
    if (t.dep == "neg" && chain.count(t.head)) return true;
  return false;
}

} // namespace spark::instance
