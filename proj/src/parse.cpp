#include "spark/parse.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "spark/text.hpp"

namespace spark::parse {

namespace {

const std::unordered_set<std::string>& subj_pronouns() {
  static const std::unordered_set<std::string> s{"i", "he", "she", "we", "they", "you", "it"};
  return s;
}

const std::unordered_set<std::string>& obj_pronouns() {
  static const std::unordered_set<std::string> s{"me", "him", "her", "us", "them", "you", "it"};
  return s;
}

const std::unordered_set<std::string>& reflexives() {
  static const std::unordered_set<std::string> s{"myself", "yourself", "himself",
                                                 "herself",  "itself",  "ourselves",
                                                 "themselves"};
  return s;
}

const std::unordered_set<std::string>& possessives() {
  static const std::unordered_set<std::string> s{"my", "your", "his", "her", "its", "our",
                                                 "their", "mine"};
  return s;
}

const std::unordered_set<std::string>& determiners() {
  static const std::unordered_set<std::string> s{"a", "an", "the", "this", "that", "these",
                                                 "those", "some", "any", "every", "each",
                                                 "no"};
  return s;
}

const std::unordered_set<std::string>& prepositions() {
  static const std::unordered_set<std::string> s{
      "of", "in", "on", "at", "by", "with", "from", "to", "for", "about", "into",
      "over", "under", "after", "before", "during", "without", "against", "between",
      "through", "around", "near"};
  return s;
}

const std::unordered_set<std::string>& be_forms() {
  static const std::unordered_set<std::string> s{"am", "is", "are", "was", "were", "be",
                                                 "been", "being"};
  return s;
}

const std::unordered_set<std::string>& aux_verbs() {
  static const std::unordered_set<std::string> s{
      "am",   "is",    "are", "was",   "were", "be",  "been", "being", "do",  "does",
      "did",  "have",  "has", "had",   "will", "would", "can", "could", "shall",
      "should", "may", "might", "must"};
  return s;
}

const std::unordered_set<std::string>& conjunctions() {
  static const std::unordered_set<std::string> s{"and", "or", "but", "because", "if",
                                                 "when", "while", "since", "so", "although"};
  return s;
}

const std::unordered_set<std::string>& neg_words() {
  static const std::unordered_set<std::string> s{"not", "never", "n't"};
  return s;
}

const std::unordered_set<std::string>& adverb_list() {
  static const std::unordered_set<std::string> s{
      "always", "often", "very", "really", "too", "again", "yesterday", "today",
      "now", "here", "there", "just", "still", "soon", "later", "together",
      "away", "back", "home", "tomorrow", "recently", "finally"};
  return s;
}

const std::unordered_set<std::string>& person_nouns() {
  static const std::unordered_set<std::string> s{
      "mom", "mother", "dad", "father", "brother", "sister", "friend", "friends",
      "wife", "husband", "boyfriend", "girlfriend", "boss", "neighbor", "cousin",
      "aunt", "uncle", "son", "daughter", "kid", "kids", "child", "children",
      "roommate", "coworker", "colleague", "grandma", "grandpa", "grandmother",
      "grandfather", "teacher", "parents", "family", "fiance", "fiancee", "partner",
      "stepmom", "stepdad", "niece", "nephew", "guy", "woman", "man", "lady",
      "people", "person", "everyone", "classmate", "landlord"};
  return s;
}

const std::unordered_set<std::string>& adjective_list() {
  static const std::unordered_set<std::string> s{
      "lazy", "rude", "happy", "sad", "angry", "kind", "mean", "selfish", "nice",
      "upset", "tired", "drunk", "young", "old", "big", "small", "new", "late",
      "early", "wrong", "right", "unfair", "fair", "jealous", "dirty", "clean",
      "loud", "quiet", "crazy", "stupid", "smart", "generous", "careless", "hungry",
      "expensive", "cheap", "broken", "furious", "immature", "entitled", "petty",
      "toxic", "sick", "ill", "fine", "good", "bad", "terrible", "awful", "great",
      "sorry", "mad", "annoyed", "embarrassed", "uncomfortable", "disrespectful"};
  return s;
}

// lemma list for regular verbs plus ambiguity resolution
const std::unordered_set<std::string>& verb_lemmas() {
  static const std::unordered_set<std::string> s{
      "abandon", "accept", "accuse", "act", "admit", "agree", "allow", "announce",
      "answer", "apologize", "argue", "arrive", "ask", "attack", "avoid", "become",
      "believe", "blame", "borrow", "break", "bring", "build", "buy", "call",
      "cancel", "care", "carry", "change", "charge", "check", "choose", "clean",
      "close", "come", "complain", "cook", "cost", "cover", "crash", "cry",
      "damage", "decide", "delete", "demand", "deny", "destroy", "disagree",
      "discover", "discuss", "doubt", "dress", "drink", "drive", "drop", "eat",
      "end", "enjoy", "expect", "explain", "fail", "fall", "fear", "feed", "feel",
      "fight", "find", "finish", "fix", "follow", "force", "forget", "forgive",
      "gather", "get", "give", "go", "grab", "happen", "hate", "have", "hear",
      "help", "hide", "hit", "hold", "hope", "hurt", "ignore", "insist", "insult",
      "invite", "join", "judge", "jump", "keep", "kick", "know", "laugh", "learn",
      "leave", "lend", "let", "lie", "like", "listen", "live", "lock", "look",
      "lose", "love", "make", "marry", "meet", "mention", "miss", "move", "need",
      "notice", "offer", "open", "overreact", "owe", "own", "pack", "paint", "park",
      "pass", "pay", "phone", "pick", "plan", "play", "post", "prefer", "prepare",
      "pretend", "promise", "punish", "push", "put", "quit", "raise", "reach",
      "read", "realize", "refuse", "regret", "remember", "remind", "remove", "rent",
      "repair", "repeat", "replace", "reply", "respect", "respond", "return", "ruin",
      "run", "say", "scream", "see", "sell", "send", "share", "shout", "show",
      "shut", "sit", "sleep", "smell", "speak", "spend", "stand", "start", "stay",
      "steal", "stop", "study", "suggest", "support", "take", "talk", "teach",
      "tell", "text", "thank", "think", "threaten", "throw", "touch", "travel",
      "treat", "trust", "try", "turn", "understand", "upset", "use", "visit",
      "wait", "wake", "walk", "want", "warn", "wash", "waste", "watch", "wear",
      "win", "wonder", "work", "worry", "write", "yell", "rain", "snow", "smile",
      "dance", "sing", "cough", "sneeze", "shop", "clean", "swim", "wave"};
  return s;
}

const std::unordered_map<std::string, std::string>& irregular_verbs() {
  static const std::unordered_map<std::string, std::string> m{
      {"took", "take"},     {"taken", "take"},     {"said", "say"},
      {"went", "go"},       {"gone", "go"},        {"got", "get"},
      {"gotten", "get"},    {"made", "make"},      {"knew", "know"},
      {"known", "know"},    {"thought", "think"},  {"saw", "see"},
      {"seen", "see"},      {"came", "come"},      {"gave", "give"},
      {"given", "give"},    {"told", "tell"},      {"left", "leave"},
      {"felt", "feel"},     {"brought", "bring"},  {"bought", "buy"},
      {"paid", "pay"},      {"broke", "break"},    {"broken", "break"},
      {"stole", "steal"},   {"stolen", "steal"},   {"ate", "eat"},
      {"eaten", "eat"},     {"drove", "drive"},    {"driven", "drive"},
      {"spoke", "speak"},   {"spoken", "speak"},   {"found", "find"},
      {"kept", "keep"},     {"held", "hold"},      {"heard", "hear"},
      {"met", "meet"},      {"sat", "sit"},        {"slept", "sleep"},
      {"stood", "stand"},   {"spent", "spend"},    {"lost", "lose"},
      {"ran", "run"},       {"won", "win"},        {"wore", "wear"},
      {"worn", "wear"},     {"wrote", "write"},    {"written", "write"},
      {"threw", "throw"},   {"thrown", "throw"},   {"sent", "send"},
      {"sold", "sell"},     {"fell", "fall"},      {"fallen", "fall"},
      {"fed", "feed"},      {"fought", "fight"},   {"forgot", "forget"},
      {"forgotten", "forget"}, {"forgave", "forgive"}, {"forgiven", "forgive"},
      {"hid", "hide"},      {"hidden", "hide"},    {"hurt", "hurt"},
      {"lent", "lend"},     {"let", "let"},        {"lay", "lie"},
      {"put", "put"},       {"quit", "quit"},      {"read", "read"},
      {"shut", "shut"},     {"taught", "teach"},   {"understood", "understand"},
      {"woke", "wake"},     {"lied", "lie"},       {"did", "do"},
      {"done", "do"},       {"had", "have"},       {"was", "be"},
      {"were", "be"},       {"been", "be"},        {"is", "be"},
      {"am", "be"},         {"are", "be"}};
  return m;
}

// past participles for passive detection (beyond the regular -ed rule)
const std::unordered_set<std::string>& irregular_participles() {
  static const std::unordered_set<std::string> s{
      "taken", "gone", "gotten", "made", "known", "thought", "seen", "given",
      "told", "felt", "brought", "bought", "paid", "broken", "stolen", "eaten",
      "driven", "spoken", "found", "kept", "held", "heard", "met", "left", "said",
      "spent", "lost", "run", "won", "worn", "written", "thrown", "sent", "sold",
      "fallen", "fed", "fought", "forgotten", "forgiven", "hidden", "hurt",
      "lent", "let", "put", "read", "shut", "taught", "understood", "done"};
  return s;
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// regular inflection stripping with e-restoration and consonant undoubling
std::string strip_inflection(const std::string& w, const std::unordered_set<std::string>& lemmas) {
  auto try_lemma = [&](const std::string& cand) -> std::string {
    return lemmas.count(cand) ? cand : std::string{};
  };
  std::string r;
  if (ends_with(w, "ies") && w.size() > 3) {
    if (!(r = try_lemma(w.substr(0, w.size() - 3) + "y")).empty()) return r;
  }
  if (ends_with(w, "es") && w.size() > 2) {
    if (!(r = try_lemma(w.substr(0, w.size() - 2))).empty()) return r;
    if (!(r = try_lemma(w.substr(0, w.size() - 1))).empty()) return r; // -e kept
  }
  if (ends_with(w, "s") && !ends_with(w, "ss") && w.size() > 1) {
    if (!(r = try_lemma(w.substr(0, w.size() - 1))).empty()) return r;
  }
  if (ends_with(w, "ied") && w.size() > 3) {
    if (!(r = try_lemma(w.substr(0, w.size() - 3) + "y")).empty()) return r;
  }
  if (ends_with(w, "ed") && w.size() > 2) {
    std::string stem = w.substr(0, w.size() - 2);
    if (!(r = try_lemma(stem)).empty()) return r;
    if (!(r = try_lemma(stem + "e")).empty()) return r;
    if (stem.size() >= 2 && stem[stem.size() - 1] == stem[stem.size() - 2]) {
      if (!(r = try_lemma(stem.substr(0, stem.size() - 1))).empty()) return r;
    }
  }
  if (ends_with(w, "ing") && w.size() > 3) {
    std::string stem = w.substr(0, w.size() - 3);
    if (!(r = try_lemma(stem)).empty()) return r;
    if (!(r = try_lemma(stem + "e")).empty()) return r;
    if (stem.size() >= 2 && stem[stem.size() - 1] == stem[stem.size() - 2]) {
      if (!(r = try_lemma(stem.substr(0, stem.size() - 1))).empty()) return r;
    }
  }
  return {};
}

bool capitalized(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])) != 0;
}

std::vector<std::string> word_tokens(const std::string& sentence) {
  // keep words (with internal apostrophes/hyphens); drop punctuation
  std::vector<std::string> toks;
  std::string cur;
  for (char c : sentence) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-' || c == '_') {
      cur.push_back(c);
    } else if (!cur.empty()) {
      toks.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  return toks;
}

bool nominal(const std::string& pos) {
  return pos == "PRON" || pos == "PROPN" || pos == "NOUN";
}

} // namespace

RuleParser::RuleParser() = default;

std::string RuleParser::verb_lemma(const std::string& word) const {
  const std::string w = text::lowercase(word);
  auto it = irregular_verbs().find(w);
  if (it != irregular_verbs().end()) return it->second;
  if (verb_lemmas().count(w)) return w;
  std::string r = strip_inflection(w, verb_lemmas());
  return r.empty() ? w : r;
}

bool RuleParser::is_verb_form(const std::string& word) const {
  const std::string w = text::lowercase(word);
  if (irregular_verbs().count(w) || verb_lemmas().count(w)) return true;
  return !strip_inflection(w, verb_lemmas()).empty();
}

bool RuleParser::is_past_participle(const std::string& word) const {
  const std::string w = text::lowercase(word);
  if (irregular_participles().count(w)) return true;
  return (ends_with(w, "ed") || ends_with(w, "ied")) && is_verb_form(w);
}

bool RuleParser::is_person_noun(const std::string& word) const {
  return person_nouns().count(text::lowercase(word)) != 0;
}

std::vector<TokenAnnotation> RuleParser::annotate(const std::string& sentence) const {
  const auto surfaces = word_tokens(sentence);
  const std::size_t n = surfaces.size();
  std::vector<TokenAnnotation> toks(n);

  // pass 1: POS
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& sf = surfaces[i];
    const std::string lw = text::lowercase(sf);
    TokenAnnotation& t = toks[i];
    t.surface = sf;
    t.lemma = lw;
    if (subj_pronouns().count(lw) || obj_pronouns().count(lw) || reflexives().count(lw)) {
      t.pos = "PRON";
    } else if (possessives().count(lw)) {
      t.pos = "DET";
    } else if (neg_words().count(lw)) {
      t.pos = lw == "not" ? "PART" : "ADV";
    } else if (aux_verbs().count(lw)) {
      t.pos = "AUX";
      t.lemma = verb_lemma(lw);
    } else if (determiners().count(lw)) {
      t.pos = "DET";
    } else if (prepositions().count(lw)) {
      t.pos = "ADP";
    } else if (conjunctions().count(lw)) {
      t.pos = "CCONJ";
    } else if (adjective_list().count(lw)) {
      t.pos = "ADJ";
    } else if (ends_with(lw, "ly") && lw.size() > 3) {
      t.pos = "ADV";
    } else if (adverb_list().count(lw)) {
      t.pos = "ADV";
    } else if (i > 0 && capitalized(sf) && !person_nouns().count(lw)) {
      t.pos = "PROPN";
    } else if (person_nouns().count(lw)) {
      t.pos = "NOUN";
    } else if (is_verb_form(lw)) {
      t.pos = "VERB";
      t.lemma = verb_lemma(lw);
    } else if (ends_with(lw, "ful") || ends_with(lw, "ous") || ends_with(lw, "ish") ||
               ends_with(lw, "less") || ends_with(lw, "able") || ends_with(lw, "ive")) {
      t.pos = "ADJ";
    } else {
      t.pos = "NOUN";
    }
  }

  // disambiguate: AUX with no following verb and no following predicate
  // complement stays a copula candidate; a verb-form NOUN after "to" is a verb
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (toks[i].lemma == "to" && toks[i].pos == "ADP") {
      if (toks[i + 1].pos == "NOUN" && is_verb_form(toks[i + 1].surface)) {
        toks[i + 1].pos = "VERB";
        toks[i + 1].lemma = verb_lemma(toks[i + 1].surface);
        toks[i].pos = "PART";
      } else if (toks[i + 1].pos == "VERB") {
        toks[i].pos = "PART";
      }
    }
  }

  if (n == 0) return toks;
  for (auto& t : toks) { t.dep = "dep"; t.head = -1; }

  // main verb = first VERB; if an AUX chain has no VERB after it, treat
  // "be + ADJ/NOUN" as a copular predicate.
  int main_verb = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (toks[i].pos == "VERB") { main_verb = static_cast<int>(i); break; }
  }

  int root = -1;
  bool passive = false;
  if (main_verb >= 0) {
    root = main_verb;
    // aux chain directly before the verb
    int j = main_verb - 1;
    std::vector<int> auxes;
    while (j >= 0 && (toks[j].pos == "AUX" || toks[j].pos == "PART" || toks[j].pos == "ADV")) {
      if (toks[j].pos == "AUX") auxes.push_back(j);
      --j;
    }
    for (int a : auxes) {
      toks[a].dep = "aux";
      toks[a].head = root;
    }
    if (!auxes.empty() && be_forms().count(text::lowercase(toks[auxes.front()].surface)) &&
        is_past_participle(toks[main_verb].surface)) {
      passive = true;
      for (int a : auxes) toks[a].dep = "auxpass";
    }
  } else {
    // copular: first AUX be-form followed by ADJ/NOUN predicate
    for (std::size_t i = 0; i < n; ++i) {
      if (toks[i].pos == "AUX" && be_forms().count(text::lowercase(toks[i].surface))) {
        for (std::size_t k = i + 1; k < n; ++k) {
          if (toks[k].pos == "ADJ" || nominal(toks[k].pos)) {
            root = static_cast<int>(k);
            toks[i].dep = "cop";
            toks[i].head = root;
            break;
          }
        }
        break;
      }
    }
  }
  if (root < 0) root = 0; // fragment; caller checks verb-rootedness
  toks[root].dep = "root";
  toks[root].head = root;

  // subject: last nominal before the root/aux chain not governed by ADP
  int first_pred = root;
  for (std::size_t i = 0; i < n; ++i) {
    if (toks[i].head == root && (toks[i].dep == "aux" || toks[i].dep == "auxpass" ||
                                 toks[i].dep == "cop")) {
      first_pred = std::min(first_pred, static_cast<int>(i));
    }
  }
  int subj = -1;
  for (int i = 0; i < first_pred; ++i) {
    if (nominal(toks[i].pos)) {
      bool after_prep = i > 0 && toks[i - 1].pos == "ADP";
      if (!after_prep) subj = i;
    }
  }
  if (subj >= 0) {
    toks[subj].dep = passive ? "nsubjpass" : "nsubj";
    toks[subj].head = root;
  }

  // objects, agents, prepositional structure after the root
  bool in_by_phrase = false;
  int obj = -1;
  int last_prep = -1;
  for (std::size_t i = root + 1; i < n; ++i) {
    TokenAnnotation& t = toks[i];
    if (t.pos == "ADP") {
      in_by_phrase = passive && t.lemma == "by";
      t.dep = in_by_phrase ? "case" : "prep";
      t.head = root;
      last_prep = static_cast<int>(i);
      continue;
    }
    if (t.pos == "PART" && t.lemma == "to") {
      t.dep = "mark";
      t.head = root;
      continue;
    }
    if (t.pos == "VERB" && static_cast<int>(i) != root) {
      t.dep = "xcomp";
      t.head = root;
      last_prep = -1;
      in_by_phrase = false;
      continue;
    }
    if (nominal(t.pos)) {
      if (in_by_phrase) {
        t.dep = "agent";
        t.head = root;
        in_by_phrase = false;
      } else if (last_prep >= 0) {
        t.dep = "pobj";
        t.head = last_prep;
      } else if (obj < 0 && toks[root].pos == "VERB") {
        t.dep = "dobj";
        t.head = root;
        obj = static_cast<int>(i);
      } else {
        t.dep = "dep";
        t.head = root;
      }
      continue;
    }
  }

  // complement clause: nominal + be-form + ADJ after the root verb
  for (std::size_t i = root + 1; i + 2 < n + 1 && i + 2 <= n; ++i) {
    if (i + 2 < n && nominal(toks[i].pos) && toks[i + 1].pos == "AUX" &&
        be_forms().count(text::lowercase(toks[i + 1].surface)) && toks[i + 2].pos == "ADJ") {
      toks[i + 2].dep = "ccomp";
      toks[i + 2].head = root;
      toks[i].dep = "nsubj";
      toks[i].head = static_cast<int>(i + 2);
      toks[i + 1].dep = "cop";
      toks[i + 1].head = static_cast<int>(i + 2);
    }
  }

  // modifiers
  for (std::size_t i = 0; i < n; ++i) {
    TokenAnnotation& t = toks[i];
    if (t.head >= 0 && t.dep != "dep") continue;
    if (t.pos == "DET") {
      for (std::size_t k = i + 1; k < n; ++k) {
        if (nominal(toks[k].pos)) {
          t.dep = possessives().count(t.lemma) ? "poss" : "det";
          t.head = static_cast<int>(k);
          break;
        }
        if (toks[k].pos != "ADJ" && toks[k].pos != "ADV") break;
      }
    } else if (t.pos == "ADJ") {
      bool attached = false;
      for (std::size_t k = i + 1; k < n; ++k) {
        if (nominal(toks[k].pos)) {
          t.dep = "amod";
          t.head = static_cast<int>(k);
          attached = true;
          break;
        }
        if (toks[k].pos != "ADJ") break;
      }
      if (!attached) {
        t.dep = "acomp";
        t.head = root;
      }
    } else if ((t.pos == "PART" || t.pos == "ADV") && neg_words().count(t.lemma)) {
      // negation attaches to the nearest following predicate, else the root
      int h = root;
      for (std::size_t k = i + 1; k < n; ++k) {
        if (toks[k].pos == "VERB" || toks[k].dep == "root" || toks[k].dep == "ccomp" ||
            toks[k].dep == "acomp" || toks[k].dep == "xcomp") {
          h = static_cast<int>(k);
          break;
        }
      }
      t.dep = "neg";
      t.head = h;
    } else if (t.pos == "ADV") {
      t.dep = "advmod";
      int h = root;
      for (std::size_t k = i + 1; k < n; ++k)
        if (toks[k].pos == "VERB") { h = static_cast<int>(k); break; }
      t.head = h;
    }
    if (t.head < 0) {
      t.dep = t.dep == "root" ? t.dep : "dep";
      t.head = root;
    }
  }
  toks[root].dep = "root";
  toks[root].head = root;
  return toks;
}

std::vector<std::string> split_sentences(const std::string& body) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : body) {
    if (c == '\n') {
      if (!text::trim(cur).empty()) out.push_back(text::trim(cur));
      cur.clear();
      continue;
    }
    cur.push_back(c);
    if (c == '.' || c == '!' || c == '?') {
      if (!text::trim(cur).empty()) out.push_back(text::trim(cur));
      cur.clear();
    }
  }
  if (!text::trim(cur).empty()) out.push_back(text::trim(cur));
  return out;
}

bool person_noun(const std::string& word) {
  return person_nouns().count(text::lowercase(word)) != 0;
}

std::shared_ptr<ParserBackend> make_parser(const std::string& name) {
  if (name == "rule" || name.empty()) return std::make_shared<RuleParser>();
  throw std::runtime_error("unknown parser backend: " + name);
}

} // namespace spark::parse
