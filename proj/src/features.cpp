#include "spark/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "spark/text.hpp"

namespace spark::features {

const std::vector<std::string> kMoralDomains = {"care", "fairness", "loyalty", "authority",
                                                "sanctity"};
const std::vector<std::string> kEmotions = {"anger",    "fear", "anticipation", "trust",
                                            "surprise", "sadness", "joy",       "disgust"};

namespace {

std::vector<std::string> csv_row(const std::string& line) {
  std::vector<std::string> cols;
  std::stringstream ss(line);
  std::string col;
  while (std::getline(ss, col, ',')) cols.push_back(text::trim(col));
  return cols;
}

void for_each_row(const std::string& path, bool required,
                  const std::function<void(const std::vector<std::string>&)>& fn) {
  std::ifstream in(path);
  if (!in) {
    if (required) throw std::runtime_error("cannot read lexicon: " + path);
    return;
  }
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    if (header) { header = false; continue; }
    fn(csv_row(line));
  }
}

std::vector<std::string> instance_words(const instance::Instance& inst) {
  std::vector<std::string> out;
  for (auto& w : text::words(inst.raw_text)) out.push_back(text::lowercase(w));
  return out;
}

bool pattern_matches(const std::string& pattern, const std::string& word) {
  if (!pattern.empty() && pattern.back() == '*')
    return word.rfind(pattern.substr(0, pattern.size() - 1), 0) == 0;
  return word == pattern;
}

} // namespace

LexiconSet LexiconSet::load(const std::string& dir) {
  LexiconSet lex;
  for_each_row(dir + "/moral.csv", true, [&](const std::vector<std::string>& r) {
    if (r.size() < 3) return;
    lex.moral[text::lowercase(r[0])][r[1]] = std::stod(r[2]);
  });
  for_each_row(dir + "/vad.csv", true, [&](const std::vector<std::string>& r) {
    if (r.size() < 4) return;
    lex.vad[text::lowercase(r[0])] = {std::stod(r[1]), std::stod(r[2]), std::stod(r[3])};
  });
  for_each_row(dir + "/emotion.csv", true, [&](const std::vector<std::string>& r) {
    if (r.size() < 1 + kEmotions.size()) return;
    auto& flags = lex.emotion[text::lowercase(r[0])];
    for (std::size_t e = 0; e < kEmotions.size(); ++e)
      if (r[1 + e] == "1") flags.insert(kEmotions[e]);
  });
  for_each_row(dir + "/categories.csv", true, [&](const std::vector<std::string>& r) {
    if (r.size() < 2) return;
    lex.categories.emplace_back(text::lowercase(r[0]), r[1]);
  });
  for_each_row(dir + "/subjectivity.csv", true, [&](const std::vector<std::string>& r) {
    if (r.size() < 3) return;
    const SubjStrength st = r[1] == "strongsubj" ? SubjStrength::Strong : SubjStrength::Weak;
    SubjPolarity pol = SubjPolarity::Neutral;
    if (r[2] == "negative") pol = SubjPolarity::Negative;
    else if (r[2] == "positive") pol = SubjPolarity::Positive;
    lex.subjectivity[text::lowercase(r[0])] = {st, pol};
  });
  for_each_row(dir + "/connotation.csv", true, [&](const std::vector<std::string>& r) {
    if (r.size() < 4) return;
    auto& entry = lex.connotation[text::lowercase(r[0])].dims[r[1]];
    if (r[2] == "subject") entry.first = std::stod(r[3]);
    else entry.second = std::stod(r[3]);
  });
  for_each_row(dir + "/power_agency.csv", true, [&](const std::vector<std::string>& r) {
    if (r.size() < 3) return;
    PowerDir pd = PowerDir::None;
    if (r[1] == "to_subject") pd = PowerDir::ToSubject;
    else if (r[1] == "to_object") pd = PowerDir::ToObject;
    Agency ag = Agency::None;
    if (r[2] == "high") ag = Agency::High;
    else if (r[2] == "low") ag = Agency::Low;
    lex.power_agency[text::lowercase(r[0])] = {pd, ag};
  });
  return lex;
}

std::map<std::string, double> post_features(const instance::Instance& inst,
                                            const LexiconSet& lex) {
  std::map<std::string, double> f;
  for (const auto& d : kMoralDomains) f["moral_" + d] = 0.0;
  f["vad_valence"] = f["vad_arousal"] = f["vad_dominance"] = 0.0;
  for (const auto& e : kEmotions) f["emotion_" + e] = 0.0;
  std::set<std::string> cat_names;
  for (const auto& [pat, cat] : lex.categories) cat_names.insert(cat);
  for (const auto& c : cat_names) f["cat_" + c] = 0.0;

  const auto words = instance_words(inst);
  const double wc = static_cast<double>(words.size());
  if (wc == 0) return f;

  for (const auto& w : words) {
    if (auto it = lex.moral.find(w); it != lex.moral.end())
      for (const auto& [domain, score] : it->second) f["moral_" + domain] += score;
    if (auto it = lex.vad.find(w); it != lex.vad.end()) {
      f["vad_valence"] += it->second[0];
      f["vad_arousal"] += it->second[1];
      f["vad_dominance"] += it->second[2];
    }
    if (auto it = lex.emotion.find(w); it != lex.emotion.end())
      for (const auto& e : it->second) f["emotion_" + e] += 1.0;
    for (const auto& [pat, cat] : lex.categories)
      if (pattern_matches(pat, w)) f["cat_" + cat] += 1.0;
  }
  for (auto& [name, v] : f) v /= wc;
  return f;
}

double subjectivity_score(const instance::Instance& inst, const LexiconSet& lex) {
  double sum = 0.0;
  std::size_t matched = 0;
  for (const auto& w : instance_words(inst)) {
    auto it = lex.subjectivity.find(w);
    if (it == lex.subjectivity.end()) continue;
    const double strength = it->second.first == SubjStrength::Strong ? 1.0 : 0.5;
    double polarity = 0.0;
    if (it->second.second == SubjPolarity::Negative) polarity = -1.0;
    else if (it->second.second == SubjPolarity::Positive) polarity = 1.0;
    sum += strength * polarity;
    ++matched;
  }
  return matched == 0 ? 0.0 : sum / static_cast<double>(matched);
}

std::string sentiment_category(double compound, double neg_threshold, double pos_threshold) {
  if (compound < neg_threshold) return "negative";
  if (compound > pos_threshold) return "positive";
  return "neutral";
}

std::pair<double, std::string> sentiment(const instance::Instance& inst,
                                         const SentimentScorer& scorer, double neg_threshold,
                                         double pos_threshold) {
  const double c = scorer.compound(inst.raw_text);
  return {c, sentiment_category(c, neg_threshold, pos_threshold)};
}

LexiconSentiment::LexiconSentiment(std::map<std::string, double> valence)
    : valence_(std::move(valence)) {}

LexiconSentiment::LexiconSentiment() {
  valence_ = {
      {"good", 1.9},      {"great", 3.1},    {"love", 3.2},     {"loved", 2.9},
      {"like", 1.5},      {"happy", 2.7},    {"glad", 2.0},     {"nice", 1.8},
      {"kind", 2.4},      {"amazing", 2.8},  {"wonderful", 2.7}, {"best", 3.2},
      {"thank", 1.9},     {"thanks", 1.9},   {"support", 1.7},  {"helped", 1.7},
      {"help", 1.7},      {"fair", 2.1},     {"right", 1.6},    {"fun", 2.3},
      {"generous", 2.3},  {"sweet", 2.0},    {"respect", 2.1},  {"forgive", 1.5},
      {"bad", -2.5},      {"terrible", -2.1}, {"awful", -2.0},  {"hate", -2.7},
      {"hated", -2.6},    {"angry", -2.3},   {"furious", -2.6}, {"sad", -2.1},
      {"upset", -1.6},    {"mean", -1.9},    {"rude", -2.0},    {"selfish", -2.1},
      {"lazy", -1.4},     {"wrong", -2.1},   {"unfair", -2.3},  {"stupid", -2.4},
      {"worst", -3.1},    {"horrible", -2.5}, {"cruel", -2.8},  {"toxic", -2.4},
      {"lied", -2.3},     {"lie", -1.8},     {"stole", -2.2},   {"steal", -2.2},
      {"screamed", -1.9}, {"scream", -1.7},  {"yelled", -1.8},  {"yell", -1.6},
      {"ruined", -2.5},   {"ruin", -2.2},    {"broke", -1.4},   {"hurt", -2.2},
      {"ignored", -1.5},  {"insulted", -2.3}, {"threatened", -2.6}, {"blame", -1.6},
      {"crying", -1.8},   {"cried", -1.7},   {"fight", -1.6},   {"fought", -1.6},
      {"jealous", -1.8},  {"angrily", -2.0}, {"disgusting", -2.6}, {"annoyed", -1.5}};
}

double LexiconSentiment::compound(const std::string& txt) const {
  static const std::set<std::string> negations{"not",   "no",    "never", "don't",
                                               "can't", "won't", "didn't", "doesn't",
                                               "isn't", "wasn't", "nothing"};
  const auto toks = text::alnum_tokens(txt);
  double sum = 0.0;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    auto it = valence_.find(toks[i]);
    if (it == valence_.end()) continue;
    double v = it->second;
    for (std::size_t k = i > 3 ? i - 3 : 0; k < i; ++k)
      if (negations.count(toks[k])) { v *= -0.74; break; }
    sum += v;
  }
  return sum / std::sqrt(sum * sum + 15.0);
}

namespace {

struct Role {
  int verb = -1;
  bool as_subject = false;
};

std::vector<Role> governing_verbs(const instance::Instance& inst,
                                  const instance::CharacterMention& m) {
  std::vector<Role> out;
  for (int idx : m.token_span) {
    const auto& t = inst.tokens[idx];
    if (t.head < 0 || t.head >= static_cast<int>(inst.tokens.size())) continue;
    const auto& head = inst.tokens[t.head];
    if (head.pos != "VERB") continue;
    if (t.dep == "nsubj" || t.dep == "agent")
      out.push_back({t.head, true});
    else if (t.dep == "dobj" || t.dep == "nsubjpass")
      out.push_back({t.head, false});
  }
  return out;
}

} // namespace

std::map<std::string, double> connotation_features(const instance::Instance& inst,
                                                   const instance::CharacterMention& mention,
                                                   const LexiconSet& lex) {
  static const std::vector<std::string> dims = {"perspective", "value", "effect",
                                                "mental_state"};
  std::map<std::string, double> out;
  for (const auto& d : dims) out[d] = 0.0;

  const double denom =
      std::max<std::size_t>(1, mention.descriptive_words.size()); // clamp for bare mentions
  for (const auto& role : governing_verbs(inst, mention)) {
    auto it = lex.connotation.find(inst.tokens[role.verb].lemma);
    if (it == lex.connotation.end()) continue;
    const bool negated = instance::has_negation_edge(inst, {role.verb}) ||
                         instance::has_negation_edge(inst, mention.token_span);
    for (const auto& [dim, slots] : it->second.dims) {
      double s = role.as_subject ? slots.first : slots.second;
      if (negated) s = -s;
      out[dim] += s / denom;
    }
  }
  return out;
}

std::map<std::string, PowerAgencyFlags> power_agency(
    const instance::Instance& inst, const std::vector<instance::CharacterMention>& mentions,
    const LexiconSet& lex) {
  std::map<std::string, PowerAgencyFlags> out;
  for (const auto& m : mentions) {
    int power_count = 0, agency_count = 0;
    for (const auto& role : governing_verbs(inst, m)) {
      auto it = lex.power_agency.find(inst.tokens[role.verb].lemma);
      if (it == lex.power_agency.end()) continue;
      const auto [pd, ag] = it->second;
      if ((role.as_subject && pd == PowerDir::ToSubject) ||
          (!role.as_subject && pd == PowerDir::ToObject))
        ++power_count;
      if (role.as_subject && ag == Agency::High) ++agency_count;
    }
    out[m.surface] = {power_count > 0 ? 1 : 0, agency_count > 0 ? 1 : 0};
  }
  return out;
}

FeatureVector build_feature_vector(const instance::Instance& inst,
                                   const std::vector<instance::CharacterMention>& mentions,
                                   const LexiconSet& lex, const SentimentScorer& scorer) {
  FeatureVector fv;
  fv.instance_id = inst.id;
  fv.post_features = post_features(inst, lex);
  fv.post_features["subjectivity"] = subjectivity_score(inst, lex);
  auto [compound, cat] = sentiment(inst, scorer);
  fv.sentiment_compound = compound;
  fv.sentiment_category = cat;
  fv.word_count = text::word_count(inst.raw_text);

  auto flags = power_agency(inst, mentions, lex);
  for (const auto& m : mentions) {
    auto conn = connotation_features(inst, m, lex);
    auto& row = fv.cha_features[m.surface];
    for (const auto& [dim, v] : conn) row["connotation_" + dim] = v;
    fv.power_flag[m.surface] = flags[m.surface].power;
    fv.agency_flag[m.surface] = flags[m.surface].agency;
  }
  return fv;
}

} // namespace spark::features
