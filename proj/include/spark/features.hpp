#ifndef SPARK_FEATURES_HPP
#define SPARK_FEATURES_HPP

#include <array>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "spark/instance.hpp"

namespace spark::features {

enum class SubjStrength { Weak, Strong };
enum class SubjPolarity { Neutral, Negative, Positive };
enum class PowerDir { ToSubject, ToObject, None };
enum class Agency { High, Low, None };

struct ConnotationEntry {
  // dimension -> (subject slot score, object slot score), scores in [-1, 1]
  std::map<std::string, std::pair<double, double>> dims;
};

struct LexiconSet {
  // word -> signed score per moral domain
  std::map<std::string, std::map<std::string, double>> moral;
  std::map<std::string, std::array<double, 3>> vad; // valence, arousal, dominance
  std::map<std::string, std::set<std::string>> emotion; // word -> emotion flags
  std::vector<std::pair<std::string, std::string>> categories; // pattern ("*"-suffix = prefix), category
  std::map<std::string, std::pair<SubjStrength, SubjPolarity>> subjectivity;
  std::map<std::string, ConnotationEntry> connotation; // verb lemma keyed
  std::map<std::string, std::pair<PowerDir, Agency>> power_agency;

  static LexiconSet load(const std::string& lexicon_dir);
};

extern const std::vector<std::string> kMoralDomains;
extern const std::vector<std::string> kEmotions;

class SentimentScorer {
public:
  virtual ~SentimentScorer() = default;
  virtual double compound(const std::string& txt) const = 0; // [-1, 1]
  virtual std::string version() const = 0;
};

// Valence-lexicon scorer with negation damping and the usual
// sum/sqrt(sum^2 + alpha) compound normalization.
class LexiconSentiment : public SentimentScorer {
public:
  LexiconSentiment(); // built-in valence table
  explicit LexiconSentiment(std::map<std::string, double> valence);
  double compound(const std::string& txt) const override;
  std::string version() const override { return "lexicon-sentiment/1"; }

private:
  std::map<std::string, double> valence_;
};

struct FeatureVector {
  std::string instance_id;
  std::map<std::string, double> post_features;
  double sentiment_compound = 0.0;
  std::string sentiment_category; // negative / neutral / positive
  // character surface -> feature name -> score
  std::map<std::string, std::map<std::string, double>> cha_features;
  std::map<std::string, int> power_flag;
  std::map<std::string, int> agency_flag;
  std::size_t word_count = 0; // normalization denominator, recorded
};

// Lexicon-count families normalized by instance word count; prefix patterns
// match stems.
std::map<std::string, double> post_features(const instance::Instance& inst,
                                            const LexiconSet& lex);

// Mean over matched words of strength x polarity; 0 with no matches.
double subjectivity_score(const instance::Instance& inst, const LexiconSet& lex);

// negative strictly below neg_threshold, positive strictly above
// pos_threshold, neutral in between (boundaries included).
std::string sentiment_category(double compound, double neg_threshold = -0.05,
                               double pos_threshold = 0.05);

std::pair<double, std::string> sentiment(const instance::Instance& inst,
                                         const SentimentScorer& scorer,
                                         double neg_threshold = -0.05,
                                         double pos_threshold = 0.05);

// Writer perspective, value, effect, mental state for one character;
// normalized by the character's descriptive-word count (min 1); sign
// reversed under a negation edge on the governing verb.
std::map<std::string, double> connotation_features(const instance::Instance& inst,
                                                   const instance::CharacterMention& mention,
                                                   const LexiconSet& lex);

struct PowerAgencyFlags {
  int power = 0;
  int agency = 0;
};

std::map<std::string, PowerAgencyFlags> power_agency(
    const instance::Instance& inst, const std::vector<instance::CharacterMention>& mentions,
    const LexiconSet& lex);

FeatureVector build_feature_vector(const instance::Instance& inst,
                                   const std::vector<instance::CharacterMention>& mentions,
                                   const LexiconSet& lex, const SentimentScorer& scorer);

} // namespace spark::features

#endif
