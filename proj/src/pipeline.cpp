#include "spark/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spark/cluster.hpp"
#include "spark/corpus.hpp"
#include "spark/features.hpp"
#include "spark/instance.hpp"
#include "spark/kg.hpp"
#include "spark/parse.hpp"
#include "spark/report.hpp"
#include "spark/stats.hpp"
#include "spark/text.hpp"
#include "spark/verdict.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace spark::pipeline {

namespace {

// ---- configuration plumbing ----

bool apply_key(RunConfig& c, const std::string& key, const std::string& value) {
  auto as_size = [&](std::size_t& dst) {
    try {
      dst = static_cast<std::size_t>(std::stoull(value));
    } catch (...) {
      throw PipelineError(ErrorKind::Config, "bad integer for " + key + ": " + value);
    }
  };
  auto as_int = [&](int& dst) {
    try {
      dst = std::stoi(value);
    } catch (...) {
      throw PipelineError(ErrorKind::Config, "bad integer for " + key + ": " + value);
    }
  };
  auto as_u64 = [&](std::uint64_t& dst) {
    try {
      dst = std::stoull(value);
    } catch (...) {
      throw PipelineError(ErrorKind::Config, "bad integer for " + key + ": " + value);
    }
  };
  auto as_double = [&](double& dst) {
    try {
      dst = std::stod(value);
    } catch (...) {
      throw PipelineError(ErrorKind::Config, "bad number for " + key + ": " + value);
    }
  };

  if (key == "corpus_posts") c.corpus_posts = value;
  else if (key == "corpus_comments") c.corpus_comments = value;
  else if (key == "kg_path") c.kg_path = value;
  else if (key == "lexicon_dir") c.lexicon_dir = value;
  else if (key == "data_dir") c.data_dir = value;
  else if (key == "out_dir") c.out_dir = value;
  else if (key == "cluster_names_path") c.cluster_names_path = value;
  else if (key == "min_words_post") as_size(c.min_words_post);
  else if (key == "min_top_comments") as_size(c.min_top_comments);
  else if (key == "min_words_comment") as_size(c.min_words_comment);
  else if (key == "tfidf_threshold") as_double(c.tfidf_threshold);
  else if (key == "topk_alignments") as_size(c.topk_alignments);
  else if (key == "min_event_count") as_size(c.min_event_count);
  else if (key == "sentiment_neg") as_double(c.sentiment_neg);
  else if (key == "sentiment_pos") as_double(c.sentiment_pos);
  else if (key == "match_threshold") as_double(c.match_threshold);
  else if (key == "alpha") as_double(c.alpha);
  else if (key == "seed") as_u64(c.seed);
  else if (key == "parser_backend") c.parser_backend = value;
  else if (key == "embedder_backend") c.embedder_backend = value;
  else if (key == "embed_dim") as_int(c.embed_dim);
  else if (key == "scorer_backend") c.scorer_backend = value;
  else if (key == "sentiment_backend") c.sentiment_backend = value;
  else if (key == "tune_budget") as_size(c.tune_budget);
  else if (key == "tune_min_cluster_lo") as_int(c.tune_min_cluster_lo);
  else if (key == "tune_min_cluster_hi") as_int(c.tune_min_cluster_hi);
  else return false;
  return true;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "corpus_posts",    "corpus_comments", "kg_path",
      "lexicon_dir",     "data_dir",        "out_dir",
      "cluster_names_path", "min_words_post", "min_top_comments",
      "min_words_comment", "tfidf_threshold", "topk_alignments",
      "min_event_count", "sentiment_neg",   "sentiment_pos",
      "match_threshold", "alpha",           "seed",
      "parser_backend",  "embedder_backend", "embed_dim",
      "scorer_backend",  "sentiment_backend", "tune_budget",
      "tune_min_cluster_lo", "tune_min_cluster_hi"};
  return keys;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::map<std::string, std::string> config_to_map(const RunConfig& c) {
  std::map<std::string, std::string> m;
  m["corpus_posts"] = c.corpus_posts;
  m["corpus_comments"] = c.corpus_comments;
  m["kg_path"] = c.kg_path;
  m["lexicon_dir"] = c.lexicon_dir;
  m["data_dir"] = c.data_dir;
  m["out_dir"] = c.out_dir;
  m["cluster_names_path"] = c.cluster_names_path;
  m["min_words_post"] = std::to_string(c.min_words_post);
  m["min_top_comments"] = std::to_string(c.min_top_comments);
  m["min_words_comment"] = std::to_string(c.min_words_comment);
  m["tfidf_threshold"] = format_double(c.tfidf_threshold);
  m["topk_alignments"] = std::to_string(c.topk_alignments);
  m["min_event_count"] = std::to_string(c.min_event_count);
  m["sentiment_neg"] = format_double(c.sentiment_neg);
  m["sentiment_pos"] = format_double(c.sentiment_pos);
  m["match_threshold"] = format_double(c.match_threshold);
  m["alpha"] = format_double(c.alpha);
  m["seed"] = std::to_string(c.seed);
  m["parser_backend"] = c.parser_backend;
  m["embedder_backend"] = c.embedder_backend;
  m["embed_dim"] = std::to_string(c.embed_dim);
  m["scorer_backend"] = c.scorer_backend;
  m["sentiment_backend"] = c.sentiment_backend;
  m["tune_budget"] = std::to_string(c.tune_budget);
  m["tune_min_cluster_lo"] = std::to_string(c.tune_min_cluster_lo);
  m["tune_min_cluster_hi"] = std::to_string(c.tune_min_cluster_hi);
  return m;
}

// ---- artifact helpers ----

std::string art(const RunConfig& cfg, const std::string& name) {
  return (fs::path(cfg.out_dir) / name).string();
}

void require_artifact(const RunConfig& cfg, const std::string& file, const std::string& producer) {
  if (!fs::exists(art(cfg, file)))
    throw PipelineError(ErrorKind::Stage,
                        "missing artifact " + file + "; run stage " + producer + " first");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw PipelineError(ErrorKind::Stage, "cannot write " + path);
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PipelineError(ErrorKind::Stage, "cannot read " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

// ---- manifest ----

ordered_json load_manifest(const RunConfig& cfg) {
  const std::string path = art(cfg, "manifest.json");
  if (!fs::exists(path)) return ordered_json{{"config", ordered_json::object()},
                                            {"stages", ordered_json::array()}};
  std::ifstream in(path);
  ordered_json j = ordered_json::parse(in, nullptr, false);
  if (j.is_discarded())
    return ordered_json{{"config", ordered_json::object()}, {"stages", ordered_json::array()}};
  return j;
}

std::string now_iso8601() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

void record_stage(const RunConfig& cfg, const std::string& name,
                  const std::map<std::string, std::int64_t>& counts,
                  const std::map<std::string, double>& metrics,
                  const std::map<std::string, std::string>& backends,
                  const std::vector<std::string>& artifacts, double wall_ms) {
  ordered_json manifest = load_manifest(cfg);
  ordered_json cfgj = ordered_json::object();
  for (const auto& [k, v] : config_to_map(cfg)) cfgj[k] = v;
  manifest["config"] = cfgj;

  ordered_json entry;
  entry["stage"] = name;
  entry["seed"] = cfg.seed;
  ordered_json cj = ordered_json::object();
  for (const auto& [k, v] : counts) cj[k] = v;
  entry["counts"] = cj;
  ordered_json mj = ordered_json::object();
  for (const auto& [k, v] : metrics) mj[k] = v;
  entry["metrics"] = mj;
  ordered_json bj = ordered_json::object();
  for (const auto& [k, v] : backends) bj[k] = v;
  entry["backends"] = bj;
  entry["artifacts"] = artifacts;
  entry["timing"] = ordered_json{{"wall_ms", wall_ms}, {"timestamp", now_iso8601()}};

  ordered_json stages = ordered_json::array();
  bool replaced = false;
  for (auto& s : manifest["stages"]) {
    if (s.value("stage", "") == name) {
      stages.push_back(entry);
      replaced = true;
    } else {
      stages.push_back(s);
    }
  }
  if (!replaced) stages.push_back(entry);
  manifest["stages"] = stages;

  auto out = open_out(art(cfg, "manifest.json"));
  out << manifest.dump(2) << "\n";
}

// ---- shared loaders ----

verdict::PatternSet load_patterns(const RunConfig& cfg) {
  if (!cfg.data_dir.empty()) {
    const fs::path p = fs::path(cfg.data_dir) / "verdict_patterns.json";
    if (fs::exists(p)) return verdict::PatternSet::load(p.string());
  }
  return verdict::PatternSet::defaults();
}

instance::CleanerConfig load_cleaner(const RunConfig& cfg) {
  if (!cfg.data_dir.empty() && fs::exists(fs::path(cfg.data_dir) / "stopwords.txt"))
    return instance::CleanerConfig::bundled(cfg.data_dir);
  return instance::CleanerConfig::defaults();
}

std::shared_ptr<parse::ParserBackend> make_parser_checked(const RunConfig& cfg) {
  try {
    return parse::make_parser(cfg.parser_backend);
  } catch (const std::exception& e) {
    throw PipelineError(ErrorKind::Config, e.what());
  }
}

corpus::CorpusStore load_filtered_corpus(const RunConfig& cfg) {
  require_artifact(cfg, "posts.jsonl", "ingest");
  require_artifact(cfg, "comments.jsonl", "ingest");
  try {
    return corpus::load_corpus(art(cfg, "posts.jsonl"), art(cfg, "comments.jsonl"));
  } catch (const corpus::CorpusError& e) {
    throw PipelineError(ErrorKind::Data, e.what());
  }
}

ordered_json token_to_json(const parse::TokenAnnotation& t) {
  return ordered_json{{"surface", t.surface},
                      {"lemma", t.lemma},
                      {"pos", t.pos},
                      {"dep", t.dep},
                      {"head", t.head}};
}

std::vector<instance::Instance> read_instances(const RunConfig& cfg) {
  require_artifact(cfg, "instances.jsonl", "instances");
  std::ifstream in(art(cfg, "instances.jsonl"));
  std::vector<instance::Instance> out;
  std::string line;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw PipelineError(ErrorKind::Data, "corrupt instances.jsonl line");
    instance::Instance inst;
    inst.id = j.at("id").get<std::string>();
    inst.post_id = j.at("post_id").get<std::string>();
    inst.raw_text = j.at("raw_text").get<std::string>();
    inst.clean_text = j.at("clean_text").get<std::string>();
    for (const auto& tj : j.at("tokens")) {
      parse::TokenAnnotation t;
      t.surface = tj.at("surface").get<std::string>();
      t.lemma = tj.at("lemma").get<std::string>();
      t.pos = tj.at("pos").get<std::string>();
      t.dep = tj.at("dep").get<std::string>();
      t.head = tj.at("head").get<int>();
      inst.tokens.push_back(std::move(t));
    }
    out.push_back(std::move(inst));
  }
  return out;
}

kg::KGStore load_kg(const RunConfig& cfg, const parse::ParserBackend& parser) {
  try {
    return kg::load_atomic(cfg.kg_path, parser);
  } catch (const kg::KGError& e) {
    throw PipelineError(ErrorKind::Data, e.what());
  }
}

struct AlignmentRecord {
  std::string instance_id;
  std::size_t pool_size = 0;
  std::size_t refined_size = 0;
  std::vector<kg::ScoredEvent> top3;
};

std::vector<AlignmentRecord> read_alignments(const RunConfig& cfg) {
  require_artifact(cfg, "alignments.jsonl", "align");
  std::ifstream in(art(cfg, "alignments.jsonl"));
  std::vector<AlignmentRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded()) throw PipelineError(ErrorKind::Data, "corrupt alignments.jsonl line");
    AlignmentRecord r;
    r.instance_id = j.at("instance_id").get<std::string>();
    r.pool_size = j.at("pool_size").get<std::size_t>();
    r.refined_size = j.at("refined_size").get<std::size_t>();
    for (const auto& tj : j.at("top3"))
      r.top3.push_back({tj.at("event_id").get<std::string>(), tj.at("score").get<double>()});
    out.push_back(std::move(r));
  }
  return out;
}

std::map<std::string, bool> read_spark_labels(const RunConfig& cfg) {
  require_artifact(cfg, "spark_labels.csv", "instances");
  std::map<std::string, bool> labels;
  auto rows = read_csv(art(cfg, "spark_labels.csv"));
  for (std::size_t i = 1; i < rows.size(); ++i)
    labels[rows[i][0]] = rows[i][1] == "1";
  return labels;
}

// ---- stages ----

using Counts = std::map<std::string, std::int64_t>;
using Metrics = std::map<std::string, double>;
using Backends = std::map<std::string, std::string>;

struct StageOutcome {
  Counts counts;
  Metrics metrics;
  Backends backends;
  std::vector<std::string> artifacts;
};

StageOutcome stage_ingest(const RunConfig& cfg) {
  corpus::CorpusStore raw;
  try {
    raw = corpus::load_corpus(cfg.corpus_posts, cfg.corpus_comments);
  } catch (const corpus::CorpusError& e) {
    throw PipelineError(ErrorKind::Data, e.what());
  }

  verdict::VerdictExtractor extractor(load_patterns(cfg));
  auto has_verdict = [&](const std::string& body) { return extractor.extract(body).has_value(); };

  auto s1 = corpus::filter_posts(raw, cfg.min_words_post, cfg.min_top_comments);
  auto s2 = corpus::filter_comments(s1, cfg.min_words_comment, has_verdict);
  auto s3 = corpus::select_quoting_comments(s2);

  {
    auto out = open_out(art(cfg, "posts.jsonl"));
    for (const auto& [id, p] : s3.posts) {
      ordered_json j{{"id", p.id},       {"author_id", p.author_id},
                     {"created_utc", p.created_utc}, {"title", p.title},
                     {"body", p.body},   {"deleted", p.is_deleted},
                     {"moderator", p.is_moderator}};
      out << j.dump() << "\n";
    }
  }
  {
    auto out = open_out(art(cfg, "comments.jsonl"));
    for (const auto& [id, c] : s3.comments) {
      ordered_json j{{"id", c.id},         {"link_id", c.link_id},
                     {"parent_id", c.parent_id}, {"author_id", c.author_id},
                     {"body", c.body},     {"deleted", c.is_deleted},
                     {"moderator", c.is_moderator}, {"score", c.vote_score}};
      out << j.dump() << "\n";
    }
  }
  corpus::write_filter_log_csv(s3, art(cfg, "filter_log.csv"));

  StageOutcome o;
  o.counts["raw_posts"] = static_cast<std::int64_t>(raw.posts.size());
  o.counts["raw_comments"] = static_cast<std::int64_t>(raw.comments.size());
  for (const auto& st : s3.filter_log) {
    o.counts[st.stage + "_posts"] = static_cast<std::int64_t>(st.n_posts);
    o.counts[st.stage + "_comments"] = static_cast<std::int64_t>(st.n_comments);
  }
  o.artifacts = {"posts.jsonl", "comments.jsonl", "filter_log.csv"};
  return o;
}

StageOutcome stage_verdicts(const RunConfig& cfg) {
  auto store = load_filtered_corpus(cfg);
  verdict::VerdictExtractor extractor(load_patterns(cfg));

  auto out = open_out(art(cfg, "verdicts.csv"));
  out << "comment_id,post_id,verdict\n";
  Counts counts;
  for (const auto& [id, c] : store.comments) {
    auto code = extractor.extract(c.body);
    const std::string v = code ? verdict::to_string(*code) : "";
    out << c.id << "," << c.link_id << "," << v << "\n";
    if (code) ++counts["verdict_" + v];
  }
  counts["comments"] = static_cast<std::int64_t>(store.comments.size());

  StageOutcome o;
  o.counts = std::move(counts);
  o.artifacts = {"verdicts.csv"};
  return o;
}

std::map<std::string, verdict::Code> read_verdicts(const RunConfig& cfg) {
  require_artifact(cfg, "verdicts.csv", "verdicts");
  std::map<std::string, verdict::Code> verdicts;
  auto rows = read_csv(art(cfg, "verdicts.csv"));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() < 3 || rows[i][2].empty()) continue;
    if (auto code = verdict::code_from_string(rows[i][2])) verdicts[rows[i][0]] = *code;
  }
  return verdicts;
}

StageOutcome stage_instances(const RunConfig& cfg) {
  auto store = load_filtered_corpus(cfg);
  auto verdicts = read_verdicts(cfg);
  auto parser = make_parser_checked(cfg);
  auto cleaner = load_cleaner(cfg);
  instance::RuleTripleExtractor triples;

  std::int64_t parsed = 0;
  std::vector<instance::Instance> kept;
  std::map<std::string, std::vector<std::string>> post_instances; // post -> instance ids
  for (const auto& [pid, post] : store.posts) {
    auto split = instance::split_instances(post, *parser);
    parsed += static_cast<std::int64_t>(split.size());
    for (auto& inst : instance::filter_instances(split)) {
      inst.clean_text = instance::clean_text(inst.raw_text, cleaner);
      post_instances[pid].push_back(inst.id);
      kept.push_back(std::move(inst));
    }
  }

  std::map<std::string, const instance::Instance*> by_id;
  for (const auto& inst : kept) by_id[inst.id] = &inst;

  // quote-to-instance matching decides the spark labels
  std::map<std::string, std::vector<std::string>> spark_quoters; // instance -> comment ids
  std::map<std::string, std::set<std::string>> comment_matches;  // comment -> instance ids
  for (const auto& [cid, c] : store.comments) {
    auto it = post_instances.find(c.link_id);
    if (it == post_instances.end()) continue;
    std::vector<std::pair<std::string, std::string>> candidates;
    for (const auto& iid : it->second) candidates.emplace_back(iid, by_id[iid]->raw_text);
    for (const auto& quote : corpus::extract_quotes(c.body)) {
      auto m = verdict::match_quote(quote, candidates, cfg.match_threshold);
      if (m.instance_id.empty()) continue;
      if (comment_matches[cid].insert(m.instance_id).second)
        spark_quoters[m.instance_id].push_back(cid);
    }
  }
  for (auto& [iid, quoters] : spark_quoters) std::sort(quoters.begin(), quoters.end());

  {
    auto out = open_out(art(cfg, "instances.jsonl"));
    for (const auto& inst : kept) {
      ordered_json toks = ordered_json::array();
      for (const auto& t : inst.tokens) toks.push_back(token_to_json(t));
      ordered_json j{{"id", inst.id},
                     {"post_id", inst.post_id},
                     {"raw_text", inst.raw_text},
                     {"clean_text", inst.clean_text},
                     {"tokens", toks}};
      out << j.dump() << "\n";
    }
  }
  std::int64_t n_triples = 0;
  {
    auto out = open_out(art(cfg, "triples.jsonl"));
    for (const auto& inst : kept) {
      auto t = triples.extract(inst);
      if (!t) continue;
      ++n_triples;
      ordered_json j{{"instance_id", inst.id},
                     {"subject", t->subject},
                     {"predicate", t->predicate},
                     {"object", t->object ? ordered_json(*t->object) : ordered_json(nullptr)},
                     {"passive", t->was_passive}};
      out << j.dump() << "\n";
    }
  }
  std::int64_t n_sparks = 0;
  {
    auto out = open_out(art(cfg, "spark_labels.csv"));
    out << "instance_id,is_spark,quoting_comment_ids\n";
    for (const auto& inst : kept) {
      auto it = spark_quoters.find(inst.id);
      const bool spark = it != spark_quoters.end();
      if (spark) ++n_sparks;
      out << inst.id << "," << (spark ? 1 : 0) << ","
          << (spark ? text::join(it->second, ";") : "") << "\n";
    }
  }
  std::int64_t n_blame = 0;
  {
    auto out = open_out(art(cfg, "blame_labels.csv"));
    out << "instance_id,comment_id,subject_is_author,verdict,blameworthy\n";
    for (const auto& inst : kept) {
      auto it = spark_quoters.find(inst.id);
      if (it == spark_quoters.end()) continue;
      // subject head token decides authorship of the blamed party
      bool subject_is_author = false;
      for (const auto& t : inst.tokens) {
        if (t.dep == "nsubj" || t.dep == "nsubjpass" || t.dep == "agent") {
          subject_is_author = instance::is_author_word(t.surface);
          break;
        }
      }
      for (const auto& cid : it->second) {
        auto vit = verdicts.find(cid);
        if (vit == verdicts.end()) continue;
        auto row = verdict::label_blame(inst.id, cid, subject_is_author, vit->second);
        if (!row) continue;
        ++n_blame;
        out << row->instance_id << "," << row->comment_id << ","
            << (row->subject_is_author ? 1 : 0) << "," << verdict::to_string(row->verdict)
            << "," << row->blameworthy << "\n";
      }
    }
  }

  StageOutcome o;
  o.counts["parse_instances"] = parsed;
  o.counts["select_suitable"] = static_cast<std::int64_t>(kept.size());
  o.counts["sparks"] = n_sparks;
  o.counts["triples"] = n_triples;
  o.counts["blame_rows"] = n_blame;
  o.backends["parser"] = parser->version();
  o.backends["triples"] = triples.version();
  o.artifacts = {"instances.jsonl", "triples.jsonl", "spark_labels.csv", "blame_labels.csv"};
  return o;
}

StageOutcome stage_align(const RunConfig& cfg) {
  auto instances = read_instances(cfg);
  auto sparks = read_spark_labels(cfg);
  auto parser = make_parser_checked(cfg);
  auto kgstore = load_kg(cfg, *parser);
  if (cfg.scorer_backend != "overlap")
    throw PipelineError(ErrorKind::Config, "unknown scorer backend: " + cfg.scorer_backend);
  kg::OverlapScorer scorer(kgstore.idf);

  std::int64_t aligned = 0, aligned_sparks = 0;
  auto out = open_out(art(cfg, "alignments.jsonl"));
  for (const auto& inst : instances) {
    auto res = kg::align(inst, kgstore, scorer, cfg.tfidf_threshold, cfg.topk_alignments);
    ordered_json top = ordered_json::array();
    for (const auto& s : res.ranked) {
      if (top.size() >= cfg.topk_alignments) break;
      top.push_back(ordered_json{{"event_id", s.event_id}, {"score", s.score}});
    }
    if (!res.top3.empty()) {
      ++aligned;
      if (sparks.count(inst.id) && sparks[inst.id]) ++aligned_sparks;
    }
    ordered_json j{{"instance_id", inst.id},
                   {"pool_size", res.candidate_pool.size()},
                   {"refined_size", res.refined_pool.size()},
                   {"top3", top}};
    out << j.dump() << "\n";
  }

  StageOutcome o;
  o.counts["instances"] = static_cast<std::int64_t>(instances.size());
  o.counts["align_instances"] = aligned;
  o.counts["align_sparks"] = aligned_sparks;
  o.counts["kg_events"] = static_cast<std::int64_t>(kgstore.events.size());
  o.backends["scorer"] = scorer.version();
  o.backends["parser"] = parser->version();
  o.artifacts = {"alignments.jsonl"};
  return o;
}

StageOutcome stage_cluster(const RunConfig& cfg) {
  auto records = read_alignments(cfg);
  auto parser = make_parser_checked(cfg);
  auto kgstore = load_kg(cfg, *parser);

  std::vector<kg::AlignmentResult> alignments;
  for (const auto& r : records) {
    kg::AlignmentResult a;
    a.instance_id = r.instance_id;
    for (const auto& s : r.top3) a.top3.push_back(s.event_id);
    alignments.push_back(std::move(a));
  }
  auto events = cluster::frequency_filter(alignments, kgstore, cfg.min_event_count);
  if (events.empty())
    throw PipelineError(ErrorKind::Data, "no c-events reach the frequency threshold");

  if (cfg.embedder_backend != "hash")
    throw PipelineError(ErrorKind::Config, "unknown embedder backend: " + cfg.embedder_backend);
  cluster::HashEmbedding embedder(cfg.embed_dim, cfg.seed);
  Eigen::MatrixXd m = cluster::embed_events(events, embedder);

  const int n = static_cast<int>(events.size());
  cluster::SearchSpace space;
  const int lo = std::max(2, cfg.tune_min_cluster_lo);
  const int hi = std::max(lo, std::min(cfg.tune_min_cluster_hi, std::max(2, n - 1)));
  const int mid = (lo + hi) / 2;
  std::set<int> mcs_set{lo, mid, hi};
  for (int nc : {2, 3}) {
    if (nc > cfg.embed_dim || nc >= n) continue;
    for (int mcs : mcs_set)
      for (int ms : {1, 2})
        space.discrete.push_back({15, nc, mcs, ms});
  }
  if (space.discrete.empty()) space.discrete.push_back({15, 1, std::min(lo, n), 1});

  std::vector<int> labels;
  double dbcv = -1.0;
  std::int64_t fallback = 0;
  std::vector<cluster::TuneEval> log;
  cluster::ParamPoint best;
  try {
    auto tr = cluster::tune_hyperparams(m, space, cfg.tune_budget, cfg.seed);
    labels = tr.best_labels;
    dbcv = tr.best_dbcv;
    log = tr.log;
    best = tr.best;
  } catch (const cluster::ClusterError&) {
    // no parameter setting produced two clusters; keep one cluster of everything
    labels.assign(events.size(), 0);
    fallback = 1;
  }

  {
    auto out = open_out(art(cfg, "clusters.csv"));
    out << "event_id,cluster_id,frequency\n";
    for (std::size_t i = 0; i < events.size(); ++i)
      out << events[i].id << "," << labels[i] << "," << events[i].frequency << "\n";
  }
  {
    auto out = open_out(art(cfg, "tuning_log.csv"));
    out << "n_neighbors,n_components,min_cluster_size,min_samples,dbcv\n";
    for (const auto& e : log)
      out << e.params.n_neighbors << "," << e.params.n_components << ","
          << e.params.min_cluster_size << "," << e.params.min_samples << ","
          << report::format_value(e.dbcv) << "\n";
  }

  std::set<int> cluster_ids;
  std::int64_t noise = 0;
  for (int l : labels) {
    if (l < 0) ++noise;
    else cluster_ids.insert(l);
  }

  StageOutcome o;
  o.counts["events"] = n;
  o.counts["clusters"] = static_cast<std::int64_t>(cluster_ids.size());
  o.counts["noise_events"] = noise;
  o.counts["tuning_fallback"] = fallback;
  o.metrics["dbcv"] = dbcv;
  o.metrics["best_n_components"] = best.n_components;
  o.metrics["best_min_cluster_size"] = best.min_cluster_size;
  o.metrics["best_min_samples"] = best.min_samples;
  o.backends["embedder"] = embedder.version();
  o.artifacts = {"clusters.csv", "tuning_log.csv"};
  return o;
}

StageOutcome stage_features(const RunConfig& cfg) {
  auto instances = read_instances(cfg);
  features::LexiconSet lex;
  try {
    lex = features::LexiconSet::load(cfg.lexicon_dir);
  } catch (const std::exception& e) {
    throw PipelineError(ErrorKind::Data, e.what());
  }
  if (cfg.sentiment_backend != "lexicon")
    throw PipelineError(ErrorKind::Config, "unknown sentiment backend: " + cfg.sentiment_backend);
  features::LexiconSentiment scorer;

  std::vector<features::FeatureVector> vectors;
  std::vector<std::vector<instance::CharacterMention>> mention_sets;
  for (const auto& inst : instances) {
    auto mentions = instance::extract_characters(inst);
    auto fv = features::build_feature_vector(inst, mentions, lex, scorer);
    fv.sentiment_category =
        features::sentiment_category(fv.sentiment_compound, cfg.sentiment_neg, cfg.sentiment_pos);
    vectors.push_back(std::move(fv));
    mention_sets.push_back(std::move(mentions));
  }

  // post features share a key set; collect the union to be safe
  std::set<std::string> post_keys;
  for (const auto& fv : vectors)
    for (const auto& [k, v] : fv.post_features) post_keys.insert(k);
  {
    auto out = open_out(art(cfg, "features.csv"));
    out << "instance_id,word_count";
    for (const auto& k : post_keys) out << "," << k;
    out << ",sentiment_compound,sentiment_category\n";
    for (const auto& fv : vectors) {
      out << fv.instance_id << "," << fv.word_count;
      for (const auto& k : post_keys) {
        auto it = fv.post_features.find(k);
        out << "," << report::format_value(it == fv.post_features.end() ? 0.0 : it->second);
      }
      out << "," << report::format_value(fv.sentiment_compound) << "," << fv.sentiment_category
          << "\n";
    }
  }
  std::set<std::string> cha_keys;
  for (const auto& fv : vectors)
    for (const auto& [cha, feats] : fv.cha_features)
      for (const auto& [k, v] : feats) cha_keys.insert(k);
  std::int64_t cha_rows = 0;
  {
    auto out = open_out(art(cfg, "cha_features.csv"));
    out << "instance_id,character,is_author";
    for (const auto& k : cha_keys) out << "," << k;
    out << ",power,agency\n";
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      const auto& fv = vectors[i];
      std::set<std::string> author_surfaces;
      for (const auto& m : mention_sets[i])
        if (m.is_author) author_surfaces.insert(m.surface);
      for (const auto& [cha, feats] : fv.cha_features) {
        ++cha_rows;
        out << fv.instance_id << "," << cha << "," << (author_surfaces.count(cha) ? 1 : 0);
        for (const auto& k : cha_keys) {
          auto it = feats.find(k);
          out << "," << report::format_value(it == feats.end() ? 0.0 : it->second);
        }
        auto pit = fv.power_flag.find(cha);
        auto ait = fv.agency_flag.find(cha);
        out << "," << (pit == fv.power_flag.end() ? 0 : pit->second) << ","
            << (ait == fv.agency_flag.end() ? 0 : ait->second) << "\n";
      }
    }
  }

  StageOutcome o;
  o.counts["instances"] = static_cast<std::int64_t>(instances.size());
  o.counts["post_feature_columns"] = static_cast<std::int64_t>(post_keys.size());
  o.counts["character_rows"] = cha_rows;
  o.backends["sentiment"] = scorer.version();
  o.artifacts = {"features.csv", "cha_features.csv"};
  return o;
}

StageOutcome stage_regress(const RunConfig& cfg) {
  require_artifact(cfg, "features.csv", "features");
  require_artifact(cfg, "clusters.csv", "cluster");
  require_artifact(cfg, "blame_labels.csv", "instances");
  auto alignments = read_alignments(cfg);
  auto sparks = read_spark_labels(cfg);

  // clustered (non-noise) c-events with their frequency
  auto cluster_rows = read_csv(art(cfg, "clusters.csv"));
  std::map<std::string, int> cluster_of;
  std::map<std::string, std::int64_t> event_freq;
  for (std::size_t i = 1; i < cluster_rows.size(); ++i) {
    const int cl = std::stoi(cluster_rows[i][1]);
    event_freq[cluster_rows[i][0]] = std::stoll(cluster_rows[i][2]);
    if (cl >= 0) cluster_of[cluster_rows[i][0]] = cl;
  }

  std::map<std::string, std::set<std::string>> top3_of; // instance -> aligned events
  for (const auto& r : alignments)
    for (const auto& s : r.top3) top3_of[r.instance_id].insert(s.event_id);

  // observation = instance with a non-empty alignment; its domain is the
  // cluster of the best-ranked clustered event (noise-only alignments code
  // like the reference category)
  struct Obs {
    std::string instance_id;
    int domain = -1;
    double y = 0.0;
  };
  std::vector<Obs> obs;
  for (const auto& r : alignments) {
    if (r.top3.empty()) continue;
    Obs ob;
    ob.instance_id = r.instance_id;
    for (const auto& s : r.top3) {
      auto it = cluster_of.find(s.event_id);
      if (it != cluster_of.end()) {
        ob.domain = it->second;
        break;
      }
    }
    ob.y = sparks.count(r.instance_id) && sparks[r.instance_id] ? 1.0 : 0.0;
    obs.push_back(std::move(ob));
  }
  if (obs.size() < 3)
    throw PipelineError(ErrorKind::Data, "too few aligned instances for regression");
  const Eigen::Index n = static_cast<Eigen::Index>(obs.size());

  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = obs[static_cast<std::size_t>(i)].y;

  // dummies with the most frequent domain as reference; constant columns dropped
  std::map<int, std::int64_t> domain_freq;
  for (const auto& ob : obs)
    if (ob.domain >= 0) ++domain_freq[ob.domain];
  int reference = -1;
  std::int64_t best_freq = -1;
  for (const auto& [d, f] : domain_freq)
    if (f > best_freq) {
      best_freq = f;
      reference = d;
    }
  std::vector<int> dummy_domains;
  for (const auto& [d, f] : domain_freq)
    if (d != reference && f > 0 && f < static_cast<std::int64_t>(obs.size()))
      dummy_domains.push_back(d);
  Eigen::MatrixXd dummies(n, static_cast<Eigen::Index>(dummy_domains.size()));
  for (std::size_t c = 0; c < dummy_domains.size(); ++c)
    for (Eigen::Index i = 0; i < n; ++i)
      dummies(i, static_cast<Eigen::Index>(c)) =
          obs[static_cast<std::size_t>(i)].domain == dummy_domains[c] ? 1.0 : 0.0;

  std::map<std::string, std::int64_t> frequencies; // per screened feature, for reporting

  // screen 1: c-event presence indicators
  std::vector<std::string> ce_names;
  std::vector<const std::string*> ce_ids;
  for (const auto& [eid, cl] : cluster_of) {
    ce_names.push_back("cevent:" + eid);
    ce_ids.push_back(&eid);
  }
  Eigen::MatrixXd ce_cols(n, static_cast<Eigen::Index>(ce_names.size()));
  for (std::size_t c = 0; c < ce_ids.size(); ++c)
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& inst = obs[static_cast<std::size_t>(i)].instance_id;
      ce_cols(i, static_cast<Eigen::Index>(c)) = top3_of[inst].count(*ce_ids[c]) ? 1.0 : 0.0;
    }
  for (std::size_t c = 0; c < ce_names.size(); ++c)
    frequencies[ce_names[c]] = event_freq[*ce_ids[c]];
  auto ce_results = stats::run_feature_screen(ce_names, ce_cols, dummies, y, cfg.alpha);

  // screen 2: linguistic features over the same observations
  auto frows = read_csv(art(cfg, "features.csv"));
  const auto& fheader = frows[0];
  std::map<std::string, std::size_t> inst_row;
  for (std::size_t i = 1; i < frows.size(); ++i) inst_row[frows[i][0]] = i;
  std::vector<std::string> ling_names;
  std::vector<std::size_t> ling_cols_idx;
  for (std::size_t c = 2; c < fheader.size(); ++c) {
    if (fheader[c] == "sentiment_category") continue;
    ling_names.push_back("ling:" + fheader[c]);
    ling_cols_idx.push_back(c);
  }
  Eigen::MatrixXd ling_cols(n, static_cast<Eigen::Index>(ling_names.size()));
  for (Eigen::Index i = 0; i < n; ++i) {
    auto rit = inst_row.find(obs[static_cast<std::size_t>(i)].instance_id);
    if (rit == inst_row.end())
      throw PipelineError(ErrorKind::Data,
                          "features.csv lacks instance " + obs[static_cast<std::size_t>(i)].instance_id);
    for (std::size_t c = 0; c < ling_cols_idx.size(); ++c)
      ling_cols(i, static_cast<Eigen::Index>(c)) = std::stod(frows[rit->second][ling_cols_idx[c]]);
  }
  for (std::size_t c = 0; c < ling_names.size(); ++c) {
    std::int64_t nonzero = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (ling_cols(i, static_cast<Eigen::Index>(c)) != 0.0) ++nonzero;
    frequencies[ling_names[c]] = nonzero;
  }
  auto ling_results = stats::run_feature_screen(ling_names, ling_cols, dummies, y, cfg.alpha);

  {
    auto out = open_out(art(cfg, "regression_results.csv"));
    out << "feature,beta,se,z,p,p_adjusted,odds_ratio,n_obs,error\n";
    auto dump = [&](const std::vector<stats::RegressionResult>& rs) {
      for (const auto& r : rs) {
        out << r.feature << ",";
        if (r.error.empty())
          out << report::format_value(r.beta) << "," << report::format_value(r.se) << ","
              << report::format_value(r.z) << "," << report::format_value(r.p) << ","
              << report::format_value(r.p_adjusted) << "," << report::format_value(r.odds_ratio);
        else
          out << ",,,,,";
        out << "," << r.n_obs << ",";
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        out << err << "\n";
      }
    };
    dump(ce_results);
    dump(ling_results);
  }
  {
    auto out = open_out(art(cfg, "screen_frequencies.csv"));
    out << "feature,frequency\n";
    for (const auto& [f, freq] : frequencies) out << f << "," << freq << "\n";
  }

  // judgment correlations: c-event presence vs blameworthiness over quote rows
  auto blame_rows = read_csv(art(cfg, "blame_labels.csv"));
  std::int64_t n_corr = 0;
  {
    auto out = open_out(art(cfg, "correlation_results.csv"));
    out << "cevent_id,rho,p,n\n";
    for (const auto& [eid, cl] : cluster_of) {
      std::vector<double> x, yb;
      for (std::size_t i = 1; i < blame_rows.size(); ++i) {
        const auto& iid = blame_rows[i][0];
        auto tit = top3_of.find(iid);
        if (tit == top3_of.end() || tit->second.empty()) continue;
        x.push_back(tit->second.count(eid) ? 1.0 : 0.0);
        yb.push_back(std::stod(blame_rows[i][4]));
      }
      if (x.size() < 3) continue;
      std::optional<stats::CorrelationResult> r;
      try {
        r = stats::spearman(x, yb);
      } catch (const stats::StatsError&) {
        continue;
      }
      if (!r) continue;
      ++n_corr;
      out << eid << "," << report::format_value(r->statistic) << ","
          << report::format_value(r->p) << "," << x.size() << "\n";
    }
  }

  StageOutcome o;
  o.counts["observations"] = static_cast<std::int64_t>(obs.size());
  o.counts["cevent_features"] = static_cast<std::int64_t>(ce_names.size());
  o.counts["linguistic_features"] = static_cast<std::int64_t>(ling_names.size());
  o.counts["domain_dummies"] = static_cast<std::int64_t>(dummy_domains.size());
  o.counts["correlations"] = n_corr;
  o.artifacts = {"regression_results.csv", "screen_frequencies.csv", "correlation_results.csv"};
  return o;
}

StageOutcome stage_report(const RunConfig& cfg) {
  require_artifact(cfg, "regression_results.csv", "regress");
  require_artifact(cfg, "screen_frequencies.csv", "regress");
  require_artifact(cfg, "correlation_results.csv", "regress");
  require_artifact(cfg, "filter_log.csv", "ingest");
  auto parser = make_parser_checked(cfg);
  auto kgstore = load_kg(cfg, *parser);

  std::map<std::string, std::int64_t> frequencies;
  for (auto& row : read_csv(art(cfg, "screen_frequencies.csv")))
    if (row.size() == 2 && row[0] != "feature") frequencies[row[0]] = std::stoll(row[1]);

  auto label_for = [&](const std::string& feature) {
    if (feature.rfind("cevent:", 0) == 0) {
      const std::string eid = feature.substr(7);
      auto it = kgstore.events.find(eid);
      if (it != kgstore.events.end())
        return report::cevent_label(it->second.text, it->second.attributes);
      return eid;
    }
    return feature.substr(feature.find(':') + 1);
  };

  std::vector<report::OrChartRow> ce_rows, ling_rows;
  for (auto& row : read_csv(art(cfg, "regression_results.csv"))) {
    if (row.size() < 9 || row[0] == "feature" || !row[8].empty() || row[1].empty()) continue;
    report::OrChartRow r;
    r.label = label_for(row[0]);
    r.odds_ratio = std::stod(row[6]);
    r.p = std::stod(row[4]);
    r.frequency = static_cast<std::size_t>(frequencies.count(row[0]) ? frequencies[row[0]] : 0);
    (row[0].rfind("cevent:", 0) == 0 ? ce_rows : ling_rows).push_back(std::move(r));
  }
  report::emit_or_chart_data(ce_rows, 30, art(cfg, "or_chart.csv"), art(cfg, "or_chart.svg"));
  report::emit_or_chart_data(ling_rows, 30, art(cfg, "ling_chart.csv"),
                             art(cfg, "ling_chart.svg"));

  std::vector<report::BlameRow> blame;
  for (auto& row : read_csv(art(cfg, "correlation_results.csv"))) {
    if (row.size() < 4 || row[0] == "cevent_id") continue;
    report::BlameRow r;
    r.cevent_id = row[0];
    r.label = label_for("cevent:" + row[0]);
    r.rho = std::stod(row[1]);
    r.p = std::stod(row[2]);
    r.n = static_cast<std::size_t>(std::stoull(row[3]));
    blame.push_back(std::move(r));
  }
  report::emit_blame_table(blame, art(cfg, "blame_table.csv"), art(cfg, "blame_table.svg"));

  // collection and instance funnels side by side
  ordered_json manifest = load_manifest(cfg);
  auto stage_count = [&](const std::string& stage, const std::string& key) -> std::int64_t {
    for (const auto& s : manifest["stages"])
      if (s.value("stage", "") == stage && s["counts"].contains(key))
        return s["counts"][key].get<std::int64_t>();
    return -1;
  };
  {
    auto out = open_out(art(cfg, "stage_log.csv"));
    out << "table,stage,count_a,count_b\n";
    for (auto& row : read_csv(art(cfg, "filter_log.csv")))
      if (row.size() == 3 && row[0] != "stage")
        out << "collection," << row[0] << "," << row[1] << "," << row[2] << "\n";
    out << "instances,parse_instances," << stage_count("instances", "parse_instances") << ",\n";
    out << "instances,select_suitable," << stage_count("instances", "select_suitable") << ","
        << stage_count("instances", "sparks") << "\n";
    out << "instances,align_instances," << stage_count("align", "align_instances") << ","
        << stage_count("align", "align_sparks") << "\n";
  }

  StageOutcome o;
  o.counts["or_chart_rows"] = static_cast<std::int64_t>(ce_rows.size());
  o.counts["ling_chart_rows"] = static_cast<std::int64_t>(ling_rows.size());
  o.counts["blame_rows"] = static_cast<std::int64_t>(blame.size());
  o.artifacts = {"or_chart.csv", "or_chart.svg",    "ling_chart.csv", "ling_chart.svg",
                 "blame_table.csv", "blame_table.svg", "stage_log.csv"};
  return o;
}

// single orchestrator process per output directory
class OutDirLock {
public:
  explicit OutDirLock(const std::string& out_dir) : path_(fs::path(out_dir) / ".spark.lock") {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (fs::exists(path_))
      throw PipelineError(ErrorKind::Stage,
                          "output directory locked by another run: " + path_.string());
    std::ofstream out(path_);
    out << "locked\n";
  }
  ~OutDirLock() {
    std::error_code ec;
    fs::remove(path_, ec);
  }

private:
  fs::path path_;
};

void run_stage_impl(const std::string& name, const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  StageOutcome o;
  if (name == "ingest") o = stage_ingest(cfg);
  else if (name == "verdicts") o = stage_verdicts(cfg);
  else if (name == "instances") o = stage_instances(cfg);
  else if (name == "align") o = stage_align(cfg);
  else if (name == "cluster") o = stage_cluster(cfg);
  else if (name == "features") o = stage_features(cfg);
  else if (name == "regress") o = stage_regress(cfg);
  else if (name == "report") o = stage_report(cfg);
  else throw PipelineError(ErrorKind::Config, "unknown stage: " + name);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  record_stage(cfg, name, o.counts, o.metrics, o.backends, o.artifacts, wall_ms);
}

} // namespace

const std::vector<std::string> kStageOrder = {"ingest", "verdicts", "instances", "align",
                                              "cluster", "features", "regress", "report"};

RunConfig RunConfig::load(const std::string& path,
                          const std::map<std::string, std::string>& cli_overrides) {
  RunConfig cfg;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw PipelineError(ErrorKind::Config, "cannot read config file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string t = text::trim(line);
      if (t.empty() || t[0] == '#') continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        throw PipelineError(ErrorKind::Config,
                            "bad config line " + std::to_string(lineno) + ": " + t);
      const std::string key = text::trim(t.substr(0, eq));
      const std::string value = text::trim(t.substr(eq + 1));
      if (!apply_key(cfg, key, value))
        throw PipelineError(ErrorKind::Config, "unknown config key: " + key);
    }
  }
  for (const auto& key : config_keys()) {
    std::string env_name = "SPARK_";
    for (char ch : key) env_name += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (const char* v = std::getenv(env_name.c_str())) apply_key(cfg, key, v);
  }
  for (const auto& [key, value] : cli_overrides)
    if (!apply_key(cfg, key, value))
      throw PipelineError(ErrorKind::Config, "unknown config key: " + key);
  return cfg;
}

void RunConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0))
      throw PipelineError(ErrorKind::Config, std::string("threshold must be positive: ") + name);
  };
  positive(static_cast<double>(min_words_post), "min_words_post");
  positive(static_cast<double>(min_top_comments), "min_top_comments");
  positive(static_cast<double>(min_words_comment), "min_words_comment");
  positive(tfidf_threshold, "tfidf_threshold");
  positive(static_cast<double>(topk_alignments), "topk_alignments");
  positive(static_cast<double>(min_event_count), "min_event_count");
  positive(match_threshold, "match_threshold");
  positive(alpha, "alpha");
  positive(static_cast<double>(embed_dim), "embed_dim");
  if (!(sentiment_neg < sentiment_pos))
    throw PipelineError(ErrorKind::Config, "sentiment_neg must be below sentiment_pos");
  for (const auto& [name, p] :
       std::vector<std::pair<const char*, const std::string*>>{{"corpus_posts", &corpus_posts},
                                                               {"corpus_comments", &corpus_comments},
                                                               {"kg_path", &kg_path},
                                                               {"lexicon_dir", &lexicon_dir}}) {
    if (p->empty())
      throw PipelineError(ErrorKind::Config, std::string("missing required path: ") + name);
    if (!fs::exists(*p))
      throw PipelineError(ErrorKind::Config, std::string("path does not exist: ") + *p);
  }
  for (const std::string& p : {data_dir, cluster_names_path})
    if (!p.empty() && !fs::exists(p))
      throw PipelineError(ErrorKind::Config, "path does not exist: " + p);
  if (out_dir.empty()) throw PipelineError(ErrorKind::Config, "out_dir must be set");
}

void run_stage(const std::string& name, const RunConfig& config) {
  config.validate();
  OutDirLock lock(config.out_dir);
  run_stage_impl(name, config);
}

void run_all(const RunConfig& config) {
  config.validate();
  OutDirLock lock(config.out_dir);
  for (const auto& name : kStageOrder) run_stage_impl(name, config);
}

} // namespace spark::pipeline
