#include "spark/corpus.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "spark/text.hpp"
#include <nlohmann/json.hpp>

namespace spark::corpus {

namespace {

using nlohmann::json;

bool parse_post(const json& j, Post& p) {
  if (!j.contains("id") || !j.contains("author_id") || !j.contains("body") ||
      !j.contains("title"))
    return false;
  p.id = j.at("id").get<std::string>();
  p.author_id = j.at("author_id").get<std::string>();
  p.created_utc = j.value("created_utc", std::int64_t{0});
  p.title = j.at("title").get<std::string>();
  p.body = j.at("body").get<std::string>();
  p.is_deleted = j.value("deleted", false) || p.author_id == "[deleted]";
  p.is_moderator = j.value("moderator", false);
  return true;
}

bool parse_comment(const json& j, Comment& c) {
  if (!j.contains("id") || !j.contains("link_id") || !j.contains("parent_id") ||
      !j.contains("author_id") || !j.contains("body"))
    return false;
  c.id = j.at("id").get<std::string>();
  c.link_id = j.at("link_id").get<std::string>();
  c.parent_id = j.at("parent_id").get<std::string>();
  c.author_id = j.at("author_id").get<std::string>();
  c.body = j.at("body").get<std::string>();
  c.is_deleted = j.value("deleted", false) || c.author_id == "[deleted]";
  c.is_moderator = j.value("moderator", false);
  c.vote_score = j.value("score", std::int64_t{0});
  return true;
}

std::string now_iso8601() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

bool is_quote_line(const std::string& line) {
  const std::string t = text::trim(line);
  return !t.empty() && t.front() == '>';
}

} // namespace

std::size_t CorpusStore::top_level_count(const std::string& post_id) const {
  std::size_t n = 0;
  for (const auto& [id, c] : comments)
    if (c.link_id == post_id && c.is_top_level()) ++n;
  return n;
}

CorpusStore load_corpus(const std::string& posts_path, const std::string& comments_path) {
  CorpusStore store;
  store.provenance.source_path = posts_path + ";" + comments_path;
  store.provenance.load_timestamp = now_iso8601();

  std::size_t total_lines = 0, malformed = 0;
  std::vector<std::size_t> bad_lines;

  auto ingest = [&](const std::string& path, bool is_posts) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot read corpus file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (text::trim(line).empty()) continue;
      ++total_lines;
      json j = json::parse(line, nullptr, false);
      bool ok = !j.is_discarded();
      if (ok) {
        if (is_posts) {
          Post p;
          ok = parse_post(j, p);
          if (ok) store.posts[p.id] = std::move(p);
        } else {
          Comment c;
          ok = parse_comment(j, c);
          if (ok) store.comments[c.id] = std::move(c);
        }
      }
      if (!ok) {
        ++malformed;
        bad_lines.push_back(lineno);
        store.provenance.load_warnings.push_back("malformed line " + std::to_string(lineno) +
                                                 " in " + path);
      }
    }
  };

  ingest(posts_path, true);
  ingest(comments_path, false);

  if (total_lines > 0 && 10 * malformed > total_lines) {
    std::ostringstream msg;
    msg << "more than 10% malformed lines (" << malformed << "/" << total_lines
        << "); lines:";
    for (auto ln : bad_lines) msg << " " << ln;
    throw CorpusError(msg.str());
  }
  store.provenance.malformed_lines = malformed;

  // Referential integrity: every comment's link_id must resolve.
  for (auto it = store.comments.begin(); it != store.comments.end();) {
    if (!store.posts.count(it->second.link_id)) {
      store.provenance.load_warnings.push_back("dangling reference: comment " +
                                               it->first + " -> " + it->second.link_id);
      ++store.provenance.dangling_comments;
      it = store.comments.erase(it);
    } else {
      ++it;
    }
  }
  return store;
}

CorpusStore filter_posts(const CorpusStore& store, std::size_t min_words,
                         std::size_t min_top_comments) {
  CorpusStore out;
  out.provenance = store.provenance;
  out.filter_log = store.filter_log;
  for (const auto& [id, p] : store.posts) {
    if (p.is_deleted || p.is_moderator) continue;
    if (text::word_count(p.body) < min_words) continue;
    if (store.top_level_count(id) < min_top_comments) continue;
    out.posts[id] = p;
  }
  for (const auto& [id, c] : store.comments)
    if (out.posts.count(c.link_id)) out.comments[id] = c;
  out.filter_log.push_back({"rule_based_collection", out.posts.size(), out.comments.size()});
  return out;
}

CorpusStore filter_comments(const CorpusStore& store, std::size_t min_words,
                            const VerdictFn& has_verdict) {
  CorpusStore out;
  out.provenance = store.provenance;
  out.filter_log = store.filter_log;
  for (const auto& [id, c] : store.comments) {
    if (!c.is_top_level() || c.is_deleted || c.is_moderator) continue;
    if (text::word_count(c.body) < min_words) continue;
    if (!has_verdict(c.body)) continue;
    out.comments[id] = c;
  }
  for (const auto& [id, p] : store.posts) {
    bool any = false;
    for (const auto& [cid, c] : out.comments)
      if (c.link_id == id) { any = true; break; }
    if (any) out.posts[id] = p;
  }
  // drop comments whose post fell out
  for (auto it = out.comments.begin(); it != out.comments.end();)
    it = out.posts.count(it->second.link_id) ? std::next(it) : out.comments.erase(it);
  out.filter_log.push_back({"comment_quality_filter", out.posts.size(), out.comments.size()});
  return out;
}

CorpusStore select_quoting_comments(const CorpusStore& store) {
  CorpusStore out;
  out.provenance = store.provenance;
  out.filter_log = store.filter_log;
  for (const auto& [id, c] : store.comments)
    if (has_quote_line(c.body)) out.comments[id] = c;
  for (const auto& [id, p] : store.posts) {
    bool any = false;
    for (const auto& [cid, c] : out.comments)
      if (c.link_id == id) { any = true; break; }
    if (any) out.posts[id] = p;
  }
  for (auto it = out.comments.begin(); it != out.comments.end();)
    it = out.posts.count(it->second.link_id) ? std::next(it) : out.comments.erase(it);
  out.filter_log.push_back({"quoting_comments_selection", out.posts.size(), out.comments.size()});
  return out;
}

bool has_quote_line(const std::string& body) {
  for (const auto& line : text::split_lines(body))
    if (is_quote_line(line)) return true;
  return false;
}

std::vector<std::string> extract_quotes(const std::string& comment_body) {
  std::vector<std::string> quotes;
  std::vector<std::string> run;
  auto flush = [&] {
    if (!run.empty()) {
      std::string q = text::join(run, " ");
      if (!q.empty()) quotes.push_back(std::move(q));
      run.clear();
    }
  };
  for (const auto& line : text::split_lines(comment_body)) {
    if (is_quote_line(line)) {
      std::string t = text::trim(line);
      while (!t.empty() && t[0] == '>') { // nested markers stripped too
        t.erase(0, 1);
        t = text::trim(t);
      }
      if (!t.empty()) run.push_back(std::move(t));
    } else {
      flush();
    }
  }
  flush();
  return quotes;
}

void write_filter_log_csv(const CorpusStore& store, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CorpusError("cannot write filter log: " + path);
  out << "stage,posts,comments\n";
  for (const auto& st : store.filter_log)
    out << st.stage << "," << st.n_posts << "," << st.n_comments << "\n";
}

} // namespace spark::corpus
