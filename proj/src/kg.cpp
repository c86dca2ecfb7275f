#include "spark/kg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "spark/text.hpp"

namespace spark::kg {

namespace {

std::string event_id_for(std::size_t ordinal) {
  return "e" + std::to_string(ordinal);
}

std::map<std::string, double> build_idf(const KGStore& kg) {
  std::map<std::string, std::size_t> df;
  for (const auto& [id, ev] : kg.events) {
    std::set<std::string> seen;
    for (const auto& tok : text::alnum_tokens(ev.text)) seen.insert(tok);
    for (const auto& tok : seen) ++df[tok];
  }
  const double n = static_cast<double>(kg.events.size());
  std::map<std::string, double> idf;
  for (const auto& [tok, d] : df)
    idf[tok] = std::log((1.0 + n) / (1.0 + static_cast<double>(d))) + 1.0;
  return idf;
}

} // namespace

KGStore load_atomic(const std::string& path, const parse::ParserBackend& parser) {
  std::ifstream in(path);
  if (!in) throw KGError("cannot read ATOMIC file: " + path);
  KGStore kg;
  std::map<std::string, std::string> head_to_id;
  std::size_t malformed = 0, xattr_rows = 0, ordinal = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() < 3) { ++malformed; continue; }
    const std::string head = text::trim(cols[0]);
    const std::string rel = text::trim(cols[1]);
    const std::string tail = text::trim(cols[2]);
    if (rel != "xAttr") continue;
    if (head.empty() || tail.empty()) { ++malformed; continue; }
    ++xattr_rows;
    auto it = head_to_id.find(head);
    if (it == head_to_id.end()) {
      CEvent ev;
      ev.id = event_id_for(ordinal++);
      ev.text = head;
      for (const auto& t : parser.annotate(head))
        if (t.pos == "VERB") ev.verb_lemmas.insert(t.lemma);
      it = head_to_id.emplace(head, ev.id).first;
      kg.events.emplace(ev.id, std::move(ev));
    }
    CEvent& ev = kg.events.at(it->second);
    if (std::find(ev.attributes.begin(), ev.attributes.end(), tail) == ev.attributes.end())
      ev.attributes.push_back(tail);
  }
  if (xattr_rows == 0) throw KGError("no xAttr rows in " + path);
  for (const auto& [id, ev] : kg.events)
    for (const auto& v : ev.verb_lemmas) kg.verb_index[v].push_back(id);
  for (auto& [v, ids] : kg.verb_index) std::sort(ids.begin(), ids.end());
  kg.idf = build_idf(kg);
  (void)malformed;
  return kg;
}

std::vector<std::string> coarse_filter(const instance::Instance& inst, const KGStore& kg) {
  std::set<std::string> pool;
  for (const auto& v : inst.verb_lemmas()) {
    auto it = kg.verb_index.find(v);
    if (it == kg.verb_index.end()) continue;
    pool.insert(it->second.begin(), it->second.end());
  }
  return {pool.begin(), pool.end()};
}

Eigen::MatrixXd tfidf_vectors(const std::vector<std::string>& texts) {
  std::vector<std::vector<std::string>> docs;
  docs.reserve(texts.size());
  bool any_token = false;
  for (const auto& t : texts) {
    docs.push_back(text::alnum_tokens(t));
    if (!docs.back().empty()) any_token = true;
  }
  if (texts.empty() || !any_token) throw KGError("tfidf: no terms in corpus");

  std::map<std::string, int> vocab;
  std::map<std::string, int> df;
  for (const auto& d : docs) {
    std::set<std::string> seen(d.begin(), d.end());
    for (const auto& t : seen) {
      ++df[t];
      vocab.emplace(t, 0);
    }
  }
  int v = 0;
  for (auto& [tok, idx] : vocab) idx = v++;

  const double n = static_cast<double>(docs.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(docs.size()), v);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (const auto& tok : docs[i]) m(static_cast<Eigen::Index>(i), vocab[tok]) += 1.0;
    for (const auto& [tok, idx] : vocab) {
      if (m(static_cast<Eigen::Index>(i), idx) == 0.0) continue;
      const double idf = std::log((1.0 + n) / (1.0 + df[tok])) + 1.0;
      m(static_cast<Eigen::Index>(i), idx) *= idf;
    }
    const double norm = m.row(static_cast<Eigen::Index>(i)).norm();
    if (norm > 0) m.row(static_cast<Eigen::Index>(i)) /= norm;
  }
  return m;
}

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

std::vector<std::string> refine_pool(const std::vector<std::string>& pool, const KGStore& kg,
                                     double threshold) {
  if (pool.empty()) return {};
  std::vector<std::string> texts;
  texts.reserve(pool.size());
  for (const auto& id : pool) texts.push_back(kg.events.at(id).text);

  Eigen::MatrixXd m = tfidf_vectors(texts);
  const std::size_t n = pool.size();

  // union-find single linkage over the cosine >= threshold graph
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (cosine(m.row(static_cast<Eigen::Index>(i)).transpose(),
                 m.row(static_cast<Eigen::Index>(j)).transpose()) >= threshold)
        parent[find(i)] = find(j);

  std::map<std::size_t, std::size_t> representative; // group root -> member index
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t g = find(i);
    auto it = representative.find(g);
    if (it == representative.end()) {
      representative[g] = i;
      continue;
    }
    const std::string& cur = texts[it->second];
    const std::string& cand = texts[i];
    if (cand.size() > cur.size() || (cand.size() == cur.size() && cand < cur))
      it->second = i;
  }

  std::vector<std::string> out;
  for (const auto& [g, idx] : representative) out.push_back(pool[idx]);
  std::sort(out.begin(), out.end());
  return out;
}

OverlapScorer::OverlapScorer(std::map<std::string, double> idf) : idf_(std::move(idf)) {}

double OverlapScorer::score(const std::string& instance_text,
                            const std::string& candidate_text) const {
  auto weight = [&](const std::string& tok) {
    auto it = idf_.find(tok);
    return it == idf_.end() ? 1.0 : it->second;
  };
  std::set<std::string> inst_toks, cand_toks;
  for (const auto& t : text::alnum_tokens(instance_text)) inst_toks.insert(t);
  for (const auto& t : text::alnum_tokens(candidate_text)) cand_toks.insert(t);
  if (inst_toks.empty() || cand_toks.empty()) return 0.0;

  double p_num = 0, p_den = 0, r_num = 0, r_den = 0;
  for (const auto& t : cand_toks) {
    const double w = weight(t);
    p_den += w;
    if (inst_toks.count(t)) p_num += w;
  }
  for (const auto& t : inst_toks) {
    const double w = weight(t);
    r_den += w;
    if (cand_toks.count(t)) r_num += w;
  }
  const double p = p_den > 0 ? p_num / p_den : 0.0;
  const double r = r_den > 0 ? r_num / r_den : 0.0;
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

std::vector<ScoredEvent> semantic_rank(const instance::Instance& inst,
                                       const std::vector<std::string>& refined_pool,
                                       const KGStore& kg, const SemanticScorer& scorer) {
  std::vector<ScoredEvent> out;
  out.reserve(refined_pool.size());
  for (const auto& id : refined_pool)
    out.push_back({id, scorer.score(inst.clean_text, kg.events.at(id).text)});
  std::sort(out.begin(), out.end(), [&](const ScoredEvent& a, const ScoredEvent& b) {
    if (a.score != b.score) return a.score > b.score;
    const auto& ea = kg.events.at(a.event_id);
    const auto& eb = kg.events.at(b.event_id);
    if (ea.frequency != eb.frequency) return ea.frequency > eb.frequency;
    return a.event_id < b.event_id;
  });
  return out;
}

AlignmentResult align(const instance::Instance& inst, const KGStore& kg,
                      const SemanticScorer& scorer, double tfidf_threshold,
                      std::size_t topk) {
  AlignmentResult r;
  r.instance_id = inst.id;
  r.candidate_pool = coarse_filter(inst, kg);
  r.refined_pool = refine_pool(r.candidate_pool, kg, tfidf_threshold);
  r.ranked = semantic_rank(inst, r.refined_pool, kg, scorer);
  const std::size_t k = std::min(topk, r.ranked.size());
  for (std::size_t i = 0; i < k; ++i) r.top3.push_back(r.ranked[i].event_id);
  return r;
}

} // namespace spark::kg
