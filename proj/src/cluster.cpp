#include "spark/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "spark/text.hpp"

namespace spark::cluster {

namespace {

constexpr double kEps = 1e-12;

std::uint64_t fnv1a(const std::string& s, std::uint64_t seed) {
  std::uint64_t h = 14695981039346656037ULL ^ seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& pts) {
  const Eigen::Index n = pts.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = (pts.row(i) - pts.row(j)).norm();
    }
  }
  return d;
}

} // namespace

HashEmbedding::HashEmbedding(int dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
  if (dim <= 0) throw ClusterError("embedding dim must be positive");
}

std::string HashEmbedding::version() const {
  return "hash-embedding/d" + std::to_string(dim_) + "-s" + std::to_string(seed_);
}

Eigen::VectorXd HashEmbedding::embed(const std::string& txt) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim_);
  for (const auto& tok : text::alnum_tokens(txt)) {
    const std::uint64_t h = fnv1a(tok, seed_);
    const int idx = static_cast<int>(h % static_cast<std::uint64_t>(dim_));
    const double sign = ((h >> 32) & 1u) ? 1.0 : -1.0;
    v[idx] += sign;
  }
  const double norm = v.norm();
  if (norm > 0) v /= norm;
  return v;
}

std::vector<kg::CEvent> frequency_filter(const std::vector<kg::AlignmentResult>& alignments,
                                         const kg::KGStore& kg, std::size_t min_count) {
  std::map<std::string, std::size_t> freq;
  for (const auto& a : alignments)
    for (const auto& id : a.top3) ++freq[id];
  std::vector<kg::CEvent> out;
  for (const auto& [id, f] : freq) {
    if (f < min_count) continue;
    kg::CEvent ev = kg.events.at(id);
    ev.frequency = f;
    out.push_back(std::move(ev));
  }
  return out;
}

Eigen::MatrixXd embed_events(const std::vector<kg::CEvent>& events,
                             const EmbeddingBackend& embedder) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(events.size()), embedder.dim());
  for (std::size_t i = 0; i < events.size(); ++i) {
    Eigen::VectorXd v = embedder.embed(events[i].text);
    if (v.size() != embedder.dim())
      throw ClusterError("embedding dimension mismatch at row " + std::to_string(i));
    m.row(static_cast<Eigen::Index>(i)) = v.transpose();
  }
  return m;
}

Eigen::MatrixXd reduce_dims(const Eigen::MatrixXd& m, const ReduceParams& params,
                            std::uint64_t seed) {
  (void)seed; // PCA is deterministic; seed recorded for backend parity
  const Eigen::Index n = m.rows();
  if (n < params.n_neighbors + 1)
    throw ClusterError("reduce_dims needs at least n_neighbors + 1 = " +
                       std::to_string(params.n_neighbors + 1) + " rows, got " +
                       std::to_string(n));
  if (params.n_components <= 0 || params.n_components > m.cols())
    throw ClusterError("n_components must be in [1, input dim]");

  Eigen::RowVectorXd mean = m.colwise().mean();
  Eigen::MatrixXd centered = m.rowwise() - mean;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  Eigen::MatrixXd basis = svd.matrixV().leftCols(params.n_components);
  // deterministic sign: largest-magnitude loading positive
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    Eigen::Index imax = 0;
    basis.col(c).cwiseAbs().maxCoeff(&imax);
    if (basis(imax, c) < 0) basis.col(c) = -basis.col(c);
  }
  return centered * basis;
}

namespace {

struct DendroNode {
  int left = -1;
  int right = -1;
  double dist = 0.0;
  int size = 1;
};

struct CondensedEntry {
  int parent;    // condensed cluster id
  int child;     // point index (< n) or condensed cluster id offset by n
  double lambda;
  int size;
};

void collect_leaves(const std::vector<DendroNode>& nodes, int node, int n,
                    std::vector<int>& out) {
  std::vector<int> stack{node};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    if (cur < n) {
      out.push_back(cur);
    } else {
      stack.push_back(nodes[cur].left);
      stack.push_back(nodes[cur].right);
    }
  }
}

} // namespace

std::vector<int> hdbscan(const Eigen::MatrixXd& points, const HdbscanParams& params) {
  const int n = static_cast<int>(points.rows());
  const int mcs = std::max(2, params.min_cluster_size);
  const int ms = std::max(1, params.min_samples);
  if (n < mcs) throw ClusterError("hdbscan needs at least min_cluster_size rows");

  Eigen::MatrixXd dist = pairwise_distances(points);

  // degenerate all-identical input: one cluster
  if (dist.maxCoeff() < 1e-14) return std::vector<int>(n, 0);

  // core distances (self counts as the first neighbor)
  std::vector<double> core(n, 0.0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> d;
    d.reserve(n - 1);
    for (int j = 0; j < n; ++j)
      if (j != i) d.push_back(dist(i, j));
    std::sort(d.begin(), d.end());
    const int k = std::min<int>(ms - 1, static_cast<int>(d.size()) - 1);
    core[i] = ms <= 1 ? 0.0 : d[std::max(0, k)];
  }

  auto mreach = [&](int a, int b) {
    return std::max({core[a], core[b], dist(a, b)});
  };

  // Prim MST over mutual reachability
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<int> best_from(n, -1);
  struct Edge { int a, b; double w; };
  std::vector<Edge> mst;
  mst.reserve(n - 1);
  in_tree[0] = true;
  for (int j = 1; j < n; ++j) { best[j] = mreach(0, j); best_from[j] = 0; }
  for (int step = 1; step < n; ++step) {
    int pick = -1;
    double bw = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      if (!in_tree[j] && best[j] < bw) { bw = best[j]; pick = j; }
    in_tree[pick] = true;
    mst.push_back({best_from[pick], pick, bw});
    for (int j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double w = mreach(pick, j);
      if (w < best[j]) { best[j] = w; best_from[j] = pick; }
    }
  }
  std::sort(mst.begin(), mst.end(), [](const Edge& a, const Edge& b) { return a.w < b.w; });

  // single-linkage dendrogram
  std::vector<DendroNode> nodes(2 * n - 1);
  std::vector<int> uf_parent(2 * n - 1);
  std::iota(uf_parent.begin(), uf_parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (uf_parent[x] != x) x = uf_parent[x] = uf_parent[uf_parent[x]];
    return x;
  };
  int next = n;
  for (const auto& e : mst) {
    int ra = find(e.a), rb = find(e.b);
    nodes[next].left = ra;
    nodes[next].right = rb;
    nodes[next].dist = e.w;
    nodes[next].size = nodes[ra].size + nodes[rb].size;
    uf_parent[ra] = uf_parent[rb] = next;
    ++next;
  }
  const int droot = 2 * n - 2;

  // condense with min_cluster_size
  std::vector<CondensedEntry> condensed;
  std::vector<int> cluster_parent{-1}; // condensed cluster 0 = root
  struct Frame { int dnode; int cluster; };
  std::vector<Frame> stack{{droot, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.dnode < n) continue; // lone point as a cluster root cannot happen (mcs >= 2)
    const DendroNode& nd = nodes[f.dnode];
    const double lambda = 1.0 / std::max(nd.dist, kEps);
    const int ls = nodes[nd.left].size, rs = nodes[nd.right].size;
    if (ls >= mcs && rs >= mcs) {
      const int cl = static_cast<int>(cluster_parent.size());
      cluster_parent.push_back(f.cluster);
      condensed.push_back({f.cluster, n + cl, lambda, ls});
      const int cr = static_cast<int>(cluster_parent.size());
      cluster_parent.push_back(f.cluster);
      condensed.push_back({f.cluster, n + cr, lambda, rs});
      stack.push_back({nd.left, cl});
      stack.push_back({nd.right, cr});
    } else if (ls >= mcs) {
      std::vector<int> leaves;
      collect_leaves(nodes, nd.right, n, leaves);
      for (int p : leaves) condensed.push_back({f.cluster, p, lambda, 1});
      stack.push_back({nd.left, f.cluster});
    } else if (rs >= mcs) {
      std::vector<int> leaves;
      collect_leaves(nodes, nd.left, n, leaves);
      for (int p : leaves) condensed.push_back({f.cluster, p, lambda, 1});
      stack.push_back({nd.right, f.cluster});
    } else {
      std::vector<int> leaves;
      collect_leaves(nodes, f.dnode, n, leaves);
      for (int p : leaves) condensed.push_back({f.cluster, p, lambda, 1});
    }
  }

  const int n_clusters = static_cast<int>(cluster_parent.size());

  // stability
  std::vector<double> birth(n_clusters, 0.0);
  for (const auto& e : condensed)
    if (e.child >= n) birth[e.child - n] = e.lambda;
  std::vector<double> stability(n_clusters, 0.0);
  for (const auto& e : condensed)
    stability[e.parent] += (e.lambda - birth[e.parent]) * e.size;

  // excess-of-mass selection (bottom-up; children have larger ids)
  std::vector<std::vector<int>> children(n_clusters);
  for (int c = 1; c < n_clusters; ++c) children[cluster_parent[c]].push_back(c);
  std::vector<double> subtree(n_clusters, 0.0);
  std::vector<bool> selected(n_clusters, false);
  for (int c = n_clusters - 1; c >= 0; --c) {
    double child_sum = 0.0;
    for (int ch : children[c]) child_sum += subtree[ch];
    const bool allow = c != 0 || params.allow_single_cluster;
    if (children[c].empty()) {
      selected[c] = allow;
      subtree[c] = stability[c];
    } else if (allow && stability[c] >= child_sum) {
      selected[c] = true;
      subtree[c] = stability[c];
    } else {
      selected[c] = false;
      subtree[c] = child_sum;
    }
  }
  // final clusters: selected with no selected proper ancestor
  std::vector<bool> final_sel(n_clusters, false);
  for (int c = 0; c < n_clusters; ++c) {
    if (!selected[c]) continue;
    bool shadowed = false;
    for (int a = cluster_parent[c]; a >= 0; a = cluster_parent[a])
      if (selected[a]) { shadowed = true; break; }
    if (!shadowed) final_sel[c] = true;
  }

  std::map<int, int> label_of_cluster;
  for (int c = 0; c < n_clusters; ++c)
    if (final_sel[c]) label_of_cluster[c] = static_cast<int>(label_of_cluster.size());

  std::vector<int> point_cluster(n, -1); // condensed cluster each point fell out of
  for (const auto& e : condensed)
    if (e.child < n) point_cluster[e.child] = e.parent;

  std::vector<int> labels(n, -1);
  for (int p = 0; p < n; ++p) {
    for (int c = point_cluster[p]; c >= 0; c = cluster_parent[c]) {
      auto it = label_of_cluster.find(c);
      if (it != label_of_cluster.end()) { labels[p] = it->second; break; }
    }
  }
  return labels;
}

std::optional<double> dbcv_score(const Eigen::MatrixXd& points, const std::vector<int>& labels) {
  const int n = static_cast<int>(points.rows());
  const double d = static_cast<double>(points.cols());
  std::map<int, std::vector<int>> clusters;
  for (int i = 0; i < n; ++i)
    if (labels[i] >= 0) clusters[labels[i]].push_back(i);
  if (clusters.size() < 2) return std::nullopt;

  Eigen::MatrixXd dist = pairwise_distances(points);

  // all-points-core-distance per point within its own cluster
  std::vector<double> apts(n, 0.0);
  for (const auto& [c, members] : clusters) {
    for (int p : members) {
      if (members.size() < 2) { apts[p] = 0.0; continue; }
      double acc = 0.0;
      for (int o : members) {
        if (o == p) continue;
        acc += std::pow(1.0 / std::max(dist(p, o), kEps), d);
      }
      apts[p] = std::pow(acc / static_cast<double>(members.size() - 1), -1.0 / d);
    }
  }
  auto mr = [&](int a, int b) { return std::max({apts[a], apts[b], dist(a, b)}); };

  // per-cluster MST over mutual reachability; internal nodes have degree > 1
  std::map<int, double> sparseness;       // DSC
  std::map<int, std::vector<int>> internals;
  for (const auto& [c, members] : clusters) {
    const int m = static_cast<int>(members.size());
    if (m == 1) { sparseness[c] = 0.0; internals[c] = members; continue; }
    std::vector<bool> in_tree(m, false);
    std::vector<double> best(m, std::numeric_limits<double>::infinity());
    std::vector<int> from(m, -1);
    std::vector<std::pair<int, int>> edges;
    std::vector<double> weights;
    std::vector<int> degree(m, 0);
    in_tree[0] = true;
    for (int j = 1; j < m; ++j) { best[j] = mr(members[0], members[j]); from[j] = 0; }
    for (int step = 1; step < m; ++step) {
      int pick = -1;
      double bw = std::numeric_limits<double>::infinity();
      for (int j = 0; j < m; ++j)
        if (!in_tree[j] && best[j] < bw) { bw = best[j]; pick = j; }
      in_tree[pick] = true;
      edges.emplace_back(from[pick], pick);
      weights.push_back(bw);
      ++degree[from[pick]];
      ++degree[pick];
      for (int j = 0; j < m; ++j) {
        if (in_tree[j]) continue;
        const double w = mr(members[pick], members[j]);
        if (w < best[j]) { best[j] = w; from[j] = pick; }
      }
    }
    std::vector<int> internal_local;
    for (int j = 0; j < m; ++j)
      if (degree[j] > 1) internal_local.push_back(j);
    double dsc = 0.0;
    bool any_internal_edge = false;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (degree[edges[e].first] > 1 && degree[edges[e].second] > 1) {
        dsc = std::max(dsc, weights[e]);
        any_internal_edge = true;
      }
    }
    if (!any_internal_edge)
      dsc = *std::max_element(weights.begin(), weights.end());
    sparseness[c] = dsc;
    std::vector<int>& ints = internals[c];
    if (internal_local.empty()) {
      ints = members;
    } else {
      for (int j : internal_local) ints.push_back(members[j]);
    }
  }

  // density separation between cluster pairs
  double score = 0.0;
  for (const auto& [c, members] : clusters) {
    double min_sep = std::numeric_limits<double>::infinity();
    for (const auto& [c2, members2] : clusters) {
      if (c2 == c) continue;
      for (int p : internals.at(c))
        for (int q : internals.at(c2))
          min_sep = std::min(min_sep, mr(p, q));
    }
    const double dsc = sparseness.at(c);
    const double denom = std::max(min_sep, dsc);
    const double validity = denom > 0 ? (min_sep - dsc) / denom : 0.0;
    score += validity * static_cast<double>(members.size()) / static_cast<double>(n);
  }
  return score;
}

namespace {

double evaluate_point(const Eigen::MatrixXd& matrix, const ParamPoint& p, std::uint64_t seed,
                      std::vector<int>* labels_out) {
  ReduceParams rp;
  rp.n_neighbors = std::min<int>(p.n_neighbors, static_cast<int>(matrix.rows()) - 1);
  rp.n_components = std::min<int>(p.n_components, static_cast<int>(matrix.cols()));
  try {
    Eigen::MatrixXd red = reduce_dims(matrix, rp, seed);
    HdbscanParams hp;
    hp.min_cluster_size = p.min_cluster_size;
    hp.min_samples = p.min_samples;
    std::vector<int> labels = hdbscan(red, hp);
    auto s = dbcv_score(red, labels);
    if (labels_out) *labels_out = labels;
    return s.value_or(-1.0);
  } catch (const ClusterError&) {
    if (labels_out) labels_out->clear();
    return -1.0;
  }
}

Eigen::Vector4d normalize_point(const ParamPoint& p, const SearchSpace& s) {
  auto unit = [](int v, std::pair<int, int> r) {
    return r.second > r.first
               ? (static_cast<double>(v - r.first) / static_cast<double>(r.second - r.first))
               : 0.0;
  };
  return {unit(p.n_neighbors, s.n_neighbors), unit(p.n_components, s.n_components),
          unit(p.min_cluster_size, s.min_cluster_size), unit(p.min_samples, s.min_samples)};
}

} // namespace

TuneResult tune_hyperparams(const Eigen::MatrixXd& matrix, const SearchSpace& space,
                            std::size_t budget, std::uint64_t seed) {
  if (budget < 5 && space.discrete.empty())
    throw ClusterError("tuning budget must be at least 5");

  std::mt19937_64 rng(seed);
  auto sample = [&]() {
    auto pick = [&](std::pair<int, int> r) {
      std::uniform_int_distribution<int> d(r.first, r.second);
      return d(rng);
    };
    ParamPoint p;
    p.n_neighbors = pick(space.n_neighbors);
    p.n_components = pick(space.n_components);
    p.min_cluster_size = pick(space.min_cluster_size);
    p.min_samples = pick(space.min_samples);
    return p;
  };

  TuneResult result;
  auto record = [&](const ParamPoint& p) {
    std::vector<int> labels;
    const double s = evaluate_point(matrix, p, seed, &labels);
    result.log.push_back({p, s});
    if (result.log.size() == 1 || s > result.best_dbcv) {
      result.best = p;
      result.best_dbcv = s;
      result.best_labels = labels;
    }
  };

  if (!space.discrete.empty()) {
    if (budget >= space.discrete.size()) {
      for (const auto& p : space.discrete) record(p);
    } else {
      // seeded subset, then greedy surrogate picks from the remainder
      std::vector<std::size_t> order(space.discrete.size());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t i = 0; i < budget; ++i) record(space.discrete[order[i]]);
    }
  } else {
    const std::size_t n_init = std::min<std::size_t>(budget, 10);
    for (std::size_t i = 0; i < n_init; ++i) record(sample());

    // RBF surrogate with expected-improvement acquisition
    const double h2 = 0.1;
    auto predict = [&](const ParamPoint& cand, double& mu, double& sigma) {
      const Eigen::Vector4d x = normalize_point(cand, space);
      double wsum = 0.0, fsum = 0.0;
      for (const auto& ev : result.log) {
        const Eigen::Vector4d xi = normalize_point(ev.params, space);
        const double w = std::exp(-(x - xi).squaredNorm() / h2);
        wsum += w;
        fsum += w * ev.dbcv;
      }
      mu = wsum > kEps ? fsum / wsum : -1.0;
      sigma = 1.0 / (1.0 + wsum);
    };
    auto norm_cdf = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
    auto norm_pdf = [](double z) {
      return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
    };
    for (std::size_t it = n_init; it < budget; ++it) {
      ParamPoint best_cand;
      double best_ei = -1.0;
      for (int c = 0; c < 64; ++c) {
        ParamPoint cand = sample();
        double mu, sigma;
        predict(cand, mu, sigma);
        const double z = (mu - result.best_dbcv) / std::max(sigma, kEps);
        const double ei = sigma * (z * norm_cdf(z) + norm_pdf(z));
        if (ei > best_ei) { best_ei = ei; best_cand = cand; }
      }
      record(best_cand);
    }
  }

  bool any_defined = false;
  for (const auto& ev : result.log)
    if (ev.dbcv > -1.0) any_defined = true;
  if (!any_defined)
    throw ClusterError("all tuning evaluations produced undefined DBCV (" +
                       std::to_string(result.log.size()) + " evaluations)");
  return result;
}

DomainAssignment drop_noise(const std::vector<kg::CEvent>& events,
                            const std::vector<int>& labels) {
  if (events.size() != labels.size())
    throw ClusterError("drop_noise: labels do not cover events");
  DomainAssignment out;
  for (std::size_t i = 0; i < events.size(); ++i)
    if (labels[i] >= 0) out.cluster_of[events[i].id] = labels[i];
  if (out.cluster_of.empty()) throw ClusterError("all events labeled noise");
  return out;
}

} // namespace spark::cluster
