#ifndef SPARK_CLUSTER_HPP
#define SPARK_CLUSTER_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spark/kg.hpp"

namespace spark::cluster {

class ClusterError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class EmbeddingBackend {
public:
  virtual ~EmbeddingBackend() = default;
  virtual Eigen::VectorXd embed(const std::string& txt) const = 0;
  virtual int dim() const = 0;
  virtual std::string version() const = 0;
};

// Seeded hashing-trick embedding: each token hashes to a signed coordinate,
// sums are L2-normalized. Deterministic given (dim, seed).
class HashEmbedding : public EmbeddingBackend {
public:
  HashEmbedding(int dim, std::uint64_t seed);
  Eigen::VectorXd embed(const std::string& txt) const override;
  int dim() const override { return dim_; }
  std::string version() const override;

private:
  int dim_;
  std::uint64_t seed_;
};

// C-events with corpus frequency >= min_count; frequency field set.
std::vector<kg::CEvent> frequency_filter(const std::vector<kg::AlignmentResult>& alignments,
                                         const kg::KGStore& kg, std::size_t min_count = 5);

Eigen::MatrixXd embed_events(const std::vector<kg::CEvent>& events,
                             const EmbeddingBackend& embedder);

struct ReduceParams {
  int n_neighbors = 15; // recorded; PCA fallback needs rows >= n_neighbors + 1
  double min_dist = 0.1;
  int n_components = 2;
};

// PCA projection onto the top n_components principal axes; deterministic
// sign convention (largest-magnitude loading positive).
Eigen::MatrixXd reduce_dims(const Eigen::MatrixXd& m, const ReduceParams& params,
                            std::uint64_t seed);

struct HdbscanParams {
  int min_cluster_size = 5;
  int min_samples = 5;
  bool allow_single_cluster = false;
};

// HDBSCAN: mutual-reachability MST, condensed tree, excess-of-mass cluster
// selection; -1 labels noise; cluster ids consecutive from 0.
std::vector<int> hdbscan(const Eigen::MatrixXd& points, const HdbscanParams& params);

// Density-Based Clustering Validation in [-1, 1]; nullopt when fewer than
// two non-noise clusters are present.
std::optional<double> dbcv_score(const Eigen::MatrixXd& points, const std::vector<int>& labels);

struct ClusterModel {
  std::vector<std::string> event_ids;
  int embedding_dim = 0;
  int reduced_dim = 0;
  std::map<std::string, int> labels; // -1 = noise
  std::map<std::string, double> hyperparams;
  double dbcv = -1.0;
  std::uint64_t rng_seed = 0;
};

struct ParamPoint {
  int n_neighbors = 15;
  int n_components = 2;
  int min_cluster_size = 5;
  int min_samples = 5;
};

struct SearchSpace {
  // when discrete points are given, the tuner enumerates them (exhaustively
  // if budget allows); otherwise samples the inclusive ranges
  std::vector<ParamPoint> discrete;
  std::pair<int, int> n_neighbors{5, 50};
  std::pair<int, int> n_components{2, 10};
  std::pair<int, int> min_cluster_size{5, 50};
  std::pair<int, int> min_samples{1, 20};
};

struct TuneEval {
  ParamPoint params;
  double dbcv = -1.0; // undefined scores recorded as -1
};

struct TuneResult {
  ParamPoint best;
  double best_dbcv = -1.0;
  std::vector<int> best_labels;
  std::vector<TuneEval> log;
};

// Sequential model-based search (RBF surrogate, expected improvement)
// maximizing DBCV of reduce_dims -> hdbscan. Deterministic given seed.
TuneResult tune_hyperparams(const Eigen::MatrixXd& matrix, const SearchSpace& space,
                            std::size_t budget, std::uint64_t seed);

struct DomainAssignment {
  std::map<std::string, int> cluster_of;      // non-noise events only
  std::map<int, std::string> cluster_names;   // user-supplied
};

DomainAssignment drop_noise(const std::vector<kg::CEvent>& events,
                            const std::vector<int>& labels);

} // namespace spark::cluster

#endif
