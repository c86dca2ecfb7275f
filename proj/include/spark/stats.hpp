#ifndef SPARK_STATS_HPP
#define SPARK_STATS_HPP

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spark::stats {

class StatsError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SeparationError : public StatsError {
public:
  using StatsError::StatsError;
};

struct LogisticFit {
  Eigen::VectorXd beta;
  Eigen::MatrixXd covariance; // inverse observed information
  int iterations = 0;
  bool converged = false;
};

// Maximum likelihood by iteratively reweighted least squares. Design matrix
// columns include the intercept. Perfect separation and rank deficiency are
// distinct errors.
LogisticFit fit_logistic(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                         double tol = 1e-8, int max_iter = 100);

struct WaldResult {
  double z = 0.0;
  double p = 1.0;
};

WaldResult wald_test(double beta, double se);

double odds_ratio(double beta);

// two-sided standard normal tail probability
double normal_two_sided_p(double z);

struct FdrResult {
  std::vector<double> adjusted;
  std::vector<bool> rejected;
};

// Benjamini-Hochberg step-up: adjusted_i = min over j>=i of m*p_j/j, capped
// at 1; reject where adjusted < alpha.
FdrResult fdr_correct(const std::vector<double>& pvalues, double alpha = 0.05);

struct CorrelationResult {
  double statistic = 0.0; // rho or r
  double p = 1.0;
};

// Pearson correlation of mid-ranks (average ranks for ties); p via the
// t-approximation. Constant input -> nullopt.
std::optional<CorrelationResult> spearman(const std::vector<double>& x,
                                          const std::vector<double>& y);

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

struct RegressionResult {
  std::string feature;
  double beta = 0.0;
  double se = 0.0;
  double z = 0.0;
  double p = 1.0;
  double odds_ratio = 1.0;
  double p_adjusted = 1.0;
  bool significant = false;
  std::size_t n_obs = 0;
  std::string error; // empty on success
};

// One Eq.-style fit per characteristic column against the shared dummies and
// response; per-feature errors recorded, FDR applied across the screen,
// results sorted by odds ratio descending.
std::vector<RegressionResult> run_feature_screen(
    const std::vector<std::string>& feature_names, const Eigen::MatrixXd& features,
    const Eigen::MatrixXd& dummies, const Eigen::VectorXd& y, double alpha = 0.05);

double student_t_two_sided_p(double t, double dof);

} // namespace spark::stats

#endif
