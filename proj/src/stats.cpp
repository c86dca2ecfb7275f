#include "spark/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace spark::stats {

namespace {

// regularized incomplete beta via Lentz continued fraction
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-15, kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log(1.0 - x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

} // namespace

double normal_two_sided_p(double z) {
  return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

double student_t_two_sided_p(double t, double dof) {
  if (dof <= 0) return 1.0;
  const double x = dof / (dof + t * t);
  return inc_beta(dof / 2.0, 0.5, x);
}

LogisticFit fit_logistic(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                         double tol, int max_iter) {
  const Eigen::Index n = design.rows(), p = design.cols();
  if (n != y.size()) throw StatsError("design/response size mismatch");
  const double ymin = y.minCoeff(), ymax = y.maxCoeff();
  if (ymin < 0 || ymax > 1) throw StatsError("response must be binary 0/1");
  if (y.sum() == 0 || y.sum() == static_cast<double>(n))
    throw StatsError("need at least one observation per response class");

  Eigen::FullPivLU<Eigen::MatrixXd> lu(design);
  if (lu.rank() < p) {
    // name the collinear columns
    std::ostringstream msg;
    msg << "design matrix rank deficient (rank " << lu.rank() << " of " << p
        << "); dependent columns:";
    Eigen::MatrixXd q = design;
    for (Eigen::Index c = 0; c < p; ++c) {
      Eigen::MatrixXd without(n, p - 1);
      without << q.leftCols(c), q.rightCols(p - 1 - c);
      Eigen::FullPivLU<Eigen::MatrixXd> lu2(without);
      if (lu2.rank() == lu.rank()) msg << " " << c;
    }
    throw StatsError(msg.str());
  }

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  LogisticFit fit;
  double prev_max_beta = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd eta = design * beta;
    Eigen::VectorXd mu = (1.0 / (1.0 + (-eta.array()).exp())).matrix();
    Eigen::VectorXd w = (mu.array() * (1.0 - mu.array())).matrix();
    // working response
    Eigen::VectorXd wz =
        (w.array() * eta.array() + (y - mu).array()).matrix();
    Eigen::MatrixXd xtwx = design.transpose() * w.asDiagonal() * design;
    Eigen::VectorXd xtwz = design.transpose() * wz;
    Eigen::VectorXd new_beta = xtwx.ldlt().solve(xtwz);

    const double max_beta = new_beta.cwiseAbs().maxCoeff();
    const double change = (new_beta - beta).cwiseAbs().maxCoeff();
    if (max_beta > 30.0 && max_beta >= prev_max_beta) {
      throw SeparationError("perfect separation detected (|beta| > 30 with non-decreasing steps)");
    }
    prev_max_beta = max_beta;
    beta = new_beta;
    ++fit.iterations;
    if (change < tol) {
      fit.converged = true;
      break;
    }
  }
  if (!fit.converged) throw StatsError("logistic fit did not converge");

  Eigen::VectorXd eta = design * beta;
  Eigen::VectorXd mu = (1.0 / (1.0 + (-eta.array()).exp())).matrix();
  Eigen::VectorXd w = (mu.array() * (1.0 - mu.array())).matrix();
  Eigen::MatrixXd info = design.transpose() * w.asDiagonal() * design;
  fit.beta = beta;
  fit.covariance = info.inverse();
  return fit;
}

WaldResult wald_test(double beta, double se) {
  if (se <= 0) throw StatsError("standard error must be positive");
  WaldResult r;
  r.z = beta / se;
  r.p = normal_two_sided_p(r.z);
  return r;
}

double odds_ratio(double beta) { return std::exp(beta); }

FdrResult fdr_correct(const std::vector<double>& pvalues, double alpha) {
  const std::size_t m = pvalues.size();
  for (double p : pvalues)
    if (p < 0.0 || p > 1.0 || std::isnan(p)) throw StatsError("p-value out of [0,1]");
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pvalues[a] < pvalues[b]; });

  FdrResult r;
  r.adjusted.resize(m);
  r.rejected.resize(m, false);
  double running_min = 1.0;
  for (std::size_t i = m; i-- > 0;) {
    const double candidate =
        std::min(1.0, pvalues[order[i]] * static_cast<double>(m) / static_cast<double>(i + 1));
    running_min = std::min(running_min, candidate);
    r.adjusted[order[i]] = running_min;
  }
  for (std::size_t i = 0; i < m; ++i) r.rejected[i] = r.adjusted[i] < alpha;
  return r;
}

namespace {

std::vector<double> midranks(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

} // namespace

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw StatsError("pearson needs equal lengths >= 3");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt; // constant input
  return sxy / std::sqrt(sxx * syy);
}

std::optional<CorrelationResult> spearman(const std::vector<double>& x,
                                          const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw StatsError("spearman needs equal lengths >= 3");
  auto r = pearson(midranks(x), midranks(y));
  if (!r) return std::nullopt;
  CorrelationResult out;
  out.statistic = *r;
  const double n = static_cast<double>(x.size());
  if (std::fabs(out.statistic) >= 1.0) {
    out.p = 0.0;
  } else {
    const double t = out.statistic * std::sqrt((n - 2.0) / (1.0 - out.statistic * out.statistic));
    out.p = student_t_two_sided_p(t, n - 2.0);
  }
  return out;
}

std::vector<RegressionResult> run_feature_screen(
    const std::vector<std::string>& feature_names, const Eigen::MatrixXd& features,
    const Eigen::MatrixXd& dummies, const Eigen::VectorXd& y, double alpha) {
  if (static_cast<Eigen::Index>(feature_names.size()) != features.cols())
    throw StatsError("feature name/column mismatch");
  const Eigen::Index n = y.size();

  std::vector<RegressionResult> results;
  for (Eigen::Index f = 0; f < features.cols(); ++f) {
    RegressionResult r;
    r.feature = feature_names[static_cast<std::size_t>(f)];
    r.n_obs = static_cast<std::size_t>(n);
    try {
      Eigen::MatrixXd design(n, 2 + dummies.cols());
      design.col(0) = Eigen::VectorXd::Ones(n);
      design.col(1) = features.col(f);
      if (dummies.cols() > 0) design.rightCols(dummies.cols()) = dummies;
      LogisticFit fit = fit_logistic(design, y);
      r.beta = fit.beta(1);
      r.se = std::sqrt(fit.covariance(1, 1));
      auto w = wald_test(r.beta, r.se);
      r.z = w.z;
      r.p = w.p;
      r.odds_ratio = odds_ratio(r.beta);
    } catch (const StatsError& e) {
      r.error = e.what();
      r.p = 1.0;
    }
    results.push_back(std::move(r));
  }

  // FDR across successfully fitted rows only
  std::vector<double> ps;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].error.empty()) {
      ps.push_back(results[i].p);
      idx.push_back(i);
    }
  }
  if (!ps.empty()) {
    auto fdr = fdr_correct(ps, alpha);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      results[idx[k]].p_adjusted = fdr.adjusted[k];
      results[idx[k]].significant = fdr.adjusted[k] < alpha;
    }
  }
  std::stable_sort(results.begin(), results.end(),
                   [](const RegressionResult& a, const RegressionResult& b) {
                     return a.odds_ratio > b.odds_ratio;
                   });
  return results;
}

} // namespace spark::stats
