#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "spark/stats.hpp"

using namespace spark::stats;

namespace {

Eigen::MatrixXd intercept_and(const std::vector<double>& x) {
  Eigen::MatrixXd d(static_cast<Eigen::Index>(x.size()), 2);
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    d(i, 0) = 1.0;
    d(i, 1) = x[static_cast<std::size_t>(i)];
  }
  return d;
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

} // namespace

TEST_CASE("logistic fit matches the reference solution") {
  auto design = intercept_and({1, 2, 3, 4, 5, 6});
  auto fit = fit_logistic(design, to_vec({0, 0, 1, 0, 1, 1}));
  REQUIRE(fit.converged);
  CHECK(fit.beta(0) == doctest::Approx(-4.249096550479971).epsilon(1e-6));
  CHECK(fit.beta(1) == doctest::Approx(1.21402758585142).epsilon(1e-6));
  CHECK(std::sqrt(fit.covariance(0, 0)) == doctest::Approx(3.3878502206095207).epsilon(1e-6));
  CHECK(std::sqrt(fit.covariance(1, 1)) == doctest::Approx(0.9125855598847548).epsilon(1e-6));
}

TEST_CASE("intercept-only fit recovers the log odds of the base rate") {
  Eigen::MatrixXd design = Eigen::MatrixXd::Ones(6, 1);
  auto fit = fit_logistic(design, to_vec({0, 1, 0, 1, 0, 1}));
  CHECK(fit.beta(0) == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("rescaling a predictor scales its coefficient inversely") {
  std::vector<double> x = {1, 2, 3, 4, 5, 6};
  auto y = to_vec({0, 0, 1, 0, 1, 1});
  auto base = fit_logistic(intercept_and(x), y);
  for (auto& v : x) v *= 2.0;
  auto scaled = fit_logistic(intercept_and(x), y);
  CHECK(scaled.beta(1) == doctest::Approx(base.beta(1) / 2.0).epsilon(1e-6));
  CHECK(scaled.beta(0) == doctest::Approx(base.beta(0)).epsilon(1e-6));
}

TEST_CASE("perfect separation raises its own error type") {
  auto design = intercept_and({0, 0, 0, 1, 1, 1});
  CHECK_THROWS_AS(fit_logistic(design, to_vec({0, 0, 0, 1, 1, 1})), SeparationError);
}

TEST_CASE("rank deficiency names the dependent columns") {
  Eigen::MatrixXd design(6, 3);
  design.col(0) = Eigen::VectorXd::Ones(6);
  design.col(1) = to_vec({1, 2, 3, 1, 2, 3});
  design.col(2) = 2.0 * design.col(1); // duplicate direction
  CHECK_THROWS_WITH_AS(fit_logistic(design, to_vec({0, 1, 0, 1, 0, 1})),
                       doctest::Contains("rank deficient"), StatsError);
  try {
    fit_logistic(design, to_vec({0, 1, 0, 1, 0, 1}));
  } catch (const StatsError& e) {
    std::string msg = e.what();
    CHECK(msg.find("1") != std::string::npos);
    CHECK(msg.find("2") != std::string::npos);
  }
}

TEST_CASE("logistic input validation") {
  auto design = intercept_and({1, 2, 3, 4, 5, 6});
  CHECK_THROWS_AS(fit_logistic(design, to_vec({0, 0, 0, 0, 0, 0})), StatsError);
  CHECK_THROWS_AS(fit_logistic(design, to_vec({1, 1, 1, 1, 1, 1})), StatsError);
  CHECK_THROWS_AS(fit_logistic(design, to_vec({0, 1, 2, 0, 1, 0})), StatsError);
  CHECK_THROWS_AS(fit_logistic(design, to_vec({0, 1, 0})), StatsError);
}

TEST_CASE("wald test") {
  auto r0 = wald_test(0.0, 1.0);
  CHECK(r0.z == 0.0);
  CHECK(r0.p == doctest::Approx(1.0));

  auto r = wald_test(1.959964, 1.0);
  CHECK(r.p == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(r.p == doctest::Approx(0.049999998192884795).epsilon(1e-12));

  CHECK_THROWS_AS(wald_test(1.0, 0.0), StatsError);
  CHECK_THROWS_AS(wald_test(1.0, -2.0), StatsError);
}

TEST_CASE("odds ratio round-trips through the log") {
  CHECK(odds_ratio(std::log(4.19)) == doctest::Approx(4.19).epsilon(1e-9));
  CHECK(odds_ratio(0.0) == doctest::Approx(1.0));
}

TEST_CASE("fdr correction fixtures") {
  auto all = fdr_correct({0.01, 0.02, 0.03, 0.04});
  for (bool rej : all.rejected) CHECK(rej);
  CHECK(all.adjusted[0] == doctest::Approx(0.04));
  CHECK(all.adjusted[3] == doctest::Approx(0.04));

  auto none = fdr_correct({1.0, 1.0});
  CHECK_FALSE(none.rejected[0]);
  CHECK_FALSE(none.rejected[1]);
  CHECK(none.adjusted[0] == doctest::Approx(1.0));

  auto mixed = fdr_correct({0.001, 0.8});
  CHECK(mixed.rejected[0]);
  CHECK_FALSE(mixed.rejected[1]);
  CHECK(mixed.adjusted[0] == doctest::Approx(0.002));
  CHECK(mixed.adjusted[1] == doctest::Approx(0.8));

  CHECK(fdr_correct({}).adjusted.empty());
  CHECK_THROWS_AS(fdr_correct({-0.1}), StatsError);
  CHECK_THROWS_AS(fdr_correct({1.5}), StatsError);
}

TEST_CASE("fdr adjusted values are monotone in the raw p ordering") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> ps(10);
    for (auto& p : ps) p = u(rng);
    auto r = fdr_correct(ps);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      CHECK(r.adjusted[i] >= ps[i] - 1e-12);
      CHECK(r.adjusted[i] <= 1.0);
      for (std::size_t j = 0; j < ps.size(); ++j)
        if (ps[i] < ps[j]) CHECK(r.adjusted[i] <= r.adjusted[j]);
    }
  }
}

TEST_CASE("spearman endpoints and tie handling") {
  auto up = spearman({1, 2, 3}, {10, 20, 30});
  REQUIRE(up.has_value());
  CHECK(up->statistic == doctest::Approx(1.0));
  CHECK(up->p == doctest::Approx(0.0));

  auto down = spearman({1, 2, 3}, {30, 20, 10});
  REQUIRE(down.has_value());
  CHECK(down->statistic == doctest::Approx(-1.0));

  auto tied = spearman({1, 2, 2, 4}, {1, 3, 2, 4});
  REQUIRE(tied.has_value());
  CHECK(tied->statistic == doctest::Approx(0.9486832980505139).epsilon(1e-12));
  CHECK(tied->p == doctest::Approx(0.05131670194948612).epsilon(1e-12));

  CHECK_FALSE(spearman({5, 5, 5}, {1, 2, 3}).has_value());
  CHECK_THROWS_AS(spearman({1, 2}, {1, 2}), StatsError);
  CHECK_THROWS_AS(spearman({1, 2, 3}, {1, 2}), StatsError);
}

TEST_CASE("spearman is invariant under monotone transforms") {
  std::vector<double> x = {0.3, 1.7, 2.2, 5.0, 9.1};
  std::vector<double> y = {2.0, 1.0, 4.0, 3.0, 5.0};
  auto base = spearman(x, y);
  std::vector<double> ex;
  for (double v : x) ex.push_back(std::exp(v));
  auto mapped = spearman(ex, y);
  REQUIRE(base.has_value());
  REQUIRE(mapped.has_value());
  CHECK(mapped->statistic == doctest::Approx(base->statistic).epsilon(1e-12));
  CHECK(mapped->p == doctest::Approx(base->p).epsilon(1e-12));
}

TEST_CASE("correlations are invariant under joint row permutation") {
  std::vector<double> x = {1, 4, 2, 8, 5, 7};
  std::vector<double> y = {3, 1, 4, 1, 5, 9};
  auto base_s = spearman(x, y);
  auto base_p = pearson(x, y);
  std::vector<std::size_t> perm = {3, 0, 5, 2, 4, 1};
  std::vector<double> px, py;
  for (auto i : perm) {
    px.push_back(x[i]);
    py.push_back(y[i]);
  }
  CHECK(spearman(px, py)->statistic == doctest::Approx(base_s->statistic).epsilon(1e-12));
  CHECK(*pearson(px, py) == doctest::Approx(*base_p).epsilon(1e-12));
}

TEST_CASE("pearson fixtures") {
  CHECK(*pearson({1, 2, 3, 4}, {2, 4, 6, 8}) == doctest::Approx(1.0));
  CHECK(*pearson({1, 2, 3, 4}, {8, 6, 4, 2}) == doctest::Approx(-1.0));

  std::vector<double> r1 = {4, 5, 3, 4, 5};
  std::vector<double> r2 = {3, 5, 4, 4, 4};
  std::vector<double> r3 = {5, 4, 3, 5, 5};
  CHECK(*pearson(r1, r2) == doctest::Approx(0.42257712736425823).epsilon(1e-12));
  CHECK(*pearson(r1, r3) == doctest::Approx(0.5345224838248487).epsilon(1e-12));
  CHECK(*pearson(r2, r3) == doctest::Approx(-0.3952847075210474).epsilon(1e-12));
  double mean = (*pearson(r1, r2) + *pearson(r1, r3) + *pearson(r2, r3)) / 3.0;
  CHECK(mean == doctest::Approx(0.18727163455601983).epsilon(1e-12));

  CHECK_FALSE(pearson({1, 1, 1}, {1, 2, 3}).has_value());
  CHECK_THROWS_AS(pearson({1, 2}, {1, 2}), StatsError);
}

TEST_CASE("feature screen isolates per-feature failures and sorts by odds ratio") {
  const Eigen::Index n = 12;
  Eigen::VectorXd y(n);
  Eigen::MatrixXd features(n, 3);
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g;
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = i % 2;
    features(i, 0) = y(i) + 0.8 * g(rng); // informative, noisy
    features(i, 1) = y(i);                // perfectly separating: must fail alone
    features(i, 2) = -y(i) + 0.8 * g(rng);
  }
  Eigen::MatrixXd dummies(n, 0);
  auto results = run_feature_screen({"f0", "f_sep", "f2"}, features, dummies, y);
  REQUIRE(results.size() == 3);

  // odds ratio descending across all rows
  for (std::size_t i = 1; i < results.size(); ++i)
    CHECK(results[i - 1].odds_ratio >= results[i].odds_ratio);

  for (const auto& r : results) {
    if (r.feature == "f_sep") {
      CHECK_FALSE(r.error.empty());
      CHECK(r.p == doctest::Approx(1.0));
      CHECK_FALSE(r.significant);
    } else {
      CHECK(r.error.empty());
      CHECK(r.n_obs == static_cast<std::size_t>(n));
      CHECK(r.odds_ratio == doctest::Approx(std::exp(r.beta)));
    }
  }
  CHECK_THROWS_AS(run_feature_screen({"one"}, features, dummies, y), StatsError);
}

TEST_CASE("wald intervals cover the true slope across replications") {
  const double b0 = -0.5, b1 = 0.8;
  const int n = 200, reps = 100;
  int covered = 0;
  for (int rep = 0; rep < reps; ++rep) {
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(rep));
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      const double x = g(rng);
      design(i, 0) = 1.0;
      design(i, 1) = x;
      const double p = 1.0 / (1.0 + std::exp(-(b0 + b1 * x)));
      y(i) = u(rng) < p ? 1.0 : 0.0;
    }
    try {
      auto fit = fit_logistic(design, y);
      const double se = std::sqrt(fit.covariance(1, 1));
      if (std::fabs(fit.beta(1) - b1) <= 3.0 * se) ++covered;
    } catch (const StatsError&) {
      // counted as a miss
    }
  }
  CHECK(covered >= 95);
}
