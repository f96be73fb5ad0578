#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "taylor/hac.hpp"
#include "taylor/reproduce.hpp"

using namespace taylor;

TEST_CASE("default bandwidth") {
    CHECK(default_bandwidth(117) == 5);
    CHECK(default_bandwidth(115) == 5);
    CHECK(default_bandwidth(100) == 5);
    CHECK(default_bandwidth(10) == 3);
    HacConfig cfg;
    CHECK(cfg.resolve_bandwidth(117) == 5);
    cfg.bandwidth = 9;
    CHECK(cfg.resolve_bandwidth(117) == 9);
}

TEST_CASE("bandwidth 1 reduces to the White sandwich") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::MatrixXd X = fixtures::random_design(rng, 50, 1 + trial % 4);
        const Eigen::VectorXd e = fixtures::random_vector(rng, 50);
        const Eigen::MatrixXd v = newey_west_cov(X, e, 1, false);
        const Eigen::MatrixXd expected = oracle::hc0_direct(X, e);
        CHECK((v - expected).cwiseAbs().maxCoeff() <= 1e-12 * expected.cwiseAbs().maxCoeff());
        const double scale = 50.0 / (50.0 - static_cast<double>(X.cols()));
        CHECK((newey_west_cov(X, e, 1, true) - scale * expected).cwiseAbs().maxCoeff() <= 1e-12 * scale * expected.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("long-run covariance is symmetric and positive semi-definite") {
    std::mt19937_64 rng(37);
    for (int m : {1, 2, 5, 12}) {
        Eigen::MatrixXd u(80, 4);
        for (Eigen::Index j = 0; j < 4; ++j) u.col(j) = fixtures::random_vector(rng, 80);
        for (Eigen::Index t = 1; t < 80; ++t) u.row(t) += 0.8 * u.row(t - 1);
        const Eigen::MatrixXd S = long_run_covariance(u, m);
        CHECK((S - S.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * S.cwiseAbs().maxCoeff());
        CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S).eigenvalues().minCoeff() >= -1e-10 * S.trace());

        const Eigen::MatrixXd X = fixtures::random_design(rng, 80, 3);
        const Eigen::MatrixXd V = newey_west_cov(X, u.col(0), m);
        CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(V).eigenvalues().minCoeff() >= -1e-10 * V.trace());
    }
}

TEST_CASE("Bartlett weights by hand for one lag") {
    Eigen::MatrixXd u(4, 1);
    u << 1.0, -2.0, 0.5, 3.0;
    // m = 2: lag 1 gets weight 1/2.
    const double g0 = 1 + 4 + 0.25 + 9, g1 = (1 * -2.0) + (-2.0 * 0.5) + (0.5 * 3.0);
    CHECK(long_run_covariance(u, 2)(0, 0) == doctest::Approx((g0 + 0.5 * 2 * g1) / 4).epsilon(1e-14));
    CHECK(long_run_covariance(u, 1)(0, 0) == doctest::Approx(g0 / 4).epsilon(1e-14));
}

TEST_CASE("Newey-West standard errors on the augmented model") {
    const FitResult us = fit_ols(reproduction_dataset(Country::us), augmented_spec(Country::us, true));
    const double reference[] = {0.303483, 0.310041, 0.020404, 0.307917};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(us.std_errors[i] - reference[i]) <= std::max(0.005, 0.01 * reference[i]));
    const FitResult uk = fit_ols(reproduction_dataset(Country::uk), augmented_spec(Country::uk, true));
    const auto j = uk.index_of("INFLATION_GAP");
    CHECK(std::abs(uk.std_errors[j] - 0.313283) <= 0.005);
    CHECK(std::abs(uk.t_stats[j] - 3.920280) <= 0.015 * 3.920280);
}
