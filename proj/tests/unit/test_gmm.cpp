#include <doctest.h>

#include <random>

#include "expect.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "taylor/gmm.hpp"
#include "taylor/reproduce.hpp"

using namespace taylor;
using fixtures::kind_of;

namespace {

struct Instance {
    Eigen::VectorXd y;
    Eigen::MatrixXd X, Z;
};

// Endogenous regressors driven by instruments plus a shock shared with y.
Instance simulate(std::mt19937_64& rng, Eigen::Index n, Eigen::Index k, Eigen::Index l) {
    Instance in;
    in.Z = fixtures::random_design(rng, n, l);
    const Eigen::VectorXd shock = fixtures::random_vector(rng, n);
    in.X.resize(n, k);
    in.X.col(0).setOnes();
    for (Eigen::Index j = 1; j < k; ++j)
        in.X.col(j) = in.Z * fixtures::random_vector(rng, l) + 0.5 * shock + fixtures::random_vector(rng, n, 0.3);
    in.y = in.X * fixtures::random_vector(rng, k) + shock;
    return in;
}

std::vector<std::string> names(Eigen::Index l) {
    std::vector<std::string> v;
    for (Eigen::Index i = 0; i < l; ++i) v.push_back("Z" + std::to_string(i + 1));
    return v;
}

}  // namespace

TEST_CASE("just-identified GMM is least squares with J = 0") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXd X = fixtures::random_design(rng, 60, 3);
        const Eigen::VectorXd y = X * fixtures::random_vector(rng, 3) + fixtures::random_vector(rng, 60);
        const Design d = make_design(y, X, 0);
        const FitResult ols = fit_ols(d);
        for (GmmWeighting w : {GmmWeighting::classical, GmmWeighting::hac}) {
            const GmmResult g = fit_linear_gmm(d, X, names(3), w, HacConfig{}, 1);
            CHECK((g.coefficients - ols.coefficients).cwiseAbs().maxCoeff() < 1e-8);
            CHECK(std::abs(g.j_statistic) < 1e-8);
            CHECK(g.j_df == 0);
        }
    }
}

TEST_CASE("the initial step is two-stage least squares") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 15; ++trial) {
        const Instance in = simulate(rng, 40, 3, 5);
        const GmmResult g = fit_linear_gmm(make_design(in.y, in.X, 0), in.Z, names(5), GmmWeighting::hac, HacConfig{}, 0);
        const Eigen::VectorXd expected = oracle::two_stage_least_squares(in.y, in.X, in.Z);
        CHECK((g.coefficients - expected).cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("over-identified estimates satisfy the first-order condition") {
    std::mt19937_64 rng(47);
    for (int updates : {1, 2}) {
        const Instance in = simulate(rng, 120, 3, 6);
        HacConfig hac;
        hac.bandwidth = 4;
        const GmmResult g = fit_linear_gmm(make_design(in.y, in.X, 0), in.Z, names(6), GmmWeighting::hac, hac, updates);
        CHECK(g.j_statistic >= 0.0);
        CHECK(g.j_df == 3);
        CHECK(g.instrument_rank == 6);
        CHECK(g.weight_updates == updates);

        // Rebuild the weight the final step used: HAC of z e at the previous step's residuals.
        const GmmResult prev = fit_linear_gmm(make_design(in.y, in.X, 0), in.Z, names(6), GmmWeighting::hac, hac, updates - 1);
        const Eigen::MatrixXd u = in.Z.array().colwise() * prev.residual_values.array();
        const Eigen::MatrixXd S = long_run_covariance(u, 4);
        const Eigen::VectorXd gbar = in.Z.transpose() * (in.y - in.X * g.coefficients) / 120.0;
        const Eigen::VectorXd foc = in.X.transpose() * in.Z * S.ldlt().solve(gbar);
        CHECK(foc.cwiseAbs().maxCoeff() < 1e-8 * (in.X.transpose() * in.Z).cwiseAbs().maxCoeff());
    }
}

TEST_CASE("identification errors") {
    std::mt19937_64 rng(53);
    const Instance in = simulate(rng, 40, 4, 3);
    CHECK(kind_of([&] { fit_linear_gmm(make_design(in.y, in.X, 0), in.Z, names(3), GmmWeighting::hac, HacConfig{}, 1); }) ==
          ErrorKind::identification);
    Eigen::MatrixXd Zc(40, 5);
    Zc << in.Z, in.Z.col(1) + in.Z.col(2), in.Z.col(2);
    CHECK(kind_of([&] { fit_linear_gmm(make_design(in.y, in.X, 0), Zc, names(5), GmmWeighting::hac, HacConfig{}, 1); }) ==
          ErrorKind::collinearity);
}

TEST_CASE("lagged-gap instrument estimates") {
    const GmmResult us = fit_linear_gmm(reproduction_dataset(Country::us), gmm_spec(Country::us));
    CHECK(us.n_obs == 115);
    CHECK(us.instrument_rank == 5);
    CHECK(us.j_df == 1);
    CHECK(us.bandwidth == 5);
    const double coef[] = {2.807578, 0.807066, 0.931545, -0.052630};
    const double se[] = {0.448755, 0.424851, 0.390469, 0.029490};
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(us.coefficients[i] - coef[i]) <= std::max(0.005, 0.01 * std::abs(coef[i])));
        CHECK(std::abs(us.std_errors[i] - se[i]) <= std::max(0.005, 0.01 * se[i]));
    }
    CHECK(std::abs(us.j_statistic - 3.683003) <= 0.015 * 3.683003);
    CHECK(std::abs(us.j_prob - 0.054970) <= 0.005);

    const GmmResult uk = fit_linear_gmm(reproduction_dataset(Country::uk), gmm_spec(Country::uk));
    const double ukc[] = {3.627182, 1.132567, 0.579766, -0.016528};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(uk.coefficients[i] - ukc[i]) <= std::max(0.005, 0.01 * std::abs(ukc[i])));
    CHECK(std::abs(uk.j_statistic - 2.397154) <= 0.015 * 2.397154);
    CHECK(std::abs(uk.j_prob - 0.121556) <= 0.005);
}
