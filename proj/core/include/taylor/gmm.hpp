#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "taylor/hac.hpp"
#include "taylor/ols.hpp"

namespace taylor {

enum class GmmWeighting {
    hac,        ///< Bartlett long-run covariance of z_t e_t
    classical,  ///< s^2 Z'Z / T (homoskedastic, serially uncorrelated moments)
};

struct GmmSpec {
    RegressionSpec base;
    std::vector<Term> instruments;
    bool add_constant_instrument = true;
    GmmWeighting weighting = GmmWeighting::hac;
    HacConfig hac{};
    /// Re-estimations after the initial 2SLS step.
    int weight_updates = 1;
};

struct GmmResult {
    std::string dependent;
    std::vector<std::string> labels;
    std::vector<std::string> instrument_labels;
    Eigen::VectorXd coefficients;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd t_stats;
    Eigen::VectorXd p_values;
    Eigen::MatrixXd covariance;
    Eigen::VectorXd residual_values;

    double j_statistic = 0;
    double j_prob = 1;
    int j_df = 0;
    std::size_t instrument_rank = 0;

    double r2 = 0, adj_r2 = 0, se_regression = 0, ssr = 0, durbin_watson = 0, mean_dep = 0, sd_dep = 0;

    QuarterRange sample;
    std::size_t n_obs = 0;
    std::size_t n_params = 0;
    int bandwidth = 0;
    int weight_updates = 0;
    GmmWeighting weighting = GmmWeighting::hac;
};

/// Linear GMM on prepared matrices. `Z` holds the instrument columns (constant included if wanted).
GmmResult fit_linear_gmm(const Design& design, const Eigen::MatrixXd& Z, std::vector<std::string> instrument_labels,
                         GmmWeighting weighting, const HacConfig& hac, int weight_updates);

/// Aligns the model and instruments, then estimates. The sample shrinks to where every instrument lag exists.
GmmResult fit_linear_gmm(const Dataset& d, const GmmSpec& spec);

}  // namespace taylor
