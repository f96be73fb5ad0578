#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "taylor/hac.hpp"
#include "taylor/series.hpp"

namespace taylor {

enum class CovarianceKind { classical, hac };

struct CovarianceSpec {
    CovarianceKind kind = CovarianceKind::classical;
    HacConfig hac{};
};

/// Declarative linear model. A regressor named "c" marks where the constant sits in the
/// coefficient vector; otherwise include_constant appends it last.
struct RegressionSpec {
    Term dependent;
    std::vector<Term> regressors;
    bool include_constant = true;
    std::optional<QuarterRange> sample;
    CovarianceSpec covariance{};

    /// Regressors in coefficient order with the constant marker resolved. Throws on duplicates
    /// or an empty model.
    [[nodiscard]] std::vector<Term> ordered_terms() const;
};

[[nodiscard]] bool is_constant_term(const Term& t);

/// Numeric form of a model: y, X and labels over an aligned sample.
struct Design {
    std::string dependent;
    QuarterRange sample;
    Eigen::VectorXd y;
    Eigen::MatrixXd X;
    std::vector<Term> terms;          ///< one per column; the constant is {"c", 0}
    std::vector<std::string> labels;  ///< display labels, "C" for the constant
    std::optional<Eigen::Index> constant_col;

    [[nodiscard]] Eigen::Index n_obs() const noexcept { return X.rows(); }
    [[nodiscard]] Eigen::Index n_params() const noexcept { return X.cols(); }

    /// Same columns restricted to row range [first, first+count).
    [[nodiscard]] Design rows(Eigen::Index first, Eigen::Index count) const;
};

/// Aligns dependent, regressors and any `extra` terms (e.g. instruments), then builds the design.
Design build_design(const Dataset& d, const RegressionSpec& spec, std::span<const Term> extra_terms = {});

/// Design from raw arrays; labels default to X1..Xk.
Design make_design(Eigen::VectorXd y, Eigen::MatrixXd X, std::optional<Eigen::Index> constant_col = std::nullopt,
                   std::vector<std::string> labels = {});

struct FitResult {
    std::string dependent;
    std::vector<std::string> labels;
    Eigen::VectorXd coefficients;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd t_stats;
    Eigen::VectorXd p_values;
    Eigen::MatrixXd covariance;
    Eigen::VectorXd fitted;
    Eigen::VectorXd residual_values;

    double r2 = 0, adj_r2 = 0, se_regression = 0, ssr = 0, log_likelihood = 0;
    double f_statistic = 0, f_prob = 1, durbin_watson = 0;
    double aic = 0, schwarz = 0, hannan_quinn = 0, mean_dep = 0, sd_dep = 0;

    QuarterRange sample;
    std::size_t n_obs = 0;
    std::size_t n_params = 0;

    CovarianceKind covariance_kind = CovarianceKind::classical;
    int hac_bandwidth = 0;
    bool hac_small_sample = false;

    /// The data the fit was computed on; diagnostics re-use it.
    Design design;

    /// Position of a coefficient by display label (case-insensitive).
    [[nodiscard]] std::size_t index_of(std::string_view label) const;
    /// Residuals on the fit's calendar.
    [[nodiscard]] Series residuals() const;
};

/// Log-likelihood and information criteria under the Gaussian conventions used throughout.
struct InformationCriteria {
    double log_likelihood, aic, schwarz, hannan_quinn;
};
InformationCriteria information_criteria(double ssr, std::size_t n_obs, std::size_t n_params);

/// Least squares with the full summary block. Throws a collinearity error naming dependent columns.
FitResult fit_ols(const Design& design, const CovarianceSpec& cov = {});
FitResult fit_ols(const Dataset& d, const RegressionSpec& spec);

}  // namespace taylor
