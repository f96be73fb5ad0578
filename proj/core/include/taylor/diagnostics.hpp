#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "taylor/dist.hpp"
#include "taylor/ols.hpp"

namespace taylor {

enum class StatForm { F, chi2, LR, obs_r2, jb };

struct TestStatistic {
    StatForm form;
    std::string label;       ///< "F-statistic", "Obs*R-squared", ...
    double value;
    std::vector<double> df;  ///< one entry for chi-square forms, two for F
    TailProbability p;

    /// Short machine key: "f", "chi2", "lr", "wald", "obs_r2", "scaled_ess", "jb".
    std::string key;
};

struct DetailRow {
    std::string label;
    double value;
    std::optional<double> std_error;
};

struct TestReport {
    std::string name;
    std::string null_hypothesis;
    std::vector<TestStatistic> statistics;
    std::vector<DetailRow> details;
    std::vector<std::string> notes;
    QuarterRange sample;
    std::size_t n_obs = 0;

    [[nodiscard]] const TestStatistic& stat(std::string_view key) const;
    [[nodiscard]] const DetailRow& detail(std::string_view label) const;
};

/// Linear restrictions R b = r.
struct Restrictions {
    Eigen::MatrixXd R;
    Eigen::VectorXd r;
};

/// Parses "b1=0.5, c(2)=0.5", "b(inflation_gap) - b(output_gap) = 0", "2*b1 + b3 = 1".
/// Coefficients are addressed 1-based (b1, c(1)) or by label (b(name)); labels match exactly,
/// then by unique prefix.
Restrictions parse_restrictions(std::string_view text, std::span<const std::string> labels);

TestReport wald_test(const FitResult& fit, const Restrictions& restrictions);

/// Chow breakpoint test; the second regime starts at `break_at`.
TestReport chow_breakpoint_test(const Design& design, const Quarter& break_at);
TestReport chow_breakpoint_test(const Dataset& d, const RegressionSpec& spec, const Quarter& break_at);

/// White heteroskedasticity test with squares and (optionally) cross products.
TestReport white_test(const FitResult& fit, bool cross_terms = true);

/// Breusch-Godfrey LM test; pre-sample residuals are set to zero.
TestReport breusch_godfrey_test(const FitResult& fit, int lags = 1);

struct Moments {
    double mean, std_dev, skewness, kurtosis;
};
/// Moment-ratio skewness m3/m2^1.5 and kurtosis m4/m2^2.
Moments sample_moments(std::span<const double> x);

TestReport jarque_bera_test(std::span<const double> residuals);
TestReport jarque_bera_test(const Series& residuals);

}  // namespace taylor
