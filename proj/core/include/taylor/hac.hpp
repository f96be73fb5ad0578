#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

namespace taylor {

enum class Kernel { bartlett };

struct HacConfig {
    Kernel kernel = Kernel::bartlett;
    /// Truncation point m; lags 1..m-1 receive weight 1 - j/m. Unset means default_bandwidth(T).
    std::optional<int> bandwidth;
    /// Scale the covariance by T/(T-k).
    bool small_sample_correction = true;

    [[nodiscard]] int resolve_bandwidth(std::size_t T) const;
};

/// floor(4 (T/100)^(2/9)) + 1
int default_bandwidth(std::size_t T);

/// Bartlett long-run covariance of the rows of `moments`:
/// (1/T) [G0 + sum_{j=1}^{m-1} (1 - j/m)(Gj + Gj')], Gj = sum_t u_t u_{t-j}'.
Eigen::MatrixXd long_run_covariance(const Eigen::MatrixXd& moments, int bandwidth);

/// Newey-West sandwich (X'X)^-1 T S (X'X)^-1, optionally scaled by T/(T-k).
Eigen::MatrixXd newey_west_cov(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals, int bandwidth,
                               bool small_sample_correction = true);

}  // namespace taylor
