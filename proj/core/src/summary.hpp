#pragma once

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "taylor/dist.hpp"

namespace taylor::detail {

struct ResidualSummary {
    double r2, adj_r2, se_regression, ssr, durbin_watson, mean_dep, sd_dep, tss;
};

/// Goodness-of-fit block shared by every estimator. R^2 is centred; a constant dependent
/// variable yields R^2 = 0.
inline ResidualSummary summarize(const Eigen::VectorXd& y, const Eigen::VectorXd& e, Eigen::Index k) {
    const double T = static_cast<double>(y.size());
    ResidualSummary s{};
    s.mean_dep = y.mean();
    s.tss = (y.array() - s.mean_dep).square().sum();
    s.sd_dep = T > 1 ? std::sqrt(s.tss / (T - 1)) : std::numeric_limits<double>::quiet_NaN();
    s.ssr = e.squaredNorm();
    const bool degenerate = s.tss <= 1e-24 * std::max(1.0, y.squaredNorm());
    s.r2 = degenerate ? 0.0 : 1.0 - s.ssr / s.tss;
    s.adj_r2 = 1.0 - (1.0 - s.r2) * (T - 1) / (T - static_cast<double>(k));
    s.se_regression = std::sqrt(s.ssr / (T - static_cast<double>(k)));
    double num = 0.0;
    for (Eigen::Index i = 1; i < e.size(); ++i) num += (e[i] - e[i - 1]) * (e[i] - e[i - 1]);
    s.durbin_watson = s.ssr > 0 ? num / s.ssr : std::numeric_limits<double>::quiet_NaN();
    return s;
}

/// Two-sided p-value that tolerates infinite or undefined t statistics.
inline double t_pvalue(double t, double dof) {
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t)) return 0.0;
    return student_t_sf2(t, dof).value();
}

}  // namespace taylor::detail
