#include "taylor/hac.hpp"

#include <cmath>

#include <fmt/format.h>

#include "linalg.hpp"
#include "taylor/error.hpp"

namespace taylor {

int default_bandwidth(std::size_t T) {
    return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(T) / 100.0, 2.0 / 9.0))) + 1;
}

int HacConfig::resolve_bandwidth(std::size_t T) const {
    if (!bandwidth) return default_bandwidth(T);
    if (*bandwidth < 1) fail(ErrorKind::domain, fmt::format("HAC bandwidth must be >= 1, got {}", *bandwidth));
    return *bandwidth;
}

Eigen::MatrixXd long_run_covariance(const Eigen::MatrixXd& U, int m) {
    if (m < 1) fail(ErrorKind::domain, fmt::format("HAC bandwidth must be >= 1, got {}", m));
    const Eigen::Index T = U.rows();
    if (T == 0) fail(ErrorKind::sample, "long-run covariance of an empty sample");
    Eigen::MatrixXd S = U.transpose() * U;
    for (int j = 1; j < m && j < T; ++j) {
        const double w = 1.0 - static_cast<double>(j) / m;
        const Eigen::MatrixXd G = U.bottomRows(T - j).transpose() * U.topRows(T - j);
        S += w * (G + G.transpose());
    }
    return detail::symmetrized(S / static_cast<double>(T));
}

Eigen::MatrixXd newey_west_cov(const Eigen::MatrixXd& X, const Eigen::VectorXd& e, int m, bool small_sample_correction) {
    if (X.rows() != e.size())
        fail(ErrorKind::domain, fmt::format("design has {} rows but residual vector has {}", X.rows(), e.size()));
    const auto qr = detail::pivoted_qr(X);
    if (qr.rank() < X.cols()) fail(ErrorKind::collinearity, "design matrix is rank deficient");
    const Eigen::MatrixXd bread = detail::xtx_inverse(qr);
    const Eigen::MatrixXd U = X.array().colwise() * e.array();
    const double T = static_cast<double>(X.rows());
    Eigen::MatrixXd V = bread * (T * long_run_covariance(U, m)) * bread;
    if (small_sample_correction) {
        const double dof = T - static_cast<double>(X.cols());
        if (dof <= 0) fail(ErrorKind::sample, "no residual degrees of freedom for HAC correction");
        V *= T / dof;
    }
    return detail::symmetrized(V);
}

}  // namespace taylor
