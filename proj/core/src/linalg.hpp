#pragma once

#include <vector>

#include <Eigen/Dense>

namespace taylor::detail {

inline constexpr double kRankTolerance = 1e-10;

/// Column-pivoted QR with the library-wide relative rank threshold.
inline Eigen::ColPivHouseholderQR<Eigen::MatrixXd> pivoted_qr(const Eigen::MatrixXd& A) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A.rows(), A.cols());
    qr.setThreshold(kRankTolerance);
    qr.compute(A);
    return qr;
}

/// Indices of the columns judged linearly dependent on the others.
inline std::vector<Eigen::Index> dependent_columns(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr) {
    std::vector<Eigen::Index> out;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index i = qr.rank(); i < perm.size(); ++i) out.push_back(perm[i]);
    return out;
}

/// (X'X)^-1 from a full-rank pivoted QR of X: P R^-1 R^-T P'.
inline Eigen::MatrixXd xtx_inverse(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr) {
    const Eigen::Index k = qr.cols();
    const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd Rinv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd inner = Rinv * Rinv.transpose();
    const auto& P = qr.colsPermutation();
    Eigen::MatrixXd out = P * inner * P.transpose();
    return 0.5 * (out + out.transpose());
}

inline Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& A) { return 0.5 * (A + A.transpose()); }

/// Inverse of a symmetric positive definite matrix.
inline Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& A) {
    const Eigen::Index n = A.rows();
    return symmetrized(A.ldlt().solve(Eigen::MatrixXd::Identity(n, n)));
}

}  // namespace taylor::detail
