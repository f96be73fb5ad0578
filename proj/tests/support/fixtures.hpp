#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "taylor/series.hpp"

namespace fixtures {

/// Gaussian design with a leading constant column.
inline Eigen::MatrixXd random_design(std::mt19937_64& rng, Eigen::Index n, Eigen::Index k) {
    std::normal_distribution<double> z;
    Eigen::MatrixXd X(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        for (Eigen::Index j = 1; j < k; ++j) X(i, j) = z(rng);
    }
    return X;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n, double sd = 1.0) {
    std::normal_distribution<double> z(0.0, sd);
    Eigen::VectorXd v(n);
    for (auto& x : v) x = z(rng);
    return v;
}

inline taylor::Series series(const char* name, taylor::Quarter start, const Eigen::VectorXd& v) {
    return taylor::Series(name, start, std::vector<double>(v.begin(), v.end()));
}

}  // namespace fixtures
