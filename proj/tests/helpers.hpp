#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace gsx::testing {

inline Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = gauss(rng);
    return m;
}

inline Eigen::MatrixXd random_skew(int dim, std::uint64_t seed) {
    const Eigen::MatrixXd a = random_matrix(dim, dim, seed);
    return a - a.transpose();
}

// Pfaffian by expansion along the first row, O(n!!); reference for small dimensions.
inline double pfaffian_expansion(const Eigen::MatrixXd& a) {
    const auto n = a.rows();
    if (n == 0) return 1.0;
    if (n % 2 != 0) return 0.0;
    double total = 0.0;
    for (Eigen::Index j = 1; j < n; ++j) {
        if (a(0, j) == 0.0) continue;
        std::vector<Eigen::Index> keep;
        for (Eigen::Index k = 1; k < n; ++k)
            if (k != j) keep.push_back(k);
        Eigen::MatrixXd minor(n - 2, n - 2);
        for (Eigen::Index r = 0; r < n - 2; ++r)
            for (Eigen::Index c = 0; c < n - 2; ++c) minor(r, c) = a(keep[r], keep[c]);
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;
        total += sign * a(0, j) * pfaffian_expansion(minor);
    }
    return total;
}

inline Eigen::Matrix2d rotation(double theta) {
    Eigen::Matrix2d r;
    r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return r;
}

inline Eigen::MatrixXd permutation_matrix(int dim, std::uint64_t seed) {
    std::vector<int> p(dim);
    for (int i = 0; i < dim; ++i) p[i] = i;
    std::mt19937_64 rng(seed);
    std::shuffle(p.begin(), p.end(), rng);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, p[i]) = 1.0;
    return m;
}

inline double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace gsx::testing
