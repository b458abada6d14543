#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gsx::skewlin {

// Dense real antisymmetric matrix of even dimension.
class SkewMatrix {
public:
    // Rejects asymmetry above 1e-12 and odd or zero dimension, then stores (A - A^T)/2.
    explicit SkewMatrix(const Eigen::MatrixXd& a);

    const Eigen::MatrixXd& matrix() const { return a_; }
    Eigen::Index dim() const { return a_.rows(); }

private:
    Eigen::MatrixXd a_;
};

struct SignedLog {
    int sign = 0;           // -1, 0 or +1
    double log_abs = 0.0;   // log|value|, -inf when sign == 0
    double value() const;
};

double pfaffian(const SkewMatrix& a);
double pfaffian(const Eigen::MatrixXd& a);

// Pfaffian as sign and log-magnitude; survives products far below the double range.
SignedLog pfaffian_signed_log(const SkewMatrix& a);

struct PhaseSpectrum {
    int n_zero_pairs = 0;
    int n_pi_pairs = 0;
    std::vector<double> quadruplets;   // ascending, each in (0, pi)
    bool parity_obstructed = false;

    int dim() const { return 2 * n_zero_pairs + 2 * n_pi_pairs + 4 * static_cast<int>(quadruplets.size()); }
    double sum_squares() const;        // sum of theta^2 over all 2N eigenphases
};

constexpr double kPhaseTol = 1e-8;

PhaseSpectrum orthogonal_phases(const Eigen::MatrixXd& q, double tol = kPhaseTol);

// All eigenphases in [0, pi] (one entry per eigenvalue, |arg|), ascending, unsnapped.
std::vector<double> eigenphases(const Eigen::MatrixXd& q);

} // namespace gsx::skewlin
