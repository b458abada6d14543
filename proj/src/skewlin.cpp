#include "gsx/skewlin.hpp"

#include "gsx/error.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <fmt/core.h>
#include <limits>
#include <numbers>
#include <vector>

namespace gsx::skewlin {

namespace {

constexpr double kAsymmetryTol = 1e-12;
constexpr double kOrthogonalityTol = 1e-8;

// Householder reduction that zeroes row/column k below k+1 for every even k.
// Calls visit(pivot) with A(k, k+1) after each step; returns the accumulated
// determinant of the reflections.
template <class Visit>
int reduce(Eigen::MatrixXd a, Visit visit) {
    const Eigen::Index n = a.rows();
    int det = 1;
    Eigen::VectorXd work(n);
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        const Eigen::Index m = n - k - 1;
        if (m > 1 && a.col(k).segment(k + 2, m - 1).squaredNorm() > 0.0) {
            Eigen::VectorXd essential(m - 1);
            double tau = 0.0;
            double beta = 0.0;
            a.col(k).segment(k + 1, m).makeHouseholder(essential, tau, beta);
            if (tau != 0.0) {
                a.bottomRightCorner(m, n - k).applyHouseholderOnTheLeft(essential, tau, work.data());
                a.bottomRightCorner(n - k, m).applyHouseholderOnTheRight(essential, tau, work.data());
                det = -det;
            }
        }
        if (!visit(a(k, k + 1))) break;
    }
    return det;
}

} // namespace

SkewMatrix::SkewMatrix(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw DimensionError(fmt::format("skew matrix must be square, got {}x{}", a.rows(), a.cols()));
    if (a.rows() == 0 || a.rows() % 2 != 0)
        throw DimensionError(fmt::format("skew matrix needs a positive even dimension, got {}", a.rows()));
    const double asym = (a + a.transpose()).cwiseAbs().maxCoeff();
    if (asym > 2.0 * kAsymmetryTol) throw InvalidInput(fmt::format("matrix is not antisymmetric (|A + A^T| = {:.3g})", asym));
    a_ = 0.5 * (a - a.transpose());
}

double SignedLog::value() const {
    return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

double pfaffian(const SkewMatrix& a) {
    double product = 1.0;
    const int det = reduce(a.matrix(), [&](double pivot) {
        product *= pivot;
        return product != 0.0;
    });
    return det * product;
}

double pfaffian(const Eigen::MatrixXd& a) {
    return pfaffian(SkewMatrix(a));
}

SignedLog pfaffian_signed_log(const SkewMatrix& a) {
    SignedLog out{1, 0.0};
    const int det = reduce(a.matrix(), [&](double pivot) {
        if (pivot == 0.0) {
            out = {0, -std::numeric_limits<double>::infinity()};
            return false;
        }
        if (pivot < 0.0) out.sign = -out.sign;
        out.log_abs += std::log(std::abs(pivot));
        return true;
    });
    out.sign *= det;
    return out;
}

double PhaseSpectrum::sum_squares() const {
    double s = 2.0 * n_pi_pairs * std::numbers::pi * std::numbers::pi;
    for (double q : quadruplets) s += 4.0 * q * q;
    return s;
}

namespace {

struct SchurPhases {
    int ones = 0;              // 1x1 blocks at +1
    int minus_ones = 0;        // 1x1 blocks at -1
    std::vector<double> reps;  // one |theta| per conjugate pair of a 2x2 block
};

// The double-shift real Schur iteration can stall on highly degenerate inputs such as
// involutions. Single-shift complex Schur does not; eigenvalues within 1e-9 of +-1 are
// counted one by one, the rest pair up as conjugates by |theta|.
SchurPhases complex_schur_phases(const Eigen::MatrixXd& q) {
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(q.cast<std::complex<double>>(), false);
    if (schur.info() != Eigen::Success) throw NumericError("Schur decomposition did not converge");
    constexpr double kRealEigenvalue = 1e-9;
    const double pi = std::numbers::pi;
    SchurPhases out;
    std::vector<double> rest;
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
        const double a = std::abs(std::arg(schur.matrixT()(i, i)));
        if (a <= kRealEigenvalue) out.ones += 1;
        else if (a >= pi - kRealEigenvalue) out.minus_ones += 1;
        else rest.push_back(a);
    }
    if (rest.size() % 2 != 0) throw NumericError("complex eigenvalues of a real matrix do not pair up");
    std::sort(rest.begin(), rest.end());
    for (std::size_t i = 0; i < rest.size(); i += 2) out.reps.push_back(0.5 * (rest[i] + rest[i + 1]));
    return out;
}

SchurPhases schur_phases(const Eigen::MatrixXd& q) {
    const Eigen::Index n = q.rows();
    if (q.cols() != n) throw DimensionError(fmt::format("expected a square matrix, got {}x{}", q.rows(), q.cols()));
    const double dev = (q * q.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (dev > kOrthogonalityTol) throw InvalidInput(fmt::format("matrix is not orthogonal (|QQ^T - 1| = {:.3g})", dev));

    Eigen::RealSchur<Eigen::MatrixXd> schur(q, false);
    if (schur.info() != Eigen::Success) return complex_schur_phases(q);
    const Eigen::MatrixXd& t = schur.matrixT();

    SchurPhases out;
    auto real_eigenvalue = [&](double lambda) { (lambda < 0.0 ? out.minus_ones : out.ones) += 1; };
    for (Eigen::Index i = 0; i < n;) {
        if (i + 1 < n && t(i + 1, i) != 0.0) {
            const double a = t(i, i), b = t(i, i + 1), c = t(i + 1, i), d = t(i + 1, i + 1);
            const double mid = 0.5 * (a + d);
            const double disc = 0.25 * (a - d) * (a - d) + b * c;
            if (disc < 0.0) {
                out.reps.push_back(std::atan2(std::sqrt(-disc), mid));
            } else {
                real_eigenvalue(mid + std::sqrt(disc));
                real_eigenvalue(mid - std::sqrt(disc));
            }
            i += 2;
        } else {
            real_eigenvalue(t(i, i));
            i += 1;
        }
    }
    std::sort(out.reps.begin(), out.reps.end());
    return out;
}

} // namespace

std::vector<double> eigenphases(const Eigen::MatrixXd& q) {
    const SchurPhases s = schur_phases(q);
    std::vector<double> out(static_cast<std::size_t>(s.ones), 0.0);
    out.insert(out.end(), static_cast<std::size_t>(s.minus_ones), std::numbers::pi);
    for (double r : s.reps) out.insert(out.end(), 2, r);
    std::sort(out.begin(), out.end());
    return out;
}

PhaseSpectrum orthogonal_phases(const Eigen::MatrixXd& q, double tol) {
    const SchurPhases s = schur_phases(q);
    const double pi = std::numbers::pi;

    int zeros = s.ones;
    int pis = s.minus_ones;
    std::vector<double> mid;
    for (double r : s.reps) {
        if (r <= tol) zeros += 2;
        else if (r >= pi - tol) pis += 2;
        else mid.push_back(r);
    }

    // A quadruplet sitting on the snap threshold can lose one of its two
    // representatives to the snap; send the partner the same way.
    if (mid.size() % 2 == 1) {
        const double to_zero = mid.front();
        const double to_pi = pi - mid.back();
        const double limit = 10.0 * tol;
        if (std::min(to_zero, to_pi) > limit)
            throw StructureError(fmt::format("unpaired eigenphase {:.17g} in orthogonal spectrum", to_zero <= to_pi ? mid.front() : mid.back()));
        if (to_zero <= to_pi) {
            mid.erase(mid.begin());
            zeros += 2;
        } else {
            mid.pop_back();
            pis += 2;
        }
    }
    if (zeros % 2 != 0 || pis % 2 != 0)
        throw StructureError(fmt::format("eigenvalues +1/-1 have odd multiplicities ({}, {})", zeros, pis));

    PhaseSpectrum out;
    out.n_zero_pairs = zeros / 2;
    out.n_pi_pairs = pis / 2;
    for (std::size_t i = 0; i < mid.size(); i += 2) {
        if (mid[i + 1] - mid[i] > 10.0 * tol)
            throw StructureError(fmt::format("eigenphases {:.17g} and {:.17g} do not form a quadruplet", mid[i], mid[i + 1]));
        out.quadruplets.push_back(0.5 * (mid[i] + mid[i + 1]));
    }
    out.parity_obstructed = out.n_pi_pairs % 2 == 1;
    return out;
}

} // namespace gsx::skewlin
