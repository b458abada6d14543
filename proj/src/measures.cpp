#include "gsx/measures.hpp"

#include "gsx/error.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fmt/core.h>
#include <numbers>

namespace gsx::measures {

using Eigen::MatrixXd;

namespace {

double binary_entropy(double p) {
    double s = 0.0;
    if (p > 0.0) s -= p * std::log(p);
    if (p < 1.0) s -= (1.0 - p) * std::log1p(-p);
    return s;
}

// sum over quadruplets of log cos^2(theta/2), written as log1p(-sin^2) for accuracy at small theta.
double log_fidelity(const PhaseSpectrum& s) {
    double acc = 0.0;
    for (double q : s.quadruplets) {
        const double sn = std::sin(0.5 * q);
        acc += std::log1p(-sn * sn);
    }
    return acc;
}

// Fourth-order central differences on points 2..n-3.
double d1(const std::vector<double>& x, std::size_t i, double h) {
    return (-x[i + 2] + 8.0 * x[i + 1] - 8.0 * x[i - 1] + x[i - 2]) / (12.0 * h);
}

double d2(const std::vector<double>& x, std::size_t i, double h) {
    return (-x[i + 2] + 16.0 * x[i + 1] - 30.0 * x[i] + 16.0 * x[i - 1] - x[i - 2]) / (12.0 * h * h);
}

double relative_residual(const std::vector<double>& chain, const std::vector<double>& direct) {
    double scale = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        scale = std::max(scale, std::abs(direct[i]));
        worst = std::max(worst, std::abs(chain[i] - direct[i]));
    }
    return scale > 0.0 ? worst / scale : worst;
}

} // namespace

PhaseSpectrum phase_spectrum(const MajoranaCovariance& ref, const MajoranaCovariance& tgt, double tol) {
    return skewlin::orthogonal_phases(gaussian::relative_covariance(ref, tgt), tol);
}

double complexity(const PhaseSpectrum& spectrum) {
    if (spectrum.parity_obstructed)
        throw ParityError(fmt::format("states differ in fermion parity ({} pi-pairs); no Bogoliubov path connects them", spectrum.n_pi_pairs));
    return 0.5 * std::sqrt(spectrum.sum_squares());
}

double complexity(const MajoranaCovariance& ref, const MajoranaCovariance& tgt) {
    return complexity(phase_spectrum(ref, tgt));
}

double fidelity(const PhaseSpectrum& spectrum) {
    if (spectrum.n_pi_pairs > 0) return 0.0;
    return std::clamp(std::exp(log_fidelity(spectrum)), 0.0, 1.0);
}

double infidelity(const PhaseSpectrum& spectrum) {
    if (spectrum.n_pi_pairs > 0) return 1.0;
    // Adding +0 turns -expm1(0) = -0 into +0 so identical states print as 0.
    return std::clamp(-std::expm1(log_fidelity(spectrum)), 0.0, 1.0) + 0.0;
}

double fidelity(const MajoranaCovariance& ref, const MajoranaCovariance& tgt, FidelityMethod method) {
    if (method == FidelityMethod::phases) return fidelity(phase_spectrum(ref, tgt));
    if (ref.n_modes() != tgt.n_modes()) throw InvalidInput("fidelity of states with different mode counts");
    if (gaussian::parity(ref) != gaussian::parity(tgt)) return 0.0;
    const MatrixXd mean = 0.5 * (ref.gamma() + tgt.gamma());
    return std::clamp(std::abs(skewlin::pfaffian(gaussian::interleave(mean))), 0.0, 1.0);
}

double fubini_study(double fidelity_value) {
    if (!(fidelity_value >= -1e-12 && fidelity_value <= 1.0 + 1e-12))
        throw InvalidInput(fmt::format("fidelity {:.17g} outside [0, 1]", fidelity_value));
    return std::acos(std::sqrt(std::clamp(fidelity_value, 0.0, 1.0)));
}

double fubini_study(const PhaseSpectrum& spectrum) {
    if (spectrum.n_pi_pairs > 0) return 0.5 * std::numbers::pi;
    // arccos(sqrt F) written as atan2 keeps full precision near F = 1.
    return std::atan2(std::sqrt(infidelity(spectrum)), std::sqrt(fidelity(spectrum)));
}

MeasureResult compare(const MajoranaCovariance& ref, const MajoranaCovariance& tgt, double tol) {
    MeasureResult r;
    r.phase_spectrum = phase_spectrum(ref, tgt, tol);
    r.parity_obstructed = r.phase_spectrum.parity_obstructed;
    if (!r.parity_obstructed) r.complexity = complexity(r.phase_spectrum);
    r.fidelity = fidelity(r.phase_spectrum);
    r.fubini_study = fubini_study(r.phase_spectrum);
    return r;
}

double entanglement_entropy(const MajoranaCovariance& state, const std::vector<int>& sites) {
    const int n = state.n_modes();
    std::vector<char> seen(n, 0);
    for (int s : sites) {
        if (s < 1 || s > n) throw InvalidInput(fmt::format("site {} outside 1..{}", s, n));
        if (seen[s - 1]) throw InvalidInput(fmt::format("site {} listed twice", s));
        seen[s - 1] = 1;
    }
    const auto k = static_cast<Eigen::Index>(sites.size());
    if (k == 0 || k == n) return 0.0;

    std::vector<int> idx;
    for (int s : sites) {
        idx.push_back(s - 1);
        idx.push_back(n + s - 1);
    }
    MatrixXd g(2 * k, 2 * k);
    for (Eigen::Index r = 0; r < 2 * k; ++r)
        for (Eigen::Index c = 0; c < 2 * k; ++c) g(r, c) = state.gamma()(idx[r], idx[c]);

    // -G_A^2 is symmetric with eigenvalues nu^2, each twice.
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(-(g * g), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        const double nu2 = std::clamp(eig.eigenvalues()(i), 0.0, 1.0);
        const double nu = std::sqrt(nu2);
        // (1 - nu) / 2 without cancellation, so weak entanglement is not lost.
        s += binary_entropy((1.0 - nu2) / (2.0 * (1.0 + nu)));
    }
    return 0.5 * s;
}

double half_chain_entropy(const MajoranaCovariance& state) {
    std::vector<int> sites(static_cast<std::size_t>(state.n_modes() / 2));
    for (std::size_t i = 0; i < sites.size(); ++i) sites[i] = static_cast<int>(i) + 1;
    return entanglement_entropy(state, sites);
}

double uniform_step(const std::vector<double>& grid) {
    if (grid.size() < 3) throw InvalidInput(fmt::format("need at least 3 grid points, got {}", grid.size()));
    const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
    if (!(h > 0.0)) throw InvalidInput("grid must be strictly ascending");
    // Relative to the coordinate scale, so that rounding in start + i*h never trips it.
    const double tol = 1e-12 * std::max({std::abs(grid.front()), std::abs(grid.back()), h});
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double step = grid[i] - grid[i - 1];
        if (std::abs(step - h) > tol)
            throw InvalidInput(fmt::format("grid is not uniform at index {} (step {:.17g} vs {:.17g})", i, step, h));
    }
    return h;
}

std::vector<double> second_derivative(const std::vector<double>& grid, const std::vector<double>& values) {
    if (grid.size() != values.size()) throw InvalidInput("grid and values differ in length");
    const double h = uniform_step(grid);
    std::vector<double> out;
    out.reserve(grid.size() - 2);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) out.push_back((values[i + 1] - 2.0 * values[i] + values[i - 1]) / (h * h));
    return out;
}

ChainRuleReport chain_rule_check(const std::vector<double>& grid, const std::vector<std::vector<double>>& theta_flow,
                                 const std::vector<double>& c, const std::vector<double>& f) {
    const std::size_t n = grid.size();
    if (theta_flow.size() != n || c.size() != n || f.size() != n) throw InvalidInput("phase flow, C and F must match the grid");
    if (n < 5) throw InvalidInput("the derivative check needs at least 5 grid points");
    const double h = uniform_step(grid);
    const std::size_t width = theta_flow.front().size();
    for (std::size_t i = 0; i < n; ++i) {
        if (theta_flow[i].size() != width) throw InvalidInput(fmt::format("row {} of the phase flow has a different width", i));
        if (i > 0)
            for (std::size_t j = 0; j < width; ++j)
                if (std::abs(theta_flow[i][j] - theta_flow[i - 1][j]) > 0.5)
                    throw TrackingError(fmt::format("phase track {} jumps by {:.3g} rad at grid index {}", j,
                                                    theta_flow[i][j] - theta_flow[i - 1][j], i));
    }

    std::vector<std::vector<double>> track(width, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < width; ++j) track[j][i] = theta_flow[i][j];

    std::vector<double> cd_chain, cd_direct, cdd_chain, cdd_direct;
    std::vector<double> fd_printed, fd_negated, fd_direct, fdd_chain, fdd_direct;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        if (c[i] == 0.0) continue;
        double s1 = 0.0, s2 = 0.0, g = 0.0, gdot = 0.0;
        for (const auto& th : track) {
            const double t = th[i], td = d1(th, i, h), tdd = d2(th, i, h);
            const double tn = std::tan(0.5 * t), cs = std::cos(0.5 * t);
            s1 += t * td;
            s2 += td * td + t * tdd;
            g -= tn * td;
            gdot -= 0.5 * td * td / (cs * cs) + tn * tdd;
        }
        const double cdot = s1 / c[i];
        cd_chain.push_back(cdot);
        cd_direct.push_back(d1(c, i, h));
        cdd_chain.push_back((s2 - cdot * cdot) / c[i]);
        cdd_direct.push_back(d2(c, i, h));
        const double fdot = f[i] * g;
        fd_negated.push_back(fdot);
        fd_printed.push_back(-fdot);
        fd_direct.push_back(d1(f, i, h));
        fdd_chain.push_back(fdot * g + f[i] * gdot);
        fdd_direct.push_back(d2(f, i, h));
    }

    ChainRuleReport r;
    r.points = static_cast<int>(cd_chain.size());
    r.cdot = relative_residual(cd_chain, cd_direct);
    r.cddot = relative_residual(cdd_chain, cdd_direct);
    r.fdot_printed = relative_residual(fd_printed, fd_direct);
    r.fdot_negated = relative_residual(fd_negated, fd_direct);
    r.printed_sign_matches = r.fdot_printed < r.fdot_negated;
    r.fdot = std::min(r.fdot_printed, r.fdot_negated);
    r.fddot = relative_residual(fdd_chain, fdd_direct);
    return r;
}

} // namespace gsx::measures
