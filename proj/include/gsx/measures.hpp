#pragma once

#include "gsx/gaussian.hpp"
#include "gsx/skewlin.hpp"

#include <optional>
#include <vector>

namespace gsx::measures {

using gaussian::MajoranaCovariance;
using skewlin::PhaseSpectrum;

struct MeasureResult {
    std::optional<double> complexity;   // empty when parity-obstructed
    double fidelity = 0.0;
    double fubini_study = 0.0;
    bool parity_obstructed = false;
    PhaseSpectrum phase_spectrum;
};

enum class FidelityMethod { phases, pfaffian };

PhaseSpectrum phase_spectrum(const MajoranaCovariance& ref, const MajoranaCovariance& tgt,
                             double tol = skewlin::kPhaseTol);

// All measures from one phase extraction.
MeasureResult compare(const MajoranaCovariance& ref, const MajoranaCovariance& tgt,
                      double tol = skewlin::kPhaseTol);

double complexity(const MajoranaCovariance& ref, const MajoranaCovariance& tgt);
double complexity(const PhaseSpectrum& spectrum);

double fidelity(const MajoranaCovariance& ref, const MajoranaCovariance& tgt,
                FidelityMethod method = FidelityMethod::phases);
double fidelity(const PhaseSpectrum& spectrum);

// 1 - F without cancellation, from the phases.
double infidelity(const PhaseSpectrum& spectrum);

double fubini_study(double fidelity_value);
double fubini_study(const PhaseSpectrum& spectrum);

// Sites are 1-based; duplicates or out-of-range entries are rejected.
double entanglement_entropy(const MajoranaCovariance& state, const std::vector<int>& sites);
double half_chain_entropy(const MajoranaCovariance& state);

// f'' on interior points by (f(x+h) - 2 f(x) + f(x-h)) / h^2.
std::vector<double> second_derivative(const std::vector<double>& grid, const std::vector<double>& values);

// Residuals of the chain-rule derivative identities for C and F against direct
// differences. theta_flow[i] holds the tracked quadruplet phases at grid[i].
struct ChainRuleReport {
    double cdot = 0.0;
    double cddot = 0.0;
    double fdot = 0.0;          // with the sign that matched
    double fddot = 0.0;
    double fdot_printed = 0.0;  // residual of F' = +F sum tan(theta/2) theta'
    double fdot_negated = 0.0;  // residual of F' = -F sum tan(theta/2) theta'
    bool printed_sign_matches = false;
    int points = 0;             // interior points compared
};

ChainRuleReport chain_rule_check(const std::vector<double>& grid,
                                 const std::vector<std::vector<double>>& theta_flow,
                                 const std::vector<double>& c, const std::vector<double>& f);

// Uniform-spacing check shared by the derivative routines; returns the step.
double uniform_step(const std::vector<double>& grid);

} // namespace gsx::measures
