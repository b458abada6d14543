#pragma once

#include "gsx/models.hpp"

#include <cstdint>
#include <vector>

namespace gsx::crosscheck {

// Deviations between the covariance-matrix routes and the exact many-body routes
// for one seeded model instance.
struct CaseResult {
    int index = 0;
    models::ModelSpec model;
    models::ModelSpec partner;      // second state for the fidelity comparison
    double fidelity = 0.0;
    double covariance = 0.0;
    double entropy = 0.0;
    double energy = 0.0;
    double parity = 0.0;

    double worst() const;
};

// Case i cycles through the model kinds and the given sizes; parameters are drawn
// from a generator seeded by (seed, i), so results do not depend on threading.
models::ModelSpec random_case(int index, int n, std::uint64_t seed);

CaseResult run_case(int index, int n, std::uint64_t seed);
std::vector<CaseResult> run_cases(const std::vector<int>& sizes, int cases, std::uint64_t seed, int threads = 1);

} // namespace gsx::crosscheck
