#pragma once

#include "gsx/gaussian.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace gsx::oracle {

constexpr int kMaxModes = 12;

// Dense amplitudes over occupation bitstrings; bit i is the occupation of site i+1.
struct FockState {
    int n = 0;
    Eigen::VectorXcd amplitudes;
};

struct GroundState {
    FockState state;
    double energy = 0.0;
    int degeneracy = 1;     // dimension of the lowest level before sector selection
};

FockState basis_state(int n, std::uint32_t bits);

// Many-body matrix of H restricted to one parity sector (0 even, 1 odd),
// indexed by the bitstrings of that sector in ascending order.
Eigen::MatrixXcd sector_hamiltonian(const gaussian::QuadraticHamiltonian& h, int parity);
Eigen::MatrixXcd many_body_hamiltonian(const gaussian::QuadraticHamiltonian& h);

GroundState many_body_ground_state(const gaussian::QuadraticHamiltonian& h,
                                   const gaussian::QuadraticHamiltonian* adiabatic_hint = nullptr);

double overlap_fidelity(const FockState& a, const FockState& b);

// xi_k |psi> with k in block ordering (alpha_1..alpha_N, beta_1..beta_N).
Eigen::VectorXcd apply_majorana(int n, int k, const Eigen::VectorXcd& psi);

gaussian::MajoranaCovariance covariance_from_state(const FockState& s);

double reduced_density_entropy(const FockState& s, const std::vector<int>& sites);

// <(-1)^N>.
double parity_expectation(const FockState& s);

} // namespace gsx::oracle
