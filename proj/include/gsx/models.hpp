#pragma once

#include "gsx/gaussian.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gsx::models {

enum class Kind { ssh, kitaev, rainbow, random_chain, random_chiral };

std::string to_string(Kind k);
Kind kind_from_string(const std::string& s);

struct ModelSpec {
    Kind kind = Kind::ssh;
    int n = 2;                          // sites (rainbow: 2L)
    std::optional<double> delta;        // ssh, kitaev
    std::optional<double> h;            // rainbow
    std::optional<std::uint64_t> seed;  // random kinds
    int chiral_sign = -1;               // random_chiral projection sign

    bool has_delta() const { return kind == Kind::ssh || kind == Kind::kitaev; }
    bool is_random() const { return kind == Kind::random_chain || kind == Kind::random_chiral; }

    // Every violated invariant, empty when valid.
    std::vector<std::string> validate() const;
    std::string label() const;
};

gaussian::QuadraticHamiltonian ssh(int n, double delta);
gaussian::QuadraticHamiltonian kitaev(int n, double delta);
gaussian::QuadraticHamiltonian rainbow(int l, double h);
gaussian::QuadraticHamiltonian random_chain(int n, std::uint64_t seed);
gaussian::QuadraticHamiltonian random_chiral(int n, std::uint64_t seed, int sign = -1);

// Majorana matrices assembled directly from the Majorana-chain forms.
Eigen::MatrixXd ssh_majorana(int n, double delta);
Eigen::MatrixXd kitaev_majorana(int n, double delta);

gaussian::QuadraticHamiltonian build(const ModelSpec& spec);

// Same model at delta - 1e-9, used to lift zero-mode degeneracies; empty for other kinds.
std::optional<gaussian::QuadraticHamiltonian> adiabatic_hint(const ModelSpec& spec);

gaussian::MajoranaCovariance ground_state(const ModelSpec& spec);

constexpr double kAdiabaticShift = 1e-9;

} // namespace gsx::models
