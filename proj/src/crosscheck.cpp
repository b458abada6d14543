#include "gsx/crosscheck.hpp"

#include "gsx/error.hpp"
#include "gsx/measures.hpp"
#include "gsx/oracle.hpp"
#include "gsx/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/core.h>
#include <random>

namespace gsx::crosscheck {

using models::Kind;
using models::ModelSpec;

namespace {

constexpr Kind kKinds[] = {Kind::ssh, Kind::kitaev, Kind::rainbow, Kind::random_chain, Kind::random_chiral};

std::mt19937_64 case_rng(int index, std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(index)};
    return std::mt19937_64(seq);
}

oracle::GroundState exact(const ModelSpec& spec) {
    const auto hint = models::adiabatic_hint(spec);
    return oracle::many_body_ground_state(models::build(spec), hint ? &*hint : nullptr);
}

} // namespace

double CaseResult::worst() const {
    return std::max({fidelity, covariance, entropy, energy, parity});
}

ModelSpec random_case(int index, int n, std::uint64_t seed) {
    if (n < 2 || n % 2 != 0) throw InvalidInput(fmt::format("cross-check sizes must be even and at least 2, got {}", n));
    auto rng = case_rng(index, seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ModelSpec s;
    s.kind = kKinds[index % 5];
    s.n = n;
    // Dimerizations stay inside [-0.7, 0.7]: away from the degenerate end points.
    if (s.has_delta()) s.delta = -0.7 + 1.4 * unit(rng);
    if (s.kind == Kind::rainbow) s.h = 2.0 * unit(rng);
    if (s.is_random()) s.seed = rng();
    return s;
}

CaseResult run_case(int index, int n, std::uint64_t seed) {
    CaseResult r;
    r.index = index;
    r.model = random_case(index, n, seed);
    r.partner = r.model;
    auto rng = case_rng(index, seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (r.model.has_delta()) r.partner.delta = std::clamp(*r.model.delta + 0.2 * (unit(rng) - 0.5), -0.7, 0.7);
    if (r.model.kind == Kind::rainbow) r.partner.h = *r.model.h + 0.3 * unit(rng);
    if (r.model.is_random()) r.partner.seed = rng();

    const auto h = models::build(r.model);
    const auto gamma = models::ground_state(r.model);
    const auto gamma2 = models::ground_state(r.partner);
    const auto psi = exact(r.model);
    const auto psi2 = exact(r.partner);

    r.fidelity = std::abs(measures::fidelity(gamma, gamma2) - oracle::overlap_fidelity(psi.state, psi2.state));
    r.covariance = (gamma.gamma() - oracle::covariance_from_state(psi.state).gamma()).cwiseAbs().maxCoeff();

    std::vector<int> half(static_cast<std::size_t>(n / 2));
    for (int i = 0; i < n / 2; ++i) half[static_cast<std::size_t>(i)] = i + 1;
    std::vector<int> scattered;
    for (int i = 1; i <= n; ++i)
        if (unit(rng) < 0.5) scattered.push_back(i);
    r.entropy = std::max(std::abs(measures::entanglement_entropy(gamma, half) - oracle::reduced_density_entropy(psi.state, half)),
                         std::abs(measures::entanglement_entropy(gamma, scattered) -
                                  oracle::reduced_density_entropy(psi.state, scattered)));

    r.energy = std::max(std::abs(gaussian::ground_energy(h) - psi.energy), std::abs(gaussian::energy(h, gamma) - psi.energy));
    r.parity = std::abs(gaussian::parity(gamma) - oracle::parity_expectation(psi.state));
    return r;
}

std::vector<CaseResult> run_cases(const std::vector<int>& sizes, int cases, std::uint64_t seed, int threads) {
    if (sizes.empty()) throw InvalidInput("no sizes to check");
    if (cases < 1) throw InvalidInput(fmt::format("need at least one case, got {}", cases));
    std::vector<CaseResult> out(static_cast<std::size_t>(cases));
    sweep::parallel_for(cases, threads, [&](int i) {
        out[static_cast<std::size_t>(i)] = run_case(i, sizes[static_cast<std::size_t>(i / 5) % sizes.size()], seed);
    });
    return out;
}

} // namespace gsx::crosscheck
