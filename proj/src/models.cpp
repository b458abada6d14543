#include "gsx/models.hpp"

#include "gsx/error.hpp"

#include <cmath>
#include <complex>
#include <fmt/core.h>
#include <random>

namespace gsx::models {

using gaussian::QuadraticHamiltonian;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;

namespace {

void require_sites(int n) {
    if (n < 2) throw InvalidInput(fmt::format("chains need at least 2 sites, got {}", n));
}

// (i/4) c xi_a xi_b contributes c/2 to M_ab under H = (i/4) xi^T M xi.
void add_term(MatrixXd& m, int a, int b, double c) {
    m(a, b) += 0.5 * c;
    m(b, a) -= 0.5 * c;
}

} // namespace

std::string to_string(Kind k) {
    switch (k) {
    case Kind::ssh: return "ssh";
    case Kind::kitaev: return "kitaev";
    case Kind::rainbow: return "rainbow";
    case Kind::random_chain: return "random_chain";
    case Kind::random_chiral: return "random_chiral";
    }
    return "unknown";
}

Kind kind_from_string(const std::string& s) {
    for (Kind k : {Kind::ssh, Kind::kitaev, Kind::rainbow, Kind::random_chain, Kind::random_chiral})
        if (to_string(k) == s) return k;
    throw InvalidInput(fmt::format("unknown model '{}'", s));
}

std::vector<std::string> ModelSpec::validate() const {
    std::vector<std::string> out;
    if (n < 2) out.push_back(fmt::format("n must be at least 2, got {}", n));
    if (has_delta()) {
        if (!delta) out.push_back(fmt::format("delta is required for {}", to_string(kind)));
        else if (!(*delta >= -1.0 && *delta <= 1.0)) out.push_back(fmt::format("delta out of [-1,1]: {}", *delta));
    }
    if (kind == Kind::rainbow) {
        if (n % 2 != 0) out.push_back(fmt::format("rainbow needs an even number of sites, got {}", n));
        if (h && !(*h >= 0.0)) out.push_back(fmt::format("h must be non-negative, got {}", *h));
    }
    if (kind == Kind::random_chiral && n % 2 != 0) out.push_back(fmt::format("random_chiral needs even n, got {}", n));
    if (chiral_sign != 1 && chiral_sign != -1) out.push_back(fmt::format("chiral sign must be +1 or -1, got {}", chiral_sign));
    return out;
}

std::string ModelSpec::label() const {
    switch (kind) {
    case Kind::ssh:
    case Kind::kitaev: return fmt::format("{}:{}", to_string(kind), delta.value_or(0.0));
    case Kind::rainbow: return fmt::format("rainbow:{}", h.value_or(0.0));
    default: return to_string(kind);
    }
}

QuadraticHamiltonian ssh(int n, double delta) {
    require_sites(n);
    MatrixXd t = MatrixXd::Zero(n, n);
    for (int m = 1; m < n; ++m) {
        const double hop = -(1.0 + (m % 2 == 0 ? 1.0 : -1.0) * delta);
        t(m - 1, m) = t(m, m - 1) = hop;
    }
    return QuadraticHamiltonian::hopping(t);
}

QuadraticHamiltonian kitaev(int n, double delta) {
    require_sites(n);
    const double j = 0.5 * (1.0 + delta);
    const double h = 0.5 * (1.0 - delta);
    MatrixXcd t = MatrixXcd::Zero(n, n);
    MatrixXcd f = MatrixXcd::Zero(n, n);
    for (int m = 0; m < n; ++m) t(m, m) = 2.0 * h;
    for (int m = 0; m + 1 < n; ++m) {
        t(m, m + 1) = t(m + 1, m) = -j;
        f(m, m + 1) = -j;
        f(m + 1, m) = j;
    }
    return {t, f};
}

QuadraticHamiltonian rainbow(int l, double h) {
    if (l < 1) throw InvalidInput(fmt::format("rainbow half-length must be positive, got {}", l));
    const int n = 2 * l;
    MatrixXd t = MatrixXd::Zero(n, n);
    // Site s sits at s - L - 1/2; the bond (s, s+1) is m = s - L steps from the centre.
    for (int s = 1; s < n; ++s) {
        const int m = s - l;
        const double j = m == 0 ? std::exp(-0.5 * h) : std::exp(-h * std::abs(m));
        t(s - 1, s) = t(s, s - 1) = -j;
    }
    return QuadraticHamiltonian::hopping(t);
}

QuadraticHamiltonian random_chain(int n, std::uint64_t seed) {
    require_sites(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    MatrixXd t = MatrixXd::Zero(n, n);
    for (int m = 0; m + 1 < n; ++m) t(m, m + 1) = t(m + 1, m) = -uniform(rng);
    return QuadraticHamiltonian::hopping(t);
}

QuadraticHamiltonian random_chiral(int n, std::uint64_t seed, int sign) {
    require_sites(n);
    if (n % 2 != 0) throw InvalidInput(fmt::format("random_chiral needs an even number of sites, got {}", n));
    if (sign != 1 && sign != -1) throw InvalidInput(fmt::format("chiral sign must be +1 or -1, got {}", sign));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const double diag = std::sqrt(1.0 / n);
    const double off = std::sqrt(0.5 / n);
    MatrixXcd a = MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = diag * normal(rng);
        for (int j = i + 1; j < n; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            a(i, j) = off * std::complex<double>(re, im);
            a(j, i) = std::conj(a(i, j));
        }
    }
    // tau = diag(1, -1, 1, -1, ...); tau A tau flips entries joining opposite sublattices.
    MatrixXcd t(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double tau = (i + j) % 2 == 0 ? 1.0 : -1.0;
            t(i, j) = 0.5 * (1.0 + sign * tau) * a(i, j);
        }
    return {t, MatrixXcd::Zero(n, n)};
}

MatrixXd ssh_majorana(int n, double delta) {
    require_sites(n);
    MatrixXd m = MatrixXd::Zero(2 * n, 2 * n);
    for (int s = 1; s < n; ++s) {
        const double c = -(1.0 + (s % 2 == 0 ? 1.0 : -1.0) * delta);
        const int a = s - 1;
        add_term(m, a, n + a + 1, c);       // alpha_m beta_{m+1}
        add_term(m, n + a, a + 1, -c);      // -beta_m alpha_{m+1}
    }
    return m;
}

MatrixXd kitaev_majorana(int n, double delta) {
    require_sites(n);
    MatrixXd m = MatrixXd::Zero(2 * n, 2 * n);
    for (int s = 0; s + 1 < n; ++s) {
        add_term(m, s, n + s, 1.0 - delta);        // alpha_m beta_m
        add_term(m, n + s, s + 1, 1.0 + delta);    // beta_m alpha_{m+1}
    }
    add_term(m, n - 1, 2 * n - 1, 1.0 - delta);    // alpha_N beta_N
    return m;
}

QuadraticHamiltonian build(const ModelSpec& spec) {
    const auto problems = spec.validate();
    if (!problems.empty()) throw InvalidInput(problems.front());
    switch (spec.kind) {
    case Kind::ssh: return ssh(spec.n, *spec.delta);
    case Kind::kitaev: return kitaev(spec.n, *spec.delta);
    case Kind::rainbow: return rainbow(spec.n / 2, spec.h.value_or(0.0));
    case Kind::random_chain: return random_chain(spec.n, spec.seed.value_or(0));
    case Kind::random_chiral: return random_chiral(spec.n, spec.seed.value_or(0), spec.chiral_sign);
    }
    throw InvalidInput("unknown model kind");
}

std::optional<QuadraticHamiltonian> adiabatic_hint(const ModelSpec& spec) {
    if (!spec.has_delta() || !spec.delta) return std::nullopt;
    const double d = *spec.delta - kAdiabaticShift;
    return spec.kind == Kind::ssh ? ssh(spec.n, d) : kitaev(spec.n, d);
}

gaussian::MajoranaCovariance ground_state(const ModelSpec& spec) {
    const QuadraticHamiltonian h = build(spec);
    const auto hint = adiabatic_hint(spec);
    return gaussian::ground_state_covariance(h, hint ? &*hint : nullptr);
}

} // namespace gsx::models
