#include "gsx/error.hpp"
#include "gsx/gaussian.hpp"
#include "gsx/measures.hpp"
#include "gsx/models.hpp"
#include "gsx/oracle.hpp"
#include "helpers.hpp"

#include <Eigen/Eigenvalues>
#include <complex>
#include <doctest.h>
#include <bit>
#include <random>

using namespace gsx;
using namespace gsx::oracle;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cd = std::complex<double>;

namespace {

models::ModelSpec chain(models::Kind kind, int n, double delta) {
    models::ModelSpec s;
    s.kind = kind;
    s.n = n;
    s.delta = delta;
    return s;
}

FockState exact_ground(const models::ModelSpec& s) {
    const auto hint = models::adiabatic_hint(s);
    return many_body_ground_state(models::build(s), hint ? &*hint : nullptr).state;
}

VectorXcd random_vector(int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cd(g(rng), g(rng));
    return v.normalized();
}

} // namespace

TEST_CASE("trivial kitaev ground state is the empty bitstring") {
    const FockState s = exact_ground(chain(models::Kind::kitaev, 2, -1.0));
    CHECK(std::abs(s.amplitudes(0)) == doctest::Approx(1.0));
    CHECK(s.amplitudes.tail(3).norm() <= 1e-12);
}

TEST_CASE("two-site ssh ground state is the bonding orbital") {
    const FockState s = exact_ground(chain(models::Kind::ssh, 2, -1.0));
    // Bits 01 and 10 are indices 1 and 2.
    CHECK(std::abs(s.amplitudes(1)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(s.amplitudes(2)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(s.amplitudes(1) - s.amplitudes(2)) <= 1e-12);
    CHECK(std::abs(s.amplitudes(0)) + std::abs(s.amplitudes(3)) <= 1e-12);
}

TEST_CASE("ground energy agrees with the Nambu spectrum") {
    int cases = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
        for (auto kind : {models::Kind::random_chain, models::Kind::random_chiral}) {
            models::ModelSpec s;
            s.kind = kind;
            s.n = 2 + 2 * static_cast<int>(seed % 4);
            s.seed = seed;
            const auto h = models::build(s);
            const auto gs = many_body_ground_state(h);
            CHECK(std::abs(gs.energy - gaussian::ground_energy(h)) <= 1e-9);
            // For number-conserving chains the ground energy is the sum of negative hopping eigenvalues.
            Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(h.t(), Eigen::EigenvaluesOnly);
            double negative = 0.0;
            for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) negative += std::min(eig.eigenvalues()(k), 0.0);
            CHECK(std::abs(gs.energy - negative) <= 1e-9);
            ++cases;
        }
    CHECK(cases == 20);
    for (double delta : {-0.8, -0.2, 0.35, 0.9}) {
        const auto h = models::kitaev(6, delta);
        CHECK(std::abs(many_body_ground_state(h).energy - gaussian::ground_energy(h)) <= 1e-9);
    }
}

TEST_CASE("overlap fidelity examples") {
    const FockState a{3, random_vector(8, 1)};
    CHECK(overlap_fidelity(a, a) == doctest::Approx(1.0));
    CHECK(overlap_fidelity(basis_state(3, 1), basis_state(3, 2)) == 0.0);
    CHECK(overlap_fidelity(basis_state(3, 5), basis_state(3, 5)) == 1.0);
    CHECK_THROWS_AS(overlap_fidelity(basis_state(2, 0), basis_state(3, 0)), DimensionError);
    CHECK_THROWS_AS(basis_state(2, 4), InvalidInput);
}

TEST_CASE("covariance of basis states") {
    for (int n : {1, 3, 6}) {
        CHECK(gsx::testing::max_abs_diff(covariance_from_state(basis_state(n, 0)).gamma(), gaussian::fock_vacuum(n).gamma()) <= 1e-15);
        CHECK(gsx::testing::max_abs_diff(covariance_from_state(basis_state(n, (1u << n) - 1)).gamma(),
                                         gaussian::fully_occupied(n).gamma()) <= 1e-15);
    }
}

TEST_CASE("covariance of a random chain ground state") {
    models::ModelSpec s;
    s.kind = models::Kind::random_chain;
    s.n = 6;
    s.seed = 11;
    CHECK(gsx::testing::max_abs_diff(covariance_from_state(exact_ground(s)).gamma(), models::ground_state(s).gamma()) <= 1e-9);
}

TEST_CASE("non-gaussian states are rejected") {
    VectorXcd cat = VectorXcd::Zero(16);
    cat(0) = cat(15) = 1.0 / std::sqrt(2.0);
    CHECK_THROWS_AS(covariance_from_state(FockState{4, cat}), NonGaussianState);
}

TEST_CASE("majorana operators satisfy the Clifford relations") {
    const int n = 4;
    const VectorXcd psi = random_vector(1 << n, 3);
    for (int k = 0; k < 2 * n; ++k)
        for (int l = 0; l < 2 * n; ++l) {
            const VectorXcd anti = apply_majorana(n, k, apply_majorana(n, l, psi)) + apply_majorana(n, l, apply_majorana(n, k, psi));
            const VectorXcd want = k == l ? VectorXcd(2.0 * psi) : VectorXcd::Zero(1 << n);
            CHECK((anti - want).norm() <= 1e-12);
        }
    CHECK_THROWS_AS(apply_majorana(n, 8, psi), InvalidInput);
}

TEST_CASE("reduced density entropy examples") {
    CHECK(reduced_density_entropy(basis_state(4, 0b0101), {1, 2}) == doctest::Approx(0.0));
    VectorXcd bell = VectorXcd::Zero(4);
    bell(1) = bell(2) = 1.0 / std::sqrt(2.0);
    CHECK(reduced_density_entropy(FockState{2, bell}, {1}) == doctest::Approx(std::log(2.0)));
    CHECK(reduced_density_entropy(FockState{2, bell}, {2}) == doctest::Approx(std::log(2.0)));
    // Kitaev N = 8, delta = 1: central bond plus edge pair across the half cut.
    const FockState k = exact_ground(chain(models::Kind::kitaev, 8, 1.0));
    CHECK(reduced_density_entropy(k, {1, 2, 3, 4}) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK_THROWS_AS(reduced_density_entropy(k, {9}), InvalidInput);
    CHECK_THROWS_AS(reduced_density_entropy(k, {1, 1}), InvalidInput);
}

TEST_CASE("fermionic reordering handles scattered subsystems") {
    // Gaussian entropy on non-contiguous sets must match the exact value.
    const auto spec = chain(models::Kind::kitaev, 6, 0.3);
    const FockState s = exact_ground(spec);
    const auto g = models::ground_state(spec);
    for (const auto& a : {std::vector<int>{1, 3, 5}, std::vector<int>{2, 6}, std::vector<int>{4}})
        CHECK(std::abs(reduced_density_entropy(s, a) - measures::entanglement_entropy(g, a)) <= 1e-9);
}

TEST_CASE("parity of exact ground states matches the Pfaffian parity") {
    for (auto kind : {models::Kind::ssh, models::Kind::kitaev})
        for (double delta : {-1.0, -0.3, 0.4, 1.0})
            for (int n : {3, 4, 5}) {
                const auto spec = chain(kind, n, delta);
                CAPTURE(spec.label());
                CAPTURE(n);
                CHECK(parity_expectation(exact_ground(spec)) == doctest::Approx(gaussian::parity(models::ground_state(spec))).epsilon(1e-10));
            }
}

TEST_CASE("sector and full many-body hamiltonians") {
    const auto h = models::kitaev(4, 0.2);
    const MatrixXcd even = sector_hamiltonian(h, 0);
    const MatrixXcd odd = sector_hamiltonian(h, 1);
    CHECK(even.rows() == 8);
    CHECK(odd.rows() == 8);
    CHECK((even - even.adjoint()).norm() <= 1e-12);
    const MatrixXcd full = many_body_hamiltonian(h);
    CHECK(full.rows() == 16);
    CHECK((full - full.adjoint()).norm() <= 1e-12);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(full, Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues()(0) == doctest::Approx(gaussian::ground_energy(h)).epsilon(1e-12));
}

TEST_CASE("oracle capacity") {
    CHECK_THROWS_AS(many_body_ground_state(models::ssh(13, 0.0)), CapacityError);
    CHECK_NOTHROW(sector_hamiltonian(models::ssh(4, 0.0), 0));
}

TEST_CASE("degenerate ground spaces follow the adiabatic convention") {
    const auto spec = chain(models::Kind::kitaev, 6, 1.0);
    const auto hint = models::adiabatic_hint(spec);
    const auto gs = many_body_ground_state(models::build(spec), &*hint);
    CHECK(gs.degeneracy == 2);
    CHECK(gsx::testing::max_abs_diff(covariance_from_state(gs.state).gamma(), models::ground_state(spec).gamma()) <= 1e-9);
}

TEST_CASE("odd chiral chains leave the unpaired zero mode empty") {
    for (double delta : {-0.5, 0.4, 1.0}) {
        const auto spec = chain(models::Kind::ssh, 5, delta);
        const FockState s = exact_ground(spec);
        CHECK(gsx::testing::max_abs_diff(covariance_from_state(s).gamma(), models::ground_state(spec).gamma()) <= 1e-9);
        double particles = 0.0;
        for (Eigen::Index b = 0; b < s.amplitudes.size(); ++b)
            particles += std::popcount(static_cast<std::uint32_t>(b)) * std::norm(s.amplitudes(b));
        CHECK(particles == doctest::Approx(2.0));
    }
}
