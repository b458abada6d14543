#include "gsx/oracle.hpp"

#include "gsx/error.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <fmt/core.h>

namespace gsx::oracle {

using cd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using gaussian::QuadraticHamiltonian;

namespace {

constexpr double kDegeneracyTol = 1e-10;

void require_capacity(int n) {
    if (n < 1 || n > kMaxModes) throw CapacityError(fmt::format("oracle capped at n <= {}, got {}", kMaxModes, n));
}

// Sign picked up by c_i or c_i^+ passing the occupied modes before i.
double jw_sign(std::uint32_t bits, int i) {
    return std::popcount(bits & ((1u << i) - 1u)) % 2 == 0 ? 1.0 : -1.0;
}

bool annihilate(int i, std::uint32_t& bits, double& sign) {
    if (!(bits >> i & 1u)) return false;
    sign *= jw_sign(bits, i);
    bits ^= 1u << i;
    return true;
}

bool create(int i, std::uint32_t& bits, double& sign) {
    if (bits >> i & 1u) return false;
    sign *= jw_sign(bits, i);
    bits ^= 1u << i;
    return true;
}

std::vector<std::uint32_t> sector_states(int n, int parity) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t b = 0; b < (1u << n); ++b)
        if (std::popcount(b) % 2 == parity) out.push_back(b);
    return out;
}

// Applies H to the basis state |bits>, accumulating into emit(target, amplitude).
template <class Emit>
void apply_hamiltonian(const QuadraticHamiltonian& h, std::uint32_t bits, Emit emit) {
    const int n = h.n_modes();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cd t = h.t()(i, j);
            if (t != 0.0) {
                std::uint32_t b = bits;
                double s = 1.0;
                if (annihilate(j, b, s) && create(i, b, s)) emit(b, t * s);
            }
            const cd f = h.f()(i, j);
            if (f != 0.0) {
                std::uint32_t b = bits;
                double s = 1.0;
                if (create(j, b, s) && create(i, b, s)) emit(b, 0.5 * f * s);
                b = bits;
                s = 1.0;
                // (F_ij c_i^+ c_j^+)^+ = F_ij^* c_j c_i: c_i acts first.
                if (annihilate(i, b, s) && annihilate(j, b, s)) emit(b, 0.5 * std::conj(f) * s);
            }
        }
}

// (-i xi_a xi_b)(-i xi_c xi_d)... over consecutive pairs of the order.
VectorXcd apply_sector_parity(int n, const std::vector<int>& order, VectorXcd v) {
    for (std::size_t k = 0; k + 1 < order.size(); k += 2)
        v = cd(0.0, -1.0) * apply_majorana(n, order[k], apply_majorana(n, order[k + 1], v));
    return v;
}

// Restricts the columns of v to the eigenspace of a Hermitian operator on their span.
MatrixXcd select(const MatrixXcd& v, const MatrixXcd& ov, double value) {
    const MatrixXcd s = v.adjoint() * ov;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(0.5 * (s + s.adjoint()));
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k)
        if (std::abs(eig.eigenvalues()(k) - value) < 1e-6) keep.push_back(k);
    MatrixXcd out(v.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = v * eig.eigenvectors().col(keep[k]);
    return out;
}

// Global phase fixed by making the largest amplitude real and positive.
VectorXcd canonical_phase(VectorXcd v) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    v *= std::conj(v(k)) / std::abs(v(k));
    return v / v.norm();
}

} // namespace

FockState basis_state(int n, std::uint32_t bits) {
    require_capacity(n);
    if (bits >= (1u << n)) throw InvalidInput(fmt::format("bitstring {} outside {} modes", bits, n));
    FockState s{n, VectorXcd::Zero(1 << n)};
    s.amplitudes(bits) = 1.0;
    return s;
}

MatrixXcd sector_hamiltonian(const QuadraticHamiltonian& h, int parity) {
    const int n = h.n_modes();
    require_capacity(n);
    const auto states = sector_states(n, parity);
    std::vector<int> index(1u << n, -1);
    for (std::size_t k = 0; k < states.size(); ++k) index[states[k]] = static_cast<int>(k);
    const auto dim = static_cast<Eigen::Index>(states.size());
    MatrixXcd m = MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col)
        apply_hamiltonian(h, states[col], [&](std::uint32_t b, cd a) { m(index[b], col) += a; });
    return m;
}

MatrixXcd many_body_hamiltonian(const QuadraticHamiltonian& h) {
    const int n = h.n_modes();
    require_capacity(n);
    const Eigen::Index dim = Eigen::Index{1} << n;
    MatrixXcd m = MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col)
        apply_hamiltonian(h, static_cast<std::uint32_t>(col), [&](std::uint32_t b, cd a) { m(b, col) += a; });
    return m;
}

GroundState many_body_ground_state(const QuadraticHamiltonian& h, const QuadraticHamiltonian* adiabatic_hint) {
    const int n = h.n_modes();
    require_capacity(n);
    const Eigen::Index full = Eigen::Index{1} << n;

    struct Level {
        double e;
        VectorXcd v;
    };
    std::vector<Level> levels;
    for (int p = 0; p < 2; ++p) {
        const auto states = sector_states(n, p);
        Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(sector_hamiltonian(h, p));
        if (eig.info() != Eigen::Success) throw NumericError("many-body diagonalization failed");
        for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
            VectorXcd v = VectorXcd::Zero(full);
            for (std::size_t r = 0; r < states.size(); ++r) v(states[r]) = eig.eigenvectors()(static_cast<Eigen::Index>(r), k);
            levels.push_back({eig.eigenvalues()(k), std::move(v)});
        }
    }
    const double e0 = std::min_element(levels.begin(), levels.end(), [](auto& a, auto& b) { return a.e < b.e; })->e;
    std::vector<const Level*> ground;
    for (const auto& l : levels)
        if (l.e <= e0 + kDegeneracyTol * std::max(1.0, std::abs(e0))) ground.push_back(&l);

    MatrixXcd v(full, static_cast<Eigen::Index>(ground.size()));
    for (std::size_t k = 0; k < ground.size(); ++k) v.col(static_cast<Eigen::Index>(k)) = ground[k]->v;
    const int degeneracy = static_cast<int>(ground.size());

    if (v.cols() > 1) {
        for (const auto& sector : gaussian::parity_sectors(adiabatic_hint ? *adiabatic_hint : h)) {
            if (sector.target == 0 || v.cols() == 1) continue;
            MatrixXcd pv(full, v.cols());
            for (Eigen::Index k = 0; k < v.cols(); ++k) pv.col(k) = apply_sector_parity(n, sector.majoranas, v.col(k));
            v = select(v, pv, sector.target);
            if (v.cols() == 0) throw NumericError("no ground state carries the required cluster parities");
        }
        if (v.cols() > 1 && h.number_conserving()) {
            // An unpaired Dirac zero mode is left empty: keep the lowest particle number.
            MatrixXcd nv(full, v.cols());
            for (Eigen::Index k = 0; k < v.cols(); ++k)
                for (Eigen::Index b = 0; b < full; ++b) nv(b, k) = static_cast<double>(std::popcount(static_cast<std::uint32_t>(b))) * v(b, k);
            const MatrixXcd s = v.adjoint() * nv;
            Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(0.5 * (s + s.adjoint()), Eigen::EigenvaluesOnly);
            v = select(v, nv, eig.eigenvalues()(0));
        }
        if (v.cols() > 1) throw NumericError(fmt::format("unresolved {}-fold ground-state degeneracy", v.cols()));
    }
    GroundState out;
    out.state = {n, canonical_phase(v.col(0))};
    out.energy = e0;
    out.degeneracy = degeneracy;
    return out;
}

double overlap_fidelity(const FockState& a, const FockState& b) {
    if (a.n != b.n || a.amplitudes.size() != b.amplitudes.size())
        throw DimensionError(fmt::format("overlap of {}- and {}-mode states", a.n, b.n));
    return std::norm(a.amplitudes.dot(b.amplitudes));
}

VectorXcd apply_majorana(int n, int k, const VectorXcd& psi) {
    if (k < 0 || k >= 2 * n) throw InvalidInput(fmt::format("Majorana index {} outside 0..{}", k, 2 * n - 1));
    const int site = k % n;
    const bool beta = k >= n;
    VectorXcd out = VectorXcd::Zero(psi.size());
    for (Eigen::Index b = 0; b < psi.size(); ++b) {
        if (psi(b) == 0.0) continue;
        const auto bits = static_cast<std::uint32_t>(b);
        const bool occupied = bits >> site & 1u;
        cd factor = jw_sign(bits, site);
        if (beta) factor *= occupied ? cd(0.0, -1.0) : cd(0.0, 1.0);
        out(bits ^ (1u << site)) += factor * psi(b);
    }
    return out;
}

gaussian::MajoranaCovariance covariance_from_state(const FockState& s) {
    const int n = s.n;
    require_capacity(n);
    MatrixXcd phi(s.amplitudes.size(), 2 * n);
    for (int k = 0; k < 2 * n; ++k) phi.col(k) = apply_majorana(n, k, s.amplitudes);
    Eigen::MatrixXd g = (phi.adjoint() * phi).imag();
    g.diagonal().setZero();
    g = 0.5 * (g - g.transpose()).eval();
    const double impurity = (g * g + Eigen::MatrixXd::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff();
    if (impurity > 1e-6) throw NonGaussianState(fmt::format("state is not Gaussian (|G^2 + 1| = {:.3g})", impurity));
    return gaussian::MajoranaCovariance(g, 1e-6);
}

double reduced_density_entropy(const FockState& s, const std::vector<int>& sites) {
    const int n = s.n;
    require_capacity(n);
    std::vector<char> in(n, 0);
    for (int site : sites) {
        if (site < 1 || site > n) throw InvalidInput(fmt::format("site {} outside 1..{}", site, n));
        if (in[site - 1]) throw InvalidInput(fmt::format("site {} listed twice", site));
        in[site - 1] = 1;
    }
    // New mode order: the subsystem first, then the rest, each ascending.
    std::vector<int> order;
    for (int i = 0; i < n; ++i)
        if (in[i]) order.push_back(i);
    const int na = static_cast<int>(order.size());
    for (int i = 0; i < n; ++i)
        if (!in[i]) order.push_back(i);
    if (na == 0 || na == n) return 0.0;

    const Eigen::Index da = Eigen::Index{1} << na;
    const Eigen::Index db = Eigen::Index{1} << (n - na);
    MatrixXcd m = MatrixXcd::Zero(da, db);
    for (Eigen::Index b = 0; b < s.amplitudes.size(); ++b) {
        if (s.amplitudes(b) == 0.0) continue;
        std::uint32_t nb = 0;
        int inversions = 0;
        std::vector<int> occupied_new;
        for (int p = 0; p < n; ++p)
            if (b >> order[p] & 1) {
                nb |= 1u << p;
                for (int q : occupied_new)
                    if (order[q] > order[p]) ++inversions;
                occupied_new.push_back(p);
            }
        const double sign = inversions % 2 == 0 ? 1.0 : -1.0;
        m(nb & (da - 1), nb >> na) += sign * s.amplitudes(b);
    }
    const MatrixXcd rho = da <= db ? MatrixXcd(m * m.adjoint()) : MatrixXcd(m.adjoint() * m);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(rho, Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
        const double p = eig.eigenvalues()(k);
        if (p > 0.0) entropy -= p * std::log(p);
    }
    return entropy;
}

double parity_expectation(const FockState& s) {
    double p = 0.0;
    for (Eigen::Index b = 0; b < s.amplitudes.size(); ++b)
        p += (std::popcount(static_cast<std::uint32_t>(b)) % 2 == 0 ? 1.0 : -1.0) * std::norm(s.amplitudes(b));
    return p;
}

} // namespace gsx::oracle
