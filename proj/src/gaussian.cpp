#include "gsx/gaussian.hpp"

#include "gsx/error.hpp"
#include "gsx/skewlin.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <fmt/core.h>
#include <numeric>
#include <optional>
#include <random>

namespace gsx::gaussian {

using cd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

constexpr double kHamiltonianTol = 1e-12;
constexpr double kParticleHoleTol = 1e-9;

MatrixXd antisymmetrized(const MatrixXd& a) {
    return 0.5 * (a - a.transpose());
}

double purity_error(const MatrixXd& g) {
    return (g * g + MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

// U^{-1} = [[1, 1], [-i, i]] maps Nambu amplitudes to Majorana ones.
MatrixXcd nambu_to_majorana(Eigen::Index n) {
    MatrixXcd u = MatrixXcd::Zero(2 * n, 2 * n);
    const cd i(0.0, 1.0);
    for (Eigen::Index k = 0; k < n; ++k) {
        u(k, k) = 1.0;
        u(k, n + k) = 1.0;
        u(n + k, k) = -i;
        u(n + k, n + k) = i;
    }
    return u;
}

// Connected clusters of a symmetric coupling pattern, each listed breadth-first
// from its least-connected member so that chains come out in path order.
std::vector<std::vector<int>> clusters(const std::vector<std::vector<int>>& adjacency) {
    const int n = static_cast<int>(adjacency.size());
    std::vector<int> label(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (label[s] >= 0) continue;
        std::vector<int> members;
        std::deque<int> queue{s};
        label[s] = static_cast<int>(out.size());
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            members.push_back(v);
            for (int w : adjacency[v])
                if (label[w] < 0) {
                    label[w] = label[s];
                    queue.push_back(w);
                }
        }
        const int root = *std::min_element(members.begin(), members.end(), [&](int a, int b) {
            return adjacency[a].size() != adjacency[b].size() ? adjacency[a].size() < adjacency[b].size() : a < b;
        });
        std::vector<int> order;
        std::vector<char> seen(n, 0);
        queue = {root};
        seen[root] = 1;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (int w : adjacency[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
        }
        out.push_back(std::move(order));
    }
    return out;
}

template <class Matrix>
std::vector<std::vector<int>> nonzero_pattern(const Matrix& m) {
    std::vector<std::vector<int>> adj(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j && std::abs(m(i, j)) > 0.0) adj[i].push_back(static_cast<int>(j));
    return adj;
}

MatrixXd submatrix(const MatrixXd& a, const std::vector<int>& idx) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    MatrixXd out(k, k);
    for (Eigen::Index r = 0; r < k; ++r)
        for (Eigen::Index c = 0; c < k; ++c) out(r, c) = a(idx[r], idx[c]);
    return out;
}

int pfaffian_sign(const MatrixXd& a) {
    return skewlin::pfaffian_signed_log(skewlin::SkewMatrix(antisymmetrized(a))).sign;
}

// A localized zero mode: real Majorana vector or complex Dirac orbital.
template <class Vector>
struct Mode {
    Vector v;
    double position;
    int cluster;
};

// Splits the kernel spanned by the columns of z into pieces supported on each
// cluster and diagonalizes the position operator inside each piece.
template <class Matrix, class Vector>
std::vector<Mode<Vector>> localize(const Matrix& z, const std::vector<std::vector<int>>& cls,
                                   const std::vector<double>& position) {
    std::vector<Mode<Vector>> out;
    for (std::size_t c = 0; c < cls.size(); ++c) {
        const auto& rows = cls[c];
        Matrix y(static_cast<Eigen::Index>(rows.size()), z.cols());
        for (std::size_t r = 0; r < rows.size(); ++r) y.row(static_cast<Eigen::Index>(r)) = z.row(rows[r]);
        Eigen::JacobiSVD<Matrix> svd(y, Eigen::ComputeThinU);
        Eigen::Index rank = 0;
        while (rank < svd.singularValues().size() && svd.singularValues()(rank) > 0.5) ++rank;
        if (rank == 0) continue;
        const Matrix w = svd.matrixU().leftCols(rank);
        VectorXd p(static_cast<Eigen::Index>(rows.size()));
        for (std::size_t r = 0; r < rows.size(); ++r) p(static_cast<Eigen::Index>(r)) = position[rows[r]];
        const Matrix x = w.adjoint() * p.asDiagonal() * w;
        Eigen::SelfAdjointEigenSolver<Matrix> eig(x);
        const Matrix local = w * eig.eigenvectors();
        for (Eigen::Index a = 0; a < rank; ++a) {
            Vector full = Vector::Zero(z.rows());
            for (std::size_t r = 0; r < rows.size(); ++r) full(rows[r]) = local(static_cast<Eigen::Index>(r), a);
            out.push_back({full, eig.eigenvalues()(a), static_cast<int>(c)});
        }
    }
    return out;
}

// Outermost-first pairing inside each cluster, then the remainder across
// clusters in order of position.
template <class Vector>
std::vector<std::pair<Vector, Vector>> pair_modes(const std::vector<Mode<Vector>>& modes) {
    std::vector<std::pair<Vector, Vector>> pairs;
    std::vector<const Mode<Vector>*> rest;
    std::size_t i = 0;
    while (i < modes.size()) {
        std::size_t j = i;
        while (j < modes.size() && modes[j].cluster == modes[i].cluster) ++j;
        std::size_t lo = i, hi = j;
        while (hi - lo >= 2) {
            pairs.emplace_back(modes[lo].v, modes[hi - 1].v);
            ++lo;
            --hi;
        }
        if (hi - lo == 1) rest.push_back(&modes[lo]);
        i = j;
    }
    std::stable_sort(rest.begin(), rest.end(), [](auto* a, auto* b) { return a->position < b->position; });
    for (std::size_t k = 0; k + 1 < rest.size(); k += 2) pairs.emplace_back(rest[k]->v, rest[k + 1]->v);
    return pairs;
}

std::vector<double> majorana_positions(int n) {
    std::vector<double> pos(2 * n);
    for (int i = 0; i < n; ++i) pos[i] = pos[n + i] = i + 1;
    return pos;
}

int mismatches(const MatrixXd& g, const std::vector<ParitySector>& sectors) {
    int bad = 0;
    for (const auto& s : sectors)
        if (s.target != 0 && pfaffian_sign(submatrix(g, s.majoranas)) != s.target) ++bad;
    return bad;
}

// Polar projection back onto Gamma^2 = -1 when eigenvector mixing across a
// tiny gap has left the matrix slightly impure.
MatrixXd purify(const MatrixXd& g) {
    if (purity_error(g) <= 1e-12) return g;
    const cd i(0.0, 1.0);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(i * g.cast<cd>());
    const VectorXd s = eig.eigenvalues().unaryExpr([](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); });
    const MatrixXcd ig = eig.eigenvectors() * s.asDiagonal() * eig.eigenvectors().adjoint();
    return antisymmetrized((-i * ig).real());
}

MatrixXd number_conserving_ground_state(const QuadraticHamiltonian& h, const QuadraticHamiltonian& pattern) {
    const int n = h.n_modes();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(h.t());
    if (eig.info() != Eigen::Success) throw NumericError("hopping-matrix diagonalization failed");
    const VectorXd& w = eig.eigenvalues();

    std::vector<VectorXcd> filled;
    std::vector<int> zero;
    for (int k = 0; k < n; ++k) {
        if (w(k) < -kZeroModeTol) filled.push_back(eig.eigenvectors().col(k));
        else if (w(k) <= kZeroModeTol) zero.push_back(k);
    }

    std::vector<std::pair<VectorXcd, VectorXcd>> pairs;
    if (!zero.empty()) {
        MatrixXcd z(n, static_cast<Eigen::Index>(zero.size()));
        for (std::size_t k = 0; k < zero.size(); ++k) z.col(static_cast<Eigen::Index>(k)) = eig.eigenvectors().col(zero[k]);
        MatrixXcd coupling = pattern.t().cwiseAbs().cast<cd>() + pattern.f().cwiseAbs().cast<cd>();
        std::vector<double> pos(n);
        std::iota(pos.begin(), pos.end(), 1.0);
        pairs = pair_modes(localize<MatrixXcd, VectorXcd>(z, clusters(nonzero_pattern(coupling)), pos));
    }

    std::vector<int> sign(pairs.size(), 1);
    auto assemble = [&] {
        CorrelationData d{MatrixXcd::Zero(n, n), MatrixXcd::Zero(n, n)};
        auto add = [&](const VectorXcd& u) { d.c += u.conjugate() * u.transpose(); };
        for (const auto& u : filled) add(u);
        for (std::size_t p = 0; p < pairs.size(); ++p)
            add((pairs[p].first + static_cast<double>(sign[p]) * pairs[p].second) / std::sqrt(2.0));
        return covariance_from_correlations(d).gamma();
    };

    MatrixXd g = assemble();
    if (pairs.empty()) return g;
    const auto sectors = parity_sectors(pattern);
    int bad = mismatches(g, sectors);
    for (std::size_t p = 0; p < pairs.size() && bad > 0; ++p) {
        sign[p] = -sign[p];
        MatrixXd trial = assemble();
        const int now = mismatches(trial, sectors);
        if (now < bad) {
            g = std::move(trial);
            bad = now;
        } else {
            sign[p] = -sign[p];
        }
    }
    return g;
}

// Adds the zero-mode pairs of an orthonormal real kernel to g, following the adiabatic
// pattern, then flips one pair per sector whose parity misses its Pfaffian target.
MatrixXd resolve_zero_modes(MatrixXd g, const MatrixXd& kernel, const QuadraticHamiltonian& pattern) {
    const int n = pattern.n_modes();
    const MatrixXd m = majorana_matrix(pattern);
    const auto cls = clusters(nonzero_pattern(m));
    const auto pairs = pair_modes(localize<MatrixXd, VectorXd>(kernel, cls, majorana_positions(n)));
    for (const auto& [a, b] : pairs) g += a * b.transpose() - b * a.transpose();

    const auto sectors = parity_sectors(pattern);
    for (const auto& s : sectors) {
        if (s.target == 0 || pfaffian_sign(submatrix(g, s.majoranas)) == s.target) continue;
        std::vector<char> inside(2 * n, 0);
        for (int k : s.majoranas) inside[k] = 1;
        auto weight = [&](const VectorXd& v) {
            double x = 0.0;
            for (int k = 0; k < 2 * n; ++k)
                if (inside[k]) x += v(k) * v(k);
            return x;
        };
        for (const auto& [a, b] : pairs)
            if (weight(a) > 0.5 && weight(b) > 0.5) {
                g -= 2.0 * (a * b.transpose() - b * a.transpose());
                break;
            }
    }
    return purify(g);
}

MatrixXd bdg_ground_state(const QuadraticHamiltonian& h, const QuadraticHamiltonian& pattern) {
    const int n = h.n_modes();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(h.nambu());
    if (eig.info() != Eigen::Success) throw NumericError("Nambu-matrix diagonalization failed");
    const VectorXd& w = eig.eigenvalues();
    for (int k = 0; k < n; ++k) {
        const double asym = std::abs(w(k) + w(2 * n - 1 - k));
        if (asym > kParticleHoleTol)
            throw InvalidInput(fmt::format("Nambu spectrum is not particle-hole symmetric (deviation {:.3g})", asym));
    }

    std::vector<int> positive, zero;
    for (int k = 0; k < 2 * n; ++k) {
        if (w(k) > kZeroModeTol) positive.push_back(k);
        else if (w(k) >= -kZeroModeTol) zero.push_back(k);
    }
    MatrixXcd vp(2 * n, static_cast<Eigen::Index>(positive.size()));
    for (std::size_t k = 0; k < positive.size(); ++k) vp.col(static_cast<Eigen::Index>(k)) = eig.eigenvectors().col(positive[k]);
    const MatrixXcd u = nambu_to_majorana(n);
    const MatrixXcd uv = u * vp;
    MatrixXd g = antisymmetrized((uv * uv.adjoint()).imag());

    if (zero.empty()) return purify(g);

    MatrixXcd zm(2 * n, static_cast<Eigen::Index>(zero.size()));
    for (std::size_t k = 0; k < zero.size(); ++k) zm.col(static_cast<Eigen::Index>(k)) = u * eig.eigenvectors().col(zero[k]);
    MatrixXd stacked(2 * n, 2 * zm.cols());
    stacked << zm.real(), zm.imag();
    Eigen::JacobiSVD<MatrixXd> svd(stacked, Eigen::ComputeThinU);
    const VectorXd& sv = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > 1e-6 * sv(0)) ++rank;
    const MatrixXd kernel = svd.matrixU().leftCols(rank);

    return resolve_zero_modes(std::move(g), kernel, pattern);
}

} // namespace

QuadraticHamiltonian::QuadraticHamiltonian(MatrixXcd t, MatrixXcd f) : t_(std::move(t)), f_(std::move(f)) {
    if (t_.rows() == 0 || t_.rows() != t_.cols() || f_.rows() != t_.rows() || f_.cols() != t_.cols())
        throw DimensionError(fmt::format("T ({}x{}) and F ({}x{}) must be equal nonempty squares", t_.rows(), t_.cols(), f_.rows(), f_.cols()));
    const double herm = (t_ - t_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHamiltonianTol) throw InvalidInput(fmt::format("hopping matrix is not Hermitian (deviation {:.3g})", herm));
    const double anti = (f_ + f_.transpose()).cwiseAbs().maxCoeff();
    if (anti > kHamiltonianTol) throw InvalidInput(fmt::format("pairing matrix is not antisymmetric (deviation {:.3g})", anti));
    t_ = 0.5 * (t_ + t_.adjoint()).eval();
    f_ = 0.5 * (f_ - f_.transpose()).eval();
}

QuadraticHamiltonian QuadraticHamiltonian::hopping(const MatrixXd& t) {
    return {t.cast<cd>(), MatrixXcd::Zero(t.rows(), t.cols())};
}

MatrixXcd QuadraticHamiltonian::nambu() const {
    const auto n = t_.rows();
    MatrixXcd h(2 * n, 2 * n);
    h << t_, f_, -f_.conjugate(), -t_.conjugate();
    return h;
}

MajoranaCovariance::MajoranaCovariance(const MatrixXd& gamma, double purity_tol) {
    if (gamma.rows() != gamma.cols() || gamma.rows() == 0 || gamma.rows() % 2 != 0)
        throw DimensionError(fmt::format("covariance must be a nonempty even square matrix, got {}x{}", gamma.rows(), gamma.cols()));
    const double asym = (gamma + gamma.transpose()).cwiseAbs().maxCoeff();
    if (asym > 2e-10) throw InvalidInput(fmt::format("covariance is not antisymmetric (deviation {:.3g})", asym));
    gamma_ = antisymmetrized(gamma);
    const double impurity = purity_error(gamma_);
    if (impurity > purity_tol) throw InvalidInput(fmt::format("covariance is not pure (|G^2 + 1| = {:.3g})", impurity));
}

void CorrelationData::validate() const {
    if (c.rows() == 0 || c.rows() != c.cols() || g.rows() != c.rows() || g.cols() != c.cols())
        throw DimensionError("correlation matrices must be equal nonempty squares");
    if ((c - c.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw InvalidInput("C is not Hermitian");
    if ((g + g.transpose()).cwiseAbs().maxCoeff() > 1e-10) throw InvalidInput("G is not antisymmetric");
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-8 || eig.eigenvalues().maxCoeff() > 1.0 + 1e-8)
        throw InvalidInput("occupations of C fall outside [0, 1]");
}

MajoranaCovariance fock_vacuum(int n) {
    if (n < 1) throw InvalidInput(fmt::format("number of modes must be positive, got {}", n));
    MatrixXd g = MatrixXd::Zero(2 * n, 2 * n);
    g.topRightCorner(n, n).setIdentity();
    g.bottomLeftCorner(n, n) = -MatrixXd::Identity(n, n);
    return MajoranaCovariance(g);
}

MajoranaCovariance fully_occupied(int n) {
    return MajoranaCovariance(-fock_vacuum(n).gamma());
}

MajoranaCovariance covariance_from_correlations(const CorrelationData& data) {
    data.validate();
    const auto n = data.c.rows();
    const cd i(0.0, 1.0);
    const MatrixXcd one = MatrixXcd::Identity(n, n);
    const MatrixXcd& c = data.c;
    const MatrixXcd& g = data.g;
    MatrixXcd ig(2 * n, 2 * n);
    ig << c - c.transpose() + g - g.conjugate(), i * (one - (c + c.transpose() + g + g.conjugate())),
        -i * (one - (c + c.transpose() - g - g.conjugate())), c - c.transpose() + g.conjugate() - g;
    const MatrixXcd gamma = -i * ig;
    const double residue = gamma.imag().cwiseAbs().maxCoeff();
    if (residue > 1e-10) throw NumericError(fmt::format("assembled covariance has imaginary residue {:.3g}", residue));
    return MajoranaCovariance(gamma.real());
}

namespace {

// Real couplings only couple alpha to beta Majoranas through B = T - F, whose singular
// values are the quasiparticle energies. The gapped part of the ground state is then
// the polar factor of B, and the null singular vectors span the Majorana kernel.
// Complex couplings and number-conserving zero modes take the general routes.
std::optional<MatrixXd> real_ground_state(const QuadraticHamiltonian& h, const QuadraticHamiltonian& pattern) {
    if (!h.t().imag().isZero(0.0) || !h.f().imag().isZero(0.0)) return std::nullopt;
    const int n = h.n_modes();
    const MatrixXd b = h.t().real() - h.f().real();
    Eigen::BDCSVD<MatrixXd> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const VectorXd& sv = svd.singularValues();
    Eigen::Index gapped = 0;
    while (gapped < n && sv(gapped) > kZeroModeTol) ++gapped;
    if (gapped < n && h.number_conserving()) return std::nullopt;

    MatrixXd g = MatrixXd::Zero(2 * n, 2 * n);
    g.topRightCorner(n, n) = svd.matrixU().leftCols(gapped) * svd.matrixV().leftCols(gapped).transpose();
    g.bottomLeftCorner(n, n) = -g.topRightCorner(n, n).transpose();
    if (gapped == n) return g;

    const Eigen::Index zero = n - gapped;
    MatrixXd kernel = MatrixXd::Zero(2 * n, 2 * zero);
    kernel.topLeftCorner(n, zero) = svd.matrixU().rightCols(zero);
    kernel.bottomRightCorner(n, zero) = svd.matrixV().rightCols(zero);
    return resolve_zero_modes(std::move(g), kernel, pattern);
}

} // namespace

MajoranaCovariance ground_state_covariance(const QuadraticHamiltonian& h, const QuadraticHamiltonian* adiabatic_hint) {
    const QuadraticHamiltonian& pattern = adiabatic_hint ? *adiabatic_hint : h;
    if (pattern.n_modes() != h.n_modes()) throw DimensionError("adiabatic hint has a different number of modes");
    if (auto real = real_ground_state(h, pattern)) return MajoranaCovariance(*real);
    MatrixXd g = h.number_conserving() ? number_conserving_ground_state(h, pattern) : bdg_ground_state(h, pattern);
    return MajoranaCovariance(g);
}

MatrixXd relative_covariance(const MajoranaCovariance& ref, const MajoranaCovariance& tgt) {
    if (ref.n_modes() != tgt.n_modes())
        throw InvalidInput(fmt::format("relative covariance of {} and {} modes", ref.n_modes(), tgt.n_modes()));
    MatrixXd delta = -tgt.gamma() * ref.gamma();
    const double dev = (delta * delta.transpose() - MatrixXd::Identity(delta.rows(), delta.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-9) throw NumericError(fmt::format("relative covariance is not orthogonal (deviation {:.3g})", dev));
    return delta;
}

int parity(const MajoranaCovariance& state) {
    const double pf = skewlin::pfaffian(interleave(state));
    if (std::abs(std::abs(pf) - 1.0) > 1e-6) throw NumericError(fmt::format("|Pf| = {:.17g} for a pure state", std::abs(pf)));
    return pf > 0.0 ? 1 : -1;
}

std::vector<int> interleave_order(int n) {
    std::vector<int> order(2 * n);
    for (int i = 0; i < n; ++i) {
        order[2 * i] = i;
        order[2 * i + 1] = n + i;
    }
    return order;
}

MatrixXd interleave(const MatrixXd& block) {
    return submatrix(block, interleave_order(static_cast<int>(block.rows() / 2)));
}

MatrixXd interleave(const MajoranaCovariance& state) {
    return interleave(state.gamma());
}

MatrixXd deinterleave(const MatrixXd& interleaved) {
    const auto order = interleave_order(static_cast<int>(interleaved.rows() / 2));
    MatrixXd out(interleaved.rows(), interleaved.cols());
    for (std::size_t r = 0; r < order.size(); ++r)
        for (std::size_t c = 0; c < order.size(); ++c)
            out(order[r], order[c]) = interleaved(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    return out;
}

MatrixXd majorana_matrix(const QuadraticHamiltonian& h) {
    const auto n = h.n_modes();
    // H = 1/2 Psi^+ HH Psi + tr(T)/2 with Psi = U xi, U = 1/2 [[1, i], [1, -i]], so
    // M = Re(-i/2 W HH W^+) with W = [[1, 1], [-i, i]], expanded blockwise.
    const cd i(0.0, 1.0);
    const MatrixXcd& t = h.t();
    const MatrixXcd& f = h.f();
    const MatrixXcd x11 = t - f.conjugate();
    const MatrixXcd x12 = f - t.conjugate();
    const MatrixXcd x21 = -i * (t + f.conjugate());
    const MatrixXcd x22 = -i * (f + t.conjugate());
    MatrixXcd p(2 * n, 2 * n);
    p << x11 + x12, i * (x11 - x12), x21 + x22, i * (x21 - x22);
    return antisymmetrized((-0.5 * i * p).real());
}

double energy(const QuadraticHamiltonian& h, const MajoranaCovariance& state) {
    if (h.n_modes() != state.n_modes()) throw DimensionError("Hamiltonian and state sizes differ");
    return 0.25 * (majorana_matrix(h).cwiseProduct(state.gamma().transpose())).sum() + 0.5 * h.t().trace().real();
}

double ground_energy(const QuadraticHamiltonian& h) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(h.nambu(), Eigen::EigenvaluesOnly);
    double positive = 0.0;
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) positive += std::max(eig.eigenvalues()(k), 0.0);
    return 0.5 * (h.t().trace().real() - positive);
}

std::vector<ParitySector> parity_sectors(const QuadraticHamiltonian& h) {
    const MatrixXd m = majorana_matrix(h);
    std::vector<ParitySector> out;
    for (auto& order : clusters(nonzero_pattern(m))) {
        ParitySector s{std::move(order), 0};
        if (s.majoranas.size() % 2 == 0) s.target = pfaffian_sign(submatrix(m, s.majoranas));
        out.push_back(std::move(s));
    }
    return out;
}

int sector_parity(const MajoranaCovariance& state, const std::vector<int>& majoranas) {
    if (majoranas.empty() || majoranas.size() % 2 != 0) throw InvalidInput("sector parity needs an even, nonempty Majorana set");
    return pfaffian_sign(submatrix(state.gamma(), majoranas));
}

MatrixXd random_special_orthogonal(int dim, unsigned long long seed) {
    if (dim < 1) throw InvalidInput("rotation dimension must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    MatrixXd a(dim, dim);
    for (int c = 0; c < dim; ++c)
        for (int r = 0; r < dim; ++r) a(r, c) = normal(rng);
    Eigen::HouseholderQR<MatrixXd> qr(a);
    MatrixXd q = qr.householderQ();
    const MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < dim; ++k)
        if (r(k, k) < 0.0) q.col(k) = -q.col(k);
    if (q.determinant() < 0.0) q.col(0) = -q.col(0);
    return q;
}

MajoranaCovariance rotate(const MajoranaCovariance& state, const MatrixXd& q) {
    if (q.rows() != state.gamma().rows() || q.cols() != q.rows()) throw DimensionError("rotation size does not match the state");
    return MajoranaCovariance(antisymmetrized(q * state.gamma() * q.transpose()));
}

MajoranaCovariance random_pure_state(int n, unsigned long long seed) {
    return rotate(fock_vacuum(n), random_special_orthogonal(2 * n, seed));
}

MajoranaCovariance flip_mode(const MajoranaCovariance& state, int site) {
    if (site < 1 || site > state.n_modes()) throw InvalidInput(fmt::format("site {} outside 1..{}", site, state.n_modes()));
    MatrixXd g = state.gamma();
    g.row(site - 1) *= -1.0;
    g.col(site - 1) *= -1.0;
    return MajoranaCovariance(g);
}

} // namespace gsx::gaussian
