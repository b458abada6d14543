#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gsx::gaussian {

// Quadratic fermionic Hamiltonian  sum T_ij c_i^+ c_j + 1/2 sum (F_ij c_i^+ c_j^+ + h.c.).
class QuadraticHamiltonian {
public:
    QuadraticHamiltonian(Eigen::MatrixXcd t, Eigen::MatrixXcd f);
    static QuadraticHamiltonian hopping(const Eigen::MatrixXd& t);

    const Eigen::MatrixXcd& t() const { return t_; }
    const Eigen::MatrixXcd& f() const { return f_; }
    int n_modes() const { return static_cast<int>(t_.rows()); }
    bool number_conserving() const { return f_.cwiseAbs().maxCoeff() == 0.0; }

    // Bogoliubov-de Gennes matrix [[T, F], [-F*, -T*]].
    Eigen::MatrixXcd nambu() const;

private:
    Eigen::MatrixXcd t_;
    Eigen::MatrixXcd f_;
};

// Pure-state Majorana covariance in block ordering (alpha_1..alpha_N, beta_1..beta_N).
class MajoranaCovariance {
public:
    explicit MajoranaCovariance(const Eigen::MatrixXd& gamma, double purity_tol = 1e-8);

    int n_modes() const { return static_cast<int>(gamma_.rows() / 2); }
    const Eigen::MatrixXd& gamma() const { return gamma_; }

private:
    Eigen::MatrixXd gamma_;
};

// C_ij = <c_i^+ c_j>, G_ij = <c_i c_j>.
struct CorrelationData {
    Eigen::MatrixXcd c;
    Eigen::MatrixXcd g;
    void validate() const;
};

MajoranaCovariance fock_vacuum(int n);
MajoranaCovariance fully_occupied(int n);

MajoranaCovariance covariance_from_correlations(const CorrelationData& data);

// Zero modes (|eps| <= kZeroModeTol) are resolved from the optional adiabatic hint.
MajoranaCovariance ground_state_covariance(const QuadraticHamiltonian& h,
                                           const QuadraticHamiltonian* adiabatic_hint = nullptr);

Eigen::MatrixXd relative_covariance(const MajoranaCovariance& ref, const MajoranaCovariance& tgt);

int parity(const MajoranaCovariance& state);

std::vector<int> interleave_order(int n);
Eigen::MatrixXd interleave(const Eigen::MatrixXd& block);
Eigen::MatrixXd interleave(const MajoranaCovariance& state);
Eigen::MatrixXd deinterleave(const Eigen::MatrixXd& interleaved);

// Real antisymmetric M with H = (i/4) xi^T M xi + tr(T)/2.
Eigen::MatrixXd majorana_matrix(const QuadraticHamiltonian& h);

double energy(const QuadraticHamiltonian& h, const MajoranaCovariance& state);
double ground_energy(const QuadraticHamiltonian& h);

// Connected Majorana cluster of M, listed in traversal order, with the parity its
// ground state must carry (sign of the Pfaffian in that order; 0 for odd clusters).
struct ParitySector {
    std::vector<int> majoranas;
    int target = 0;
};

std::vector<ParitySector> parity_sectors(const QuadraticHamiltonian& h);

// <prod over consecutive pairs of (-i xi_a xi_b)> for the given Majorana order.
int sector_parity(const MajoranaCovariance& state, const std::vector<int>& majoranas);

// Seeded Haar-like orthogonal rotation of the vacuum; even parity unless flipped.
MajoranaCovariance random_pure_state(int n, unsigned long long seed);
Eigen::MatrixXd random_special_orthogonal(int dim, unsigned long long seed);

// Reflection of alpha_site (1-based): toggles fermion parity.
MajoranaCovariance flip_mode(const MajoranaCovariance& state, int site);

MajoranaCovariance rotate(const MajoranaCovariance& state, const Eigen::MatrixXd& q);

constexpr double kZeroModeTol = 1e-10;

} // namespace gsx::gaussian
