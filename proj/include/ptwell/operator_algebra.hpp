#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ptwell/core_model.hpp"
#include "ptwell/states.hpp"

namespace ptwell {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// N interior nodes x_i = -1 + i h (i = 1..N), h = 2/(N+1). N must be even so
// that x = 0 falls between the two middle nodes.
class Grid {
public:
    explicit Grid(int interior_points);

    int size() const { return n_; }
    double spacing() const { return h_; }
    // Node for zero-based index i in [0, N).
    double node(int i) const { return -1.0 + (i + 1) * h_; }
    // +1 on the left half (x < 0), -1 on the right half.
    int side(int i) const { return i < n_ / 2 ? 1 : -1; }

private:
    int n_;
    double h_;
};

enum class Basis { grid, eigen_truncated };

// Operator on the two-channel space, stored as four channel blocks:
//   [ upper_left  upper_right ]
//   [ lower_left  lower_right ]
struct BlockOperator {
    Matrix upper_left;
    Matrix upper_right;
    Matrix lower_left;
    Matrix lower_right;
    Basis basis = Basis::grid;

    Eigen::Index block_size() const { return upper_left.rows(); }
    Matrix full() const;
    BlockOperator adjoint() const;

    static BlockOperator from_full(const Matrix& m, Basis basis);
};

// Throws BasisMismatch when the operands are tagged with different bases.
BlockOperator operator*(const BlockOperator& l, const BlockOperator& r);
BlockOperator operator+(const BlockOperator& l, const BlockOperator& r);
BlockOperator operator-(const BlockOperator& l, const BlockOperator& r);
BlockOperator operator*(cdouble factor, const BlockOperator& op);

// Index-reversal matrix on one channel.
Matrix parity_matrix(const Grid& grid);

// Three-point Dirichlet kinetic term plus the piecewise-constant imaginary
// potentials: +-iZ on the diagonal blocks, +-iY upper-right, +-iX lower-left,
// with the upper sign on the left half of the grid.
BlockOperator build_hamiltonian(const CouplingParams& params, const Grid& grid);

// Single-channel operator of one spin sector, K + i Z_eff(sigma) sign(x).
Matrix build_reduced_hamiltonian(const CouplingParams& params, const Grid& grid, Spin sigma);

// [[0, I/omega], [omega I, 0]].
BlockOperator build_omega(const CouplingParams& params, const Grid& grid);

// [[0, P], [P, 0]] with P the grid parity.
BlockOperator build_theta(const Grid& grid);

// (I + sigma Omega) / 2.
BlockOperator build_spin_projector(const CouplingParams& params, const Grid& grid, Spin sigma);

// Analytic state sampled on the grid as the full-space ket sqrt(Y) (phi, chi).
Vector sample_state(const BoundState& state, const CouplingParams& params, const Grid& grid);

// Discrete eigenvector of the grid Hamiltonian obtained by refining the sampled
// analytic state with shifted inverse iteration on the reduced operator.
struct GridState {
    int n = 0;
    Spin sigma = Spin::up;
    double analytic_energy = 0.0;
    cdouble energy;          // discrete eigenvalue
    Vector phi;              // single-channel component, length N
    Vector ket;              // sqrt(Y) (phi, sigma omega phi), length 2N
    QuasiParity rho{1};      // sigma * sign(phi^H P phi) of the discrete state
    QuasiParity analytic_rho{1};
};

// Levels 0..n_max of both sectors, special-normalized so that
// <<E|E>> = rho ket^H theta ket = 1. Throws RootNotFound outside the physical
// domain and AccidentalNode if a discrete self-overlap vanishes.
std::vector<GridState> discretize_states(const CouplingParams& params, const Grid& grid, int n_max);

// <<E| = rho (theta ket)^H as a row vector.
Eigen::RowVectorXcd left_state(const GridState& state, const Grid& grid);

// Q = sum |E> rho <<E| / <<E|E>>. Throws InsufficientBasis for fewer than three
// levels per sector.
BlockOperator build_quasi_parity(const std::vector<GridState>& states, const Grid& grid);

// R(sigma) = sum_n rho_n |phi_n> <phi_n| P / (phi_n^H P phi_n), single channel.
Matrix build_reduced_quasi_parity(const std::vector<GridState>& states, const Grid& grid, Spin sigma);

// Q = sum_sigma R(sigma) Pi_sigma, with R acting identically on both channels.
BlockOperator build_quasi_parity_from_reduced(const std::vector<GridState>& states,
                                              const CouplingParams& params, const Grid& grid);

// S = 1 / <<E|E>> for each state (negative when rho is the wrong sign).
std::vector<double> special_coefficients(const std::vector<GridState>& states, const Grid& grid);

// Theta = sum |E>> S <<E| with |E>> = theta |E> rho. Throws NonPositiveCoefficient
// unless every S > 0.
BlockOperator build_metric(const std::vector<GridState>& states, const std::vector<double>& coefficients,
                           const Grid& grid);

// sum_sigma [[0, P R(sigma)], [P R(sigma), 0]] Pi_sigma.
BlockOperator build_factorized_metric(const std::vector<GridState>& states, const CouplingParams& params,
                                      const Grid& grid);

// 1/2 sum_sigma [[sigma omega, 1], [1, sigma/omega]] (x) P R(sigma).
BlockOperator build_factorized_metric_weighted(const std::vector<GridState>& states,
                                               const CouplingParams& params, const Grid& grid);

// Copy of the states with the quasi-parity of entry `index` reversed.
std::vector<GridState> with_flipped_rho(std::vector<GridState> states, std::size_t index);

// Orthonormal basis (columns) of the span of the kets.
Matrix span_basis(const std::vector<GridState>& states);

// Largest absolute entry.
double max_abs_entry(const Matrix& m);

// Largest singular value estimated by power iteration on M^H M.
double spectral_norm_estimate(const Matrix& m, int iterations = 200);

enum class NormKind { max_abs_entry, power_iteration };

std::string to_string(NormKind kind);

struct VerificationEntry {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    NormKind norm = NormKind::max_abs_entry;
    bool passed = false;
};

struct VerificationReport {
    std::vector<VerificationEntry> entries;

    // Records an entry; passed = (residual <= tolerance) and residual finite.
    const VerificationEntry& add(std::string name, double residual, double tolerance,
                                 NormKind norm = NormKind::max_abs_entry);
    void append(const VerificationReport& other);
    bool all_passed() const;
    const VerificationEntry* find(const std::string& name) const;
};

// ||H^H theta - theta H|| relative to ||H||.
VerificationEntry verify_pseudo_hermiticity(const BlockOperator& h, const BlockOperator& theta, double tol,
                                            NormKind norm = NormKind::max_abs_entry);

// Projector, completeness and spectral-representation checks on the span.
VerificationReport verify_completeness_and_spectral(const std::vector<GridState>& states,
                                                    const BlockOperator& h, const BlockOperator& omega,
                                                    const Grid& grid, double tol, unsigned seed = 7);

// Channel-partitioning identities: overlap factorization, coincidence of the
// full-space and subspace normalization signs, blockwise metric factorization,
// and P-pseudo-Hermiticity of the reduced operators.
VerificationReport verify_partitioning(const std::vector<GridState>& states, const CouplingParams& params,
                                       const Grid& grid);

struct IdentitySuiteOptions {
    int grid_points = 200;
    int n_max = 8;
    NormKind norm = NormKind::max_abs_entry;
};

// Every operator identity at the given parameters, including the negative
// positivity test with one reversed quasi-parity.
VerificationReport run_identity_suite(const CouplingParams& params, const IdentitySuiteOptions& options = {});

}  // namespace ptwell
