#include "ptwell/operator_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ptwell/errors.hpp"
#include "ptwell/hermitian_jacobi.hpp"
#include "ptwell/secular_solver.hpp"

namespace ptwell {

namespace {

constexpr cdouble i_unit{0.0, 1.0};

void require_same_basis(const BlockOperator& l, const BlockOperator& r) {
    if (l.basis != r.basis) throw BasisMismatch("block operators are tagged with different bases");
    if (l.block_size() != r.block_size()) throw BasisMismatch("block operators differ in dimension");
}

Matrix identity(const Grid& grid) { return Matrix::Identity(grid.size(), grid.size()); }
Matrix zero(const Grid& grid) { return Matrix::Zero(grid.size(), grid.size()); }

// Kinetic part -d^2/dx^2 with Dirichlet ends.
Matrix kinetic(const Grid& grid) {
    const int n = grid.size();
    const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
    Matrix k = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        k(i, i) = 2.0 * inv_h2;
        if (i + 1 < n) k(i, i + 1) = k(i + 1, i) = -inv_h2;
    }
    return k;
}

// diag(i * strength * sign(x_i)).
Matrix step_potential(const Grid& grid, double strength) {
    Matrix v = Matrix::Zero(grid.size(), grid.size());
    for (int i = 0; i < grid.size(); ++i) v(i, i) = i_unit * (strength * grid.side(i));
    return v;
}

Matrix stack(const Vector& top, const Vector& bottom) {
    Vector out(top.size() + bottom.size());
    out << top, bottom;
    return out;
}

int count_sector(const std::vector<GridState>& states, Spin sigma) {
    return static_cast<int>(std::count_if(states.begin(), states.end(),
                                          [sigma](const GridState& s) { return s.sigma == sigma; }));
}

// Theta ket, computed without forming theta.
Vector theta_apply(const Vector& ket, const Grid& grid) {
    const int n = grid.size();
    Vector out(2 * n);
    out.head(n) = ket.tail(n).reverse();
    out.tail(n) = ket.head(n).reverse();
    return out;
}

double norm_of(const Matrix& m, NormKind kind) {
    return kind == NormKind::max_abs_entry ? max_abs_entry(m) : spectral_norm_estimate(m);
}

Vector shifted_inverse_iteration(const Matrix& h, Vector x, cdouble shift, int iterations) {
    const Matrix shifted = h - shift * Matrix::Identity(h.rows(), h.cols());
    const Eigen::PartialPivLU<Matrix> lu(shifted);
    for (int it = 0; it < iterations; ++it) {
        x = lu.solve(x);
        x.normalize();
    }
    return x;
}

// Complex-symmetric Rayleigh quotient x^T H x / x^T x (H^T = H on the grid).
cdouble rayleigh(const Matrix& h, const Vector& x) {
    return (x.transpose() * h * x)(0, 0) / (x.transpose() * x)(0, 0);
}

BlockOperator block_diag(const Matrix& m, Basis basis) {
    const Matrix z = Matrix::Zero(m.rows(), m.cols());
    return BlockOperator{m, z, z, m, basis};
}

}  // namespace

Grid::Grid(int interior_points) : n_(interior_points), h_(2.0 / (interior_points + 1)) {
    if (interior_points < 2 || interior_points % 2 != 0) {
        throw InvalidParameter("grid needs an even number (>= 2) of interior points");
    }
}

Matrix BlockOperator::full() const {
    const auto n = block_size();
    Matrix m(2 * n, 2 * n);
    m << upper_left, upper_right, lower_left, lower_right;
    return m;
}

BlockOperator BlockOperator::adjoint() const {
    return BlockOperator{upper_left.adjoint(), lower_left.adjoint(), upper_right.adjoint(),
                         lower_right.adjoint(), basis};
}

BlockOperator BlockOperator::from_full(const Matrix& m, Basis basis) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0) {
        throw InvalidParameter("block operator needs an even square matrix");
    }
    const auto n = m.rows() / 2;
    return BlockOperator{m.topLeftCorner(n, n), m.topRightCorner(n, n), m.bottomLeftCorner(n, n),
                         m.bottomRightCorner(n, n), basis};
}

BlockOperator operator*(const BlockOperator& l, const BlockOperator& r) {
    require_same_basis(l, r);
    return BlockOperator{l.upper_left * r.upper_left + l.upper_right * r.lower_left,
                         l.upper_left * r.upper_right + l.upper_right * r.lower_right,
                         l.lower_left * r.upper_left + l.lower_right * r.lower_left,
                         l.lower_left * r.upper_right + l.lower_right * r.lower_right, l.basis};
}

BlockOperator operator+(const BlockOperator& l, const BlockOperator& r) {
    require_same_basis(l, r);
    return BlockOperator{l.upper_left + r.upper_left, l.upper_right + r.upper_right,
                         l.lower_left + r.lower_left, l.lower_right + r.lower_right, l.basis};
}

BlockOperator operator-(const BlockOperator& l, const BlockOperator& r) {
    require_same_basis(l, r);
    return BlockOperator{l.upper_left - r.upper_left, l.upper_right - r.upper_right,
                         l.lower_left - r.lower_left, l.lower_right - r.lower_right, l.basis};
}

BlockOperator operator*(cdouble factor, const BlockOperator& op) {
    return BlockOperator{factor * op.upper_left, factor * op.upper_right, factor * op.lower_left,
                         factor * op.lower_right, op.basis};
}

Matrix parity_matrix(const Grid& grid) {
    const int n = grid.size();
    Matrix p = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) p(i, n - 1 - i) = 1.0;
    return p;
}

BlockOperator build_hamiltonian(const CouplingParams& params, const Grid& grid) {
    const Matrix k = kinetic(grid);
    const Matrix v = step_potential(grid, params.z());
    return BlockOperator{k + v, step_potential(grid, params.y()), step_potential(grid, params.x()), k + v,
                         Basis::grid};
}

Matrix build_reduced_hamiltonian(const CouplingParams& params, const Grid& grid, Spin sigma) {
    return kinetic(grid) + step_potential(grid, z_eff(params, sigma));
}

BlockOperator build_omega(const CouplingParams& params, const Grid& grid) {
    const double w = omega(params);
    return BlockOperator{zero(grid), identity(grid) / w, identity(grid) * w, zero(grid), Basis::grid};
}

BlockOperator build_theta(const Grid& grid) {
    const Matrix p = parity_matrix(grid);
    return BlockOperator{zero(grid), p, p, zero(grid), Basis::grid};
}

BlockOperator build_spin_projector(const CouplingParams& params, const Grid& grid, Spin sigma) {
    const BlockOperator one = block_diag(identity(grid), Basis::grid);
    return 0.5 * (one + static_cast<double>(sign(sigma)) * build_omega(params, grid));
}

Vector sample_state(const BoundState& state, const CouplingParams& params, const Grid& grid) {
    Vector phi(grid.size());
    for (int i = 0; i < grid.size(); ++i) phi(i) = eval_phi(state, grid.node(i));
    const double sy = std::sqrt(params.y());
    return stack(sy * phi, sy * sign(state.root.sigma) * omega(params) * phi);
}

std::vector<GridState> discretize_states(const CouplingParams& params, const Grid& grid, int n_max) {
    if (n_max < 0) throw InvalidParameter("n_max must be non-negative");
    const Matrix p = parity_matrix(grid);
    const double w = omega(params);
    const double sy = std::sqrt(params.y());
    std::vector<GridState> out;
    for (Spin sigma : both_spins) {
        const Matrix h = build_reduced_hamiltonian(params, grid, sigma);
        for (int n = 0; n <= n_max; ++n) {
            const LevelRoot root = solve_level(n, sigma, params);
            const BoundState analytic = make_state(root, params);

            Vector sample(grid.size());
            for (int i = 0; i < grid.size(); ++i) sample(i) = eval_phi(analytic, grid.node(i));

            // Fixed shift first, then two Rayleigh-quotient refinements.
            Vector x = shifted_inverse_iteration(h, sample.normalized(), root.energy(), 3);
            cdouble lambda = rayleigh(h, x);
            x = shifted_inverse_iteration(h, x, lambda, 2);
            lambda = rayleigh(h, x);

            // Same phase as the analytic sample (C real positive convention).
            const cdouble alignment = sample.dot(x);
            x *= std::conj(alignment) / std::abs(alignment);

            const double parity = (x.adjoint() * p * x)(0, 0).real();
            const double magnitude = std::abs(2.0 * params.sqrt_xy() * parity);
            if (!(magnitude >= accidental_node_threshold)) {
                throw AccidentalNode("discrete self-overlap of level " + std::to_string(n) + " vanishes");
            }
            x /= std::sqrt(magnitude);

            GridState state;
            state.n = n;
            state.sigma = sigma;
            state.analytic_energy = root.energy();
            state.energy = lambda;
            state.phi = x;
            state.ket = stack(sy * x, sy * sign(sigma) * w * x);
            state.rho = QuasiParity(sign(sigma) * (parity > 0.0 ? 1 : -1));
            state.analytic_rho = quasi_parity(root);
            out.push_back(std::move(state));
        }
    }
    return out;
}

Eigen::RowVectorXcd left_state(const GridState& state, const Grid& grid) {
    return static_cast<double>(state.rho.value()) * theta_apply(state.ket, grid).adjoint();
}

BlockOperator build_quasi_parity(const std::vector<GridState>& states, const Grid& grid) {
    for (Spin sigma : both_spins) {
        if (count_sector(states, sigma) < 3) {
            throw InsufficientBasis("quasi-parity needs at least levels 0..2 in each spin sector");
        }
    }
    const int dim = 2 * grid.size();
    Matrix q = Matrix::Zero(dim, dim);
    for (const auto& state : states) {
        const Eigen::RowVectorXcd left = left_state(state, grid);
        const cdouble norm = (left * state.ket)(0, 0);
        q += state.ket * (static_cast<double>(state.rho.value()) / norm) * left;
    }
    return BlockOperator::from_full(q, Basis::grid);
}

Matrix build_reduced_quasi_parity(const std::vector<GridState>& states, const Grid& grid, Spin sigma) {
    const Matrix p = parity_matrix(grid);
    Matrix r = Matrix::Zero(grid.size(), grid.size());
    for (const auto& state : states) {
        if (state.sigma != sigma) continue;
        const Eigen::RowVectorXcd left = state.phi.adjoint() * p;
        const cdouble norm = (left * state.phi)(0, 0);
        r += state.phi * (static_cast<double>(state.rho.value()) / norm) * left;
    }
    return r;
}

BlockOperator build_quasi_parity_from_reduced(const std::vector<GridState>& states,
                                              const CouplingParams& params, const Grid& grid) {
    BlockOperator q = block_diag(zero(grid), Basis::grid);
    for (Spin sigma : both_spins) {
        const BlockOperator r = block_diag(build_reduced_quasi_parity(states, grid, sigma), Basis::grid);
        q = q + r * build_spin_projector(params, grid, sigma);
    }
    return q;
}

std::vector<double> special_coefficients(const std::vector<GridState>& states, const Grid& grid) {
    std::vector<double> out;
    out.reserve(states.size());
    for (const auto& state : states) {
        out.push_back(1.0 / (left_state(state, grid) * state.ket)(0, 0).real());
    }
    return out;
}

BlockOperator build_metric(const std::vector<GridState>& states, const std::vector<double>& coefficients,
                           const Grid& grid) {
    if (coefficients.size() != states.size()) {
        throw InvalidParameter("one metric coefficient per state is required");
    }
    const int dim = 2 * grid.size();
    Matrix theta_metric = Matrix::Zero(dim, dim);
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (!(coefficients[k] > 0.0)) {
            throw NonPositiveCoefficient("metric coefficient S for level " + std::to_string(states[k].n) +
                                         ", sigma " + std::to_string(sign(states[k].sigma)) +
                                         " is not positive");
        }
        const Eigen::RowVectorXcd left = left_state(states[k], grid);
        theta_metric += left.adjoint() * coefficients[k] * left;
    }
    return BlockOperator::from_full(theta_metric, Basis::grid);
}

BlockOperator build_factorized_metric(const std::vector<GridState>& states, const CouplingParams& params,
                                      const Grid& grid) {
    const Matrix p = parity_matrix(grid);
    BlockOperator out = block_diag(zero(grid), Basis::grid);
    for (Spin sigma : both_spins) {
        const Matrix pr = p * build_reduced_quasi_parity(states, grid, sigma);
        const BlockOperator swap{zero(grid), pr, pr, zero(grid), Basis::grid};
        out = out + swap * build_spin_projector(params, grid, sigma);
    }
    return out;
}

BlockOperator build_factorized_metric_weighted(const std::vector<GridState>& states,
                                               const CouplingParams& params, const Grid& grid) {
    const Matrix p = parity_matrix(grid);
    const double w = omega(params);
    BlockOperator out = block_diag(zero(grid), Basis::grid);
    for (Spin sigma : both_spins) {
        const double sg = sign(sigma);
        const Matrix pr = p * build_reduced_quasi_parity(states, grid, sigma);
        out = out + BlockOperator{0.5 * sg * w * pr, 0.5 * pr, 0.5 * pr, 0.5 * sg / w * pr, Basis::grid};
    }
    return out;
}

std::vector<GridState> with_flipped_rho(std::vector<GridState> states, std::size_t index) {
    if (index >= states.size()) throw InvalidParameter("state index out of range");
    states[index].rho = states[index].rho.flipped();
    return states;
}

Matrix span_basis(const std::vector<GridState>& states) {
    if (states.empty()) throw InsufficientBasis("empty state set");
    const auto dim = states.front().ket.size();
    Matrix v(dim, static_cast<Eigen::Index>(states.size()));
    for (std::size_t k = 0; k < states.size(); ++k) v.col(static_cast<Eigen::Index>(k)) = states[k].ket;
    const Eigen::HouseholderQR<Matrix> qr(v);
    return qr.householderQ() * Matrix::Identity(dim, v.cols());
}

double max_abs_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double spectral_norm_estimate(const Matrix& m, int iterations) {
    if (m.size() == 0) return 0.0;
    Vector x(m.cols());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = cdouble(1.0 + 0.01 * i, 0.5 - 0.003 * i);
    x.normalize();
    double estimate = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Vector y = m.adjoint() * (m * x);
        const double len = y.norm();
        if (len == 0.0) return 0.0;
        estimate = std::sqrt(len);
        x = y / len;
    }
    return estimate;
}

std::string to_string(NormKind kind) {
    return kind == NormKind::max_abs_entry ? "max_abs_entry" : "power_iteration";
}

const VerificationEntry& VerificationReport::add(std::string name, double residual, double tolerance,
                                                 NormKind norm) {
    entries.push_back({std::move(name), residual, tolerance, norm, std::isfinite(residual) && residual <= tolerance});
    return entries.back();
}

void VerificationReport::append(const VerificationReport& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

bool VerificationReport::all_passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const VerificationEntry& e) { return e.passed; });
}

const VerificationEntry* VerificationReport::find(const std::string& name) const {
    for (const auto& e : entries) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

VerificationEntry verify_pseudo_hermiticity(const BlockOperator& h, const BlockOperator& theta, double tol,
                                            NormKind norm) {
    const Matrix hf = h.full();
    const Matrix tf = theta.full();
    const Matrix defect = (h.adjoint() * theta - theta * h).full();
    VerificationReport report;
    return report.add("pseudo_hermiticity", norm_of(defect, norm) / norm_of(hf, norm), tol, norm);
}

VerificationReport verify_completeness_and_spectral(const std::vector<GridState>& states,
                                                    const BlockOperator& h, const BlockOperator& omega_op,
                                                    const Grid& grid, double tol, unsigned seed) {
    VerificationReport report;
    const int dim = 2 * grid.size();
    Matrix projector = Matrix::Zero(dim, dim);
    Matrix h_rec = Matrix::Zero(dim, dim);
    Matrix omega_rec = Matrix::Zero(dim, dim);
    for (const auto& state : states) {
        const Eigen::RowVectorXcd left = left_state(state, grid);
        const Matrix term = state.ket * left / (left * state.ket)(0, 0);
        projector += term;
        h_rec += state.energy * term;
        omega_rec += static_cast<double>(sign(state.sigma)) * term;
    }

    const Vector& first = states.front().ket;
    report.add("completeness_fixes_basis_state", max_abs_entry(projector * first - first) / max_abs_entry(first),
               tol);

    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    Vector combo = Vector::Zero(dim);
    const std::size_t used = std::min<std::size_t>(10, states.size());
    for (std::size_t k = 0; k < used; ++k) combo += cdouble(gauss(rng), gauss(rng)) * states[k].ket;
    report.add("completeness_random_combination",
               max_abs_entry(projector * combo - combo) / max_abs_entry(combo), tol);

    const Matrix u = span_basis(states);
    const Matrix hf = h.full();
    report.add("spectral_hamiltonian_on_span", max_abs_entry((h_rec - hf) * u) / max_abs_entry(hf), tol);
    report.add("spectral_omega_on_span", max_abs_entry((omega_rec - omega_op.full()) * u), tol);

    const Eigen::ComplexEigenSolver<Matrix> eig(u.adjoint() * omega_rec * u, false);
    double worst = 0.0;
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
        const cdouble lambda = eig.eigenvalues()(k);
        worst = std::max(worst, std::min(std::abs(lambda - 1.0), std::abs(lambda + 1.0)));
    }
    report.add("omega_eigenvalues_on_span", worst, tol);
    return report;
}

VerificationReport verify_partitioning(const std::vector<GridState>& states, const CouplingParams& params,
                                       const Grid& grid) {
    VerificationReport report;
    const Matrix p = parity_matrix(grid);
    const double sx = std::sqrt(params.x());
    const double sy = std::sqrt(params.y());
    const int n = grid.size();

    double overlap_defect = 0.0;
    double rn_defect = 0.0;
    for (const auto& state : states) {
        const Eigen::RowVectorXcd left = left_state(state, grid);
        const cdouble full = (left * state.ket)(0, 0);
        // The ket is sqrt(Y) (phi, sigma omega phi) = (sqrt(Y) phi, sigma sqrt(X) phi).
        const cdouble reduced = 2.0 * sign(state.sigma) * state.rho.value() * params.sqrt_xy() *
                                (state.phi.adjoint() * p * state.phi)(0, 0);
        overlap_defect = std::max(overlap_defect, std::abs(full - reduced) / std::abs(full));

        // Left partition (sigma sqrt(X) <<chi|, sqrt(Y) <<chi|) and <<chi| = lambda phi^H P.
        const Eigen::RowVectorXcd chi_upper = left.head(n) / (sign(state.sigma) * sx);
        const Eigen::RowVectorXcd chi_lower = left.tail(n) / sy;
        const Eigen::RowVectorXcd reference = state.phi.adjoint() * p;
        const cdouble lambda = (chi_upper * reference.adjoint())(0, 0) / reference.squaredNorm();
        rn_defect = std::max({rn_defect, std::abs(lambda - static_cast<double>(state.rho.value())),
                              max_abs_entry(chi_upper - chi_lower) / max_abs_entry(chi_upper),
                              max_abs_entry(chi_upper - lambda * reference) / max_abs_entry(chi_upper)});
    }
    report.add("overlap_partition_factorization", overlap_defect, 1e-12);
    report.add("normalization_constants_coincide", rn_defect, 1e-12);

    const BlockOperator theta = build_theta(grid);
    const Matrix theta_q = (theta * build_quasi_parity(states, grid)).full();
    const Matrix factorized = build_factorized_metric(states, params, grid).full();
    const Matrix weighted = build_factorized_metric_weighted(states, params, grid).full();
    const double scale = max_abs_entry(theta_q);
    report.add("metric_block_factorization", max_abs_entry(factorized - theta_q) / scale, 1e-8);
    report.add("metric_block_factorization_weighted", max_abs_entry(weighted - theta_q) / scale, 1e-8);

    for (Spin sigma : both_spins) {
        const Matrix hr = build_reduced_hamiltonian(params, grid, sigma);
        report.add(std::string("reduced_pt_symmetry_sigma") + (sigma == Spin::up ? "+" : "-"),
                   max_abs_entry(hr - p * hr.adjoint() * p) / max_abs_entry(hr), 1e-13);
    }
    return report;
}

VerificationReport run_identity_suite(const CouplingParams& params, const IdentitySuiteOptions& options) {
    const Grid grid(options.grid_points);
    const NormKind norm = options.norm;
    VerificationReport report;

    const BlockOperator h = build_hamiltonian(params, grid);
    const BlockOperator theta = build_theta(grid);
    const BlockOperator omega_op = build_omega(params, grid);
    const Matrix hf = h.full();
    const double h_norm = norm_of(hf, norm);
    const Matrix one = Matrix::Identity(2 * grid.size(), 2 * grid.size());

    report.entries.push_back(verify_pseudo_hermiticity(h, theta, 1e-13, norm));
    report.add("commutator_h_omega", norm_of((h * omega_op - omega_op * h).full(), norm) / h_norm, 1e-13, norm);
    report.add("theta_involution", norm_of((theta * theta).full() - one, norm), 1e-13, norm);
    report.add("omega_involution", norm_of((omega_op * omega_op).full() - one, norm), 1e-13, norm);
    report.add("omega_pseudo_hermiticity", norm_of((omega_op.adjoint() * theta - theta * omega_op).full(), norm),
               1e-14, norm);
    const BlockOperator pi_up = build_spin_projector(params, grid, Spin::up);
    const BlockOperator pi_down = build_spin_projector(params, grid, Spin::down);
    report.add("projectors_resolve_identity", norm_of((pi_up + pi_down).full() - one, norm), 1e-13, norm);
    report.add("projectors_idempotent",
               std::max(norm_of((pi_up * pi_up - pi_up).full(), norm), norm_of((pi_down * pi_down - pi_down).full(), norm)),
               1e-13, norm);
    report.add("projectors_orthogonal", norm_of((pi_up * pi_down).full(), norm), 1e-13, norm);

    const auto states = discretize_states(params, grid, options.n_max);
    double eigen_residual = 0.0;
    int rho_mismatch = 0;
    for (const auto& state : states) {
        eigen_residual = std::max(eigen_residual, norm_of(hf * state.ket - state.energy * state.ket, norm) /
                                                      (h_norm * norm_of(state.ket, norm)));
        if (state.rho != state.analytic_rho) ++rho_mismatch;
    }
    report.add("discrete_eigenpairs", eigen_residual, 1e-12, norm);
    report.add("quasi_parity_discrete_matches_analytic", rho_mismatch, 0.0);

    const Matrix u = span_basis(states);
    const BlockOperator q = build_quasi_parity(states, grid);
    const BlockOperator q_reduced = build_quasi_parity_from_reduced(states, params, grid);
    const Matrix qf = q.full();
    report.add("quasi_parity_routes_agree", norm_of(qf - q_reduced.full(), norm), 1e-8, norm);
    report.add("quasi_parity_eigen_action",
               norm_of(qf * states.front().ket - static_cast<double>(states.front().rho.value()) * states.front().ket,
                       norm),
               1e-8, norm);
    report.add("quasi_parity_commutes_with_h_on_span", norm_of((hf * qf - qf * hf) * u, norm), 1e-8, norm);
    report.add("quasi_parity_squared_on_span", norm_of((qf * qf - one) * u, norm), 1e-8, norm);

    const BlockOperator metric = build_metric(states, special_coefficients(states, grid), grid);
    const Matrix mf = metric.full();
    const Matrix theta_q = (theta * q).full();
    report.add("metric_hermitian", norm_of(mf - mf.adjoint(), norm), 1e-10, norm);
    report.add("theta_q_hermitian", norm_of(theta_q - theta_q.adjoint(), norm), 1e-10, norm);
    report.add("metric_equals_theta_q", norm_of(mf - theta_q, norm), 1e-8, norm);
    report.add("metric_quasi_hermiticity_on_span", norm_of((hf.adjoint() * mf - mf * hf) * u, norm), 1e-8, norm);

    // Positivity: residual is minus the smallest eigenvalue, so passing needs lambda_min >= 1e-12.
    const auto gram = jacobi_eigen(u.adjoint() * mf * u);
    report.add("metric_positive_on_span", -gram.values.minCoeff(), -1e-12);

    const auto flipped = with_flipped_rho(states, 0);
    const Matrix theta_q_flipped = (theta * build_quasi_parity(flipped, grid)).full();
    const auto flipped_gram = jacobi_eigen(u.adjoint() * theta_q_flipped * u);
    report.add("flipped_rho_breaks_positivity", flipped_gram.values.minCoeff(), -1e-12);

    report.append(verify_completeness_and_spectral(states, h, omega_op, grid, 1e-9));
    report.append(verify_partitioning(states, params, grid));
    return report;
}

}  // namespace ptwell
