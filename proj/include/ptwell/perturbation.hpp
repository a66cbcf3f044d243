#pragma once

#include <vector>

#include "ptwell/core_model.hpp"

namespace ptwell {

// Small parameters of the weak-coupling expansion of level n:
// rho = 1/L with L = (n+1) pi, alpha = 2 Z_eff / L, beta = alpha * rho, tau = (-1)^n.
struct SeriesParams {
    double rho = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    int tau = 1;

    static SeriesParams of(int n, double z_eff);
};

// Coefficients c_kl of Sigma(alpha, beta) = sum c_kl alpha^2k beta^2l, known for k + l <= 2.
class SigmaCoefficients {
public:
    static constexpr int known_degree = 2;

    // Throws InvalidParameter unless tau is +-1 and 0 <= max_degree <= known_degree.
    explicit SigmaCoefficients(int tau, int max_degree = known_degree);

    // c_kl, zero beyond the truncation degree.
    double at(int k, int l) const;
    int tau() const { return tau_; }
    int max_degree() const { return max_degree_; }

private:
    int tau_;
    int max_degree_;
};

// Q_n to order 1 (Z_eff^2) or 2 (adds the Z_eff^4 term).
double q_series(int n, double z_eff, int order);

// alpha * beta * Sigma(alpha, beta) with the coefficient table as given.
double q_series_general(const SeriesParams& series, const SigmaCoefficients& coeffs);

struct PerturbationRow {
    int n = 0;
    Spin sigma = Spin::up;
    double q_exact = 0.0;
    double q_order1 = 0.0;
    double q_order2 = 0.0;
    double err1 = 0.0;
    double err2 = 0.0;
};

// Exact Q_n (secular roots) against both truncations for n in [n_first, n_last].
// Propagates RootNotFound.
std::vector<PerturbationRow> compare_perturbation_exact(double z_eff, int n_first, int n_last,
                                                        Spin sigma = Spin::up);
std::vector<PerturbationRow> compare_perturbation_exact(const CouplingParams& params, int n_first,
                                                        int n_last);

}  // namespace ptwell
