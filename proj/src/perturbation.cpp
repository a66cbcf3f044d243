#include "ptwell/perturbation.hpp"

#include <cmath>

#include "ptwell/errors.hpp"
#include "ptwell/secular_solver.hpp"

namespace ptwell {

SeriesParams SeriesParams::of(int n, double z_eff) {
    if (n < 0) throw InvalidParameter("level index must be non-negative");
    const double length = (n + 1) * pi;
    SeriesParams p;
    p.rho = 1.0 / length;
    p.alpha = 2.0 * z_eff / length;
    p.beta = p.alpha * p.rho;
    p.tau = n % 2 == 0 ? 1 : -1;
    return p;
}

SigmaCoefficients::SigmaCoefficients(int tau, int max_degree) : tau_(tau), max_degree_(max_degree) {
    if (tau != 1 && tau != -1) throw InvalidParameter("tau must be +1 or -1");
    if (max_degree < 0 || max_degree > known_degree) {
        throw InvalidParameter("Sigma coefficients are tabulated only for k + l <= 2");
    }
}

double SigmaCoefficients::at(int k, int l) const {
    if (k < 0 || l < 0 || k + l > max_degree_) return 0.0;
    switch (k * 10 + l) {
        case 0: return 1.0;
        case 10: return 1.0 / 6.0;
        case 1: return -3.0 * tau_;
        case 20: return 1.0 / 120.0;
        case 11: return (1.0 - 8.0 * tau_) / 6.0;
        case 2: return 15.0;
        default: return 0.0;
    }
}

double q_series(int n, double z_eff, int order) {
    if (order != 1 && order != 2) throw InvalidParameter("series order must be 1 or 2");
    if (n < 0) throw InvalidParameter("level index must be non-negative");
    const double m = n + 1;
    const double z2 = z_eff * z_eff;
    const double lead = 4.0 * z2 / std::pow(m * pi, 3);
    if (order == 1) return lead;
    const double alternating = (n % 2 == 0 ? -1.0 : 1.0) * 18.0 / (m * m * pi * pi);
    return lead + 8.0 * z2 * z2 / (3.0 * std::pow(m * pi, 5)) * (1.0 + alternating);
}

double q_series_general(const SeriesParams& series, const SigmaCoefficients& coeffs) {
    const double a2 = series.alpha * series.alpha;
    const double b2 = series.beta * series.beta;
    double sigma = 0.0;
    double a_pow = 1.0;
    for (int k = 0; k <= coeffs.max_degree(); ++k) {
        double b_pow = 1.0;
        for (int l = 0; k + l <= coeffs.max_degree(); ++l) {
            sigma += coeffs.at(k, l) * a_pow * b_pow;
            b_pow *= b2;
        }
        a_pow *= a2;
    }
    return series.alpha * series.beta * sigma;
}

std::vector<PerturbationRow> compare_perturbation_exact(double z_eff, int n_first, int n_last,
                                                        Spin sigma) {
    if (n_first < 0 || n_last < n_first) throw InvalidParameter("invalid level range");
    std::vector<PerturbationRow> rows;
    for (int n = n_first; n <= n_last; ++n) {
        PerturbationRow row;
        row.n = n;
        row.sigma = sigma;
        row.q_exact = solve_level(n, z_eff, default_tol, sigma).q;
        row.q_order1 = q_series(n, z_eff, 1);
        row.q_order2 = q_series(n, z_eff, 2);
        row.err1 = std::abs(row.q_exact - row.q_order1);
        row.err2 = std::abs(row.q_exact - row.q_order2);
        rows.push_back(row);
    }
    return rows;
}

std::vector<PerturbationRow> compare_perturbation_exact(const CouplingParams& params, int n_first,
                                                        int n_last) {
    auto rows = compare_perturbation_exact(z_eff(params, Spin::up), n_first, n_last, Spin::up);
    auto down = compare_perturbation_exact(z_eff(params, Spin::down), n_first, n_last, Spin::down);
    rows.insert(rows.end(), down.begin(), down.end());
    return rows;
}

}  // namespace ptwell
