// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ptwell/operator_algebra.hpp"
#include "ptwell/perturbation.hpp"
#include "ptwell/secular_solver.hpp"
#include "ptwell/states.hpp"

using namespace ptwell;

namespace {

// Regression constant: tangency of the lowest pair at xy = 0 (50-digit Newton oracle).
constexpr double pinned_z_crit = 4.4753086021932552;

struct Verdict {
    bool passed;
    std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buffer[256];
    std::snprintf(buffer, sizeof buffer, pattern, a, b, c);
    return buffer;
}

cdouble fd_derivative(const BoundState& s, double x, double h) {
    return (-eval_phi(s, x + 2 * h) + 8.0 * eval_phi(s, x + h) - 8.0 * eval_phi(s, x - h) + eval_phi(s, x - 2 * h)) /
           (12.0 * h);
}

Verdict critical_coupling() {
    const auto start = std::chrono::steady_clock::now();
    const auto event = find_critical_z(0.0, 0);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto [z_oracle, s_oracle] = oracle::tangency();
    const bool ok = std::abs(event.z_critical - 4.48) <= 0.02 && seconds < 1.0 &&
                    std::abs(event.z_critical - pinned_z_crit) < 1e-9 && std::abs(z_oracle - pinned_z_crit) < 1e-12;
    return {ok, fmt("z_crit=%.13f (oracle %.16f), runtime %.3f s", event.z_critical, z_oracle, seconds)};
}

// Boundary of the coupled model found directly from its spectrum (bisection on Z).
double coupled_boundary(double xy) {
    const double c = std::sqrt(xy);
    double lo = 0.0;
    double hi = 6.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (solve_spectrum(CouplingParams(c, c, mid), 1).physical ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Verdict coupled_boundary_shift() {
    double worst = 0.0;
    for (double xy : {0.25, 1.0, 4.0}) {
        worst = std::max(worst, std::abs(coupled_boundary(xy) - (pinned_z_crit - std::sqrt(xy))));
        worst = std::max(worst, std::abs(find_critical_z(xy, 0).critical_z - (pinned_z_crit - std::sqrt(xy))));
    }
    return {worst <= 0.01, fmt("max |Z*(xy) - (z_crit - sqrt(xy))| = %.3e over xy in {0.25, 1, 4}", worst)};
}

Verdict hermitian_limit() {
    const auto result = solve_spectrum(CouplingParams(1e-300, 1e-300, 0.0), 10);
    double worst = 0.0;
    for (const auto& level : result.levels) {
        const double expected = (level.n + 1) * (level.n + 1) * pi * pi / 4;
        worst = std::max(worst, std::abs(level.energy() - expected));
    }
    return {result.levels.size() == 22 && worst <= 1e-10, fmt("max |E_n - (n+1)^2 pi^2/4| = %.3e for n <= 10", worst)};
}

Verdict crossing_degeneracy() {
    const CouplingParams p(1, 1, 0);
    const auto result = solve_spectrum(p, 10);
    const auto up = result.sector(Spin::up);
    const auto down = result.sector(Spin::down);
    double split = 0.0;
    double fd_gap = 0.0;
    double closed_gap = 0.0;
    double smallest = INFINITY;
    for (int n = 0; n <= 10; ++n) {
        split = std::max(split, std::abs(up[n].energy() - down[n].energy()));
        const auto plus = make_state(up[n], p);
        const auto minus = make_state(down[n], p);
        const double x = 0.5;
        const double h = 2e-4;
        const cdouble numeric = eval_phi(plus, x) * fd_derivative(minus, x, h) - fd_derivative(plus, x, h) * eval_phi(minus, x);
        fd_gap = std::max(fd_gap, std::abs(wronskian(plus, minus, x) - numeric));
        const cdouble closed = wronskian_at_crossing(p, n);
        closed_gap = std::max(closed_gap, std::abs(closed - wronskian(plus, minus, 0.0)));
        smallest = std::min(smallest, std::abs(closed));
    }
    const bool ok = up.size() == 11 && split < 1e-10 && smallest > 0.0 && fd_gap <= 1e-8 && closed_gap <= 1e-12;
    return {ok, fmt("max splitting %.3e, min |W(0)| %.4f, |W - W_fd| at x=0.5 %.3e", split, smallest, fd_gap)};
}

Verdict product_invariance() {
    const auto a = solve_spectrum(CouplingParams(2, 0.5, 0.3), 10);
    const auto b = solve_spectrum(CouplingParams(1, 1, 0.3), 10);
    double worst = a.levels.size() == b.levels.size() ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < std::min(a.levels.size(), b.levels.size()); ++i) {
        worst = std::max(worst, std::abs(a.levels[i].energy() - b.levels[i].energy()));
    }
    return {worst <= 1e-12, fmt("max entrywise difference %.3e over %g levels", worst, static_cast<double>(a.levels.size()))};
}

Verdict perturbation_scaling() {
    const auto rows = compare_perturbation_exact(1.0, 1, 40);
    double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
    bool beats = true;
    double worst_oracle = 0.0;
    for (const auto& row : rows) {
        beats = beats && std::abs(row.err2) < std::abs(row.err1);
        worst_oracle = std::max(worst_oracle, std::abs(row.q_exact - oracle::root_q(row.n, 1.0)) / row.q_exact);
        if (row.n < 4) continue;
        const double x = std::log(row.n + 1.0);
        const double y = std::log(std::abs(row.err2));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        m += 1;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const bool ok = std::abs(slope + 7.0) <= 0.5 && beats && worst_oracle < 1e-9;
    return {ok, fmt("log-log slope %.3f over n=4..40; order 2 beats order 1 for n=1..40: ", slope) +
                    (beats ? "yes" : "no")};
}

Verdict ground_state() {
    const CouplingParams p(0.1, 0.1, 0.01);
    double worst = 0.0;
    std::string detail;
    for (Spin sigma : both_spins) {
        const double exact = oracle::energy(0, z_eff(p, sigma));
        const double residual = ground_state_expansion(p, sigma) - exact;
        worst = std::max(worst, std::abs(residual));
        detail += fmt("sigma=%+.0f: E0=%.14f residual %.3e; ", sign(sigma), exact, residual);
    }
    return {worst <= 1e-4, detail + "bound 1e-4"};
}

Verdict quasi_parity_asymptotics() {
    double worst_margin = -INFINITY;
    for (double z : {0.1, 0.5, 1.0, -1.0}) {
        for (int n = 20; n <= 40; ++n) {
            const auto root = solve_level(n, z);
            const auto state = match_amplitudes(root);
            const double expected = n % 2 == 0 ? 1.0 : -1.0;
            const double exact = parity_element(state, state).real() / std::norm(state.a);
            const double dev = std::max(std::abs(parity_overlap(root) - expected), std::abs(exact - expected));
            worst_margin = std::max(worst_margin, dev * (n + 1));
        }
    }
    return {worst_margin <= 3.0, fmt("max (n+1)|<n|P|n>/|A|^2 - (-1)^n| = %.4f (limit 3) for n=20..40", worst_margin)};
}

Verdict identity_suite() {
    const auto report = run_identity_suite(CouplingParams(1, 1, 0.5), {200, 8, NormKind::max_abs_entry});
    const std::vector<std::string> required{
        "pseudo_hermiticity",          "commutator_h_omega",         "metric_hermitian",
        "metric_positive_on_span",     "metric_quasi_hermiticity_on_span", "quasi_parity_routes_agree",
        "metric_block_factorization",  "metric_block_factorization_weighted", "flipped_rho_breaks_positivity"};
    bool ok = report.all_passed();
    std::string failed;
    for (const auto& name : required) {
        const auto* entry = report.find(name);
        if (entry == nullptr || !entry->passed) {
            ok = false;
            failed += " " + name;
        }
    }
    for (const auto& e : report.entries) {
        if (!e.passed && failed.find(e.name) == std::string::npos) failed += " " + e.name;
    }
    const double lambda_min = -report.find("metric_positive_on_span")->residual;
    const double flipped_min = report.find("flipped_rho_breaks_positivity")->residual;
    return {ok, fmt("%g checks, min eig(Theta) %.4f, flipped min eig %.4f", static_cast<double>(report.entries.size()),
                    lambda_min, flipped_min) +
                    (failed.empty() ? "" : "; failed:" + failed)};
}

Verdict oracle_agreement() {
    double overlap_gap = 0.0;
    double off_diagonal = 0.0;
    for (const CouplingParams& p : {CouplingParams(1, 1, 0.5), CouplingParams(2, 0.5, -0.3), CouplingParams(0.3, 0.4, 1.2)}) {
        std::vector<std::pair<BoundState, int>> basis;
        for (Spin sigma : both_spins) {
            for (int n = 0; n <= 8; ++n) {
                const auto root = solve_level(n, sigma, p);
                const cdouble kappa(root.s, -root.t);
                const cdouble integral = oracle::integrate_well(
                    [&](double x) { return std::sin(std::conj(kappa) * (x + 1.0)) * std::sin(kappa * (1.0 - x)); });
                overlap_gap = std::max(overlap_gap, std::abs(parity_overlap(root) - integral));
                basis.emplace_back(make_state(root, p), quasi_parity(root).value());
            }
        }
        for (const auto& [m, rho] : basis) {
            for (const auto& [n, unused] : basis) {
                if (m.root.n == n.root.n && m.root.sigma == n.root.sigma) continue;
                const cdouble overlap = static_cast<double>(rho) * p.y() * oracle::integrate_well([&](double x) {
                    const auto left = eval_wavefunction(m, p, -x);
                    const auto right = eval_wavefunction(n, p, x);
                    return std::conj(left.chi) * right.phi + std::conj(left.phi) * right.chi;
                });
                off_diagonal = std::max(off_diagonal, std::abs(overlap));
            }
        }
    }
    return {overlap_gap <= 1e-10 && off_diagonal < 1e-8,
            fmt("max |parity_overlap - quadrature| %.3e, max biorthogonal off-diagonal %.3e", overlap_gap, off_diagonal)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"critical coupling", critical_coupling},
        {"coupled boundary", coupled_boundary_shift},
        {"Hermitian limit", hermitian_limit},
        {"crossing degeneracy", crossing_degeneracy},
        {"XY-product invariance", product_invariance},
        {"perturbation scaling", perturbation_scaling},
        {"ground-state expansion", ground_state},
        {"quasi-parity asymptotics", quasi_parity_asymptotics},
        {"operator identity suite", identity_suite},
        {"oracle agreement", oracle_agreement},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict verdict{false, ""};
        try {
            verdict = criteria[i].second();
        } catch (const std::exception& e) {
            verdict = {false, std::string("exception: ") + e.what()};
        }
        if (!verdict.passed) ++failures;
        std::printf("%s  %2zu %-26s %s\n", verdict.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    verdict.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
