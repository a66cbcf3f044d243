#include "ptwell/states.hpp"

#include <cmath>
#include <string>

#include "ptwell/errors.hpp"
#include "ptwell/secular_solver.hpp"

namespace ptwell {

namespace {

// sin(w)/w with a series near 0.
cdouble sinc(cdouble w) {
    if (std::abs(w) < 1e-4) {
        const cdouble w2 = w * w;
        return 1.0 - w2 / 6.0 + w2 * w2 / 120.0;
    }
    return std::sin(w) / w;
}

// Integral of sin(a u) sin(b u) over [0, 1].
cdouble sine_product_integral(cdouble a, cdouble b) {
    return 0.5 * (sinc(a - b) - sinc(a + b));
}

}  // namespace

QuasiParity::QuasiParity(int value) : value_(value) {
    if (value != 1 && value != -1) throw InvalidParameter("quasi-parity must be +1 or -1");
}

BoundState match_amplitudes(const LevelRoot& root) {
    const cdouble kappa(root.s, -root.t);
    const cdouble sk = std::sin(kappa);
    if (std::abs(sk) < degenerate_matching_threshold) {
        throw DegenerateMatching("sin(kappa) vanishes for level " + std::to_string(root.n));
    }
    const cdouble c = 1.0;
    return BoundState{root, kappa, c * std::sin(std::conj(kappa)) / sk, c};
}

BoundState make_state(const LevelRoot& root, const CouplingParams& params) {
    return normalize_special(match_amplitudes(root), params);
}

cdouble eval_phi(const BoundState& state, double x) {
    if (x <= 0.0) return state.a * std::sin(state.kappa * (x + 1.0));
    return state.c * std::sin(std::conj(state.kappa) * (1.0 - x));
}

cdouble eval_phi_derivative(const BoundState& state, double x) {
    if (x <= 0.0) return state.a * state.kappa * std::cos(state.kappa * (x + 1.0));
    const cdouble kc = std::conj(state.kappa);
    return -state.c * kc * std::cos(kc * (1.0 - x));
}

ChannelValues eval_wavefunction(const BoundState& state, const CouplingParams& params, double x) {
    if (!(std::abs(x) <= 1.0)) throw InvalidParameter("wavefunction is defined on [-1, 1] only");
    const cdouble phi = eval_phi(state, x);
    return {phi, static_cast<double>(sign(state.root.sigma)) * omega(params) * phi};
}

double continuity_residual(const BoundState& state) {
    return std::abs(state.a * std::sin(state.kappa) - state.c * std::sin(std::conj(state.kappa)));
}

double derivative_residual(const BoundState& state) {
    const cdouble k = state.kappa;
    const cdouble kc = std::conj(k);
    return std::abs(state.a * k * std::cos(k) + state.c * kc * std::cos(kc));
}

double parity_overlap(const LevelRoot& root) {
    const double s = root.s;
    const double u = 2.0 * root.t;
    const double sinh_ratio =
        std::abs(root.t) < small_t_threshold ? 1.0 + u * u / 6.0 + u * u * u * u / 120.0 : std::sinh(u) / u;
    return std::sin(2.0 * s) * std::cosh(u) / (2.0 * s) - std::cos(2.0 * s) * sinh_ratio;
}

cdouble parity_element(const BoundState& m, const BoundState& n) {
    const cdouble km = m.kappa;
    const cdouble kn = n.kappa;
    // Left half pairs phi_m on [-1,0] with phi_n on [0,1]; right half the reverse.
    return std::conj(m.a) * n.c * sine_product_integral(std::conj(km), std::conj(kn)) +
           std::conj(m.c) * n.a * sine_product_integral(km, kn);
}

QuasiParity quasi_parity(const LevelRoot& root) {
    const double overlap = parity_overlap(root);
    if (!(std::abs(overlap) >= accidental_node_threshold)) {
        throw AccidentalNode("parity self-overlap of level " + std::to_string(root.n) +
                             " vanishes; quasi-parity undefined");
    }
    return QuasiParity(sign(root.sigma) * (overlap > 0.0 ? 1 : -1));
}

cdouble biorthogonal_overlap(const BoundState& left, QuasiParity left_rho, const BoundState& right,
                             const CouplingParams& params) {
    const double spin_sum = sign(left.root.sigma) + sign(right.root.sigma);
    if (spin_sum == 0.0) return 0.0;
    return static_cast<double>(left_rho.value()) * params.sqrt_xy() * spin_sum *
           parity_element(left, right);
}

double self_overlap(const BoundState& state, const CouplingParams& params, QuasiParity rho) {
    return 2.0 * sign(state.root.sigma) * rho.value() * params.sqrt_xy() *
           parity_element(state, state).real();
}

BoundState normalize_special(const BoundState& state, const CouplingParams& params) {
    const double magnitude = std::abs(2.0 * params.sqrt_xy() * parity_element(state, state).real());
    if (!(magnitude >= accidental_node_threshold)) {
        throw AccidentalNode("self-overlap of level " + std::to_string(state.root.n) +
                             " vanishes; cannot normalize");
    }
    const double scale = 1.0 / std::sqrt(magnitude);
    BoundState out = state;
    out.a *= scale;
    out.c *= scale;
    return out;
}

cdouble wronskian(const BoundState& plus, const BoundState& minus, double x) {
    return eval_phi(plus, x) * eval_phi_derivative(minus, x) -
           eval_phi_derivative(plus, x) * eval_phi(minus, x);
}

cdouble wronskian_at_crossing(const CouplingParams& params, int n) {
    if (params.z() != 0.0) throw InvalidParameter("the sigma = +-1 levels cross only at Z = 0");
    const auto plus = make_state(solve_level(n, Spin::up, params), params);
    const auto minus = make_state(solve_level(n, Spin::down, params), params);
    const cdouble kc = std::conj(plus.kappa);
    return minus.a * plus.c * kc * std::sin(2.0 * kc);
}

double ground_state_expansion(const CouplingParams& params, Spin sigma) {
    const double pi2 = pi * pi;
    return 0.25 * pi2 + params.xy() / pi2 + 2.0 * sign(sigma) * params.z() * params.sqrt_xy() / pi2;
}

}  // namespace ptwell
