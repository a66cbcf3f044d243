#pragma once

#include <complex>

#include "ptwell/core_model.hpp"

namespace ptwell {

using cdouble = std::complex<double>;

// Matched bound state of one spin sector:
//   phi(x) = A sin kappa (x+1) on [-1, 0],  C sin kappa* (1-x) on [0, 1],
// with kappa = s - i t. The second channel is chi = sigma * omega * phi and the
// full-space ket is sqrt(Y) * (phi, chi).
struct BoundState {
    LevelRoot root;
    cdouble kappa;
    cdouble a;
    cdouble c;
};

// Relative sign rho = +-1 attached to a level. Never zero.
class QuasiParity {
public:
    explicit QuasiParity(int value);
    int value() const { return value_; }
    QuasiParity flipped() const { return QuasiParity(-value_); }
    friend bool operator==(const QuasiParity&, const QuasiParity&) = default;

private:
    int value_;
};

inline constexpr double degenerate_matching_threshold = 1e-14;
inline constexpr double accidental_node_threshold = 1e-12;
// Below this |t| the closed-form overlap switches to its Taylor branch.
inline constexpr double small_t_threshold = 1e-6;

// Amplitudes from continuity at x = 0 with C = 1. Throws DegenerateMatching
// when |sin kappa| < 1e-14.
BoundState match_amplitudes(const LevelRoot& root);

// Matched and rescaled by a positive factor so that |<<E|E>>| = 1.
BoundState make_state(const LevelRoot& root, const CouplingParams& params);

struct ChannelValues {
    cdouble phi;
    cdouble chi;
};

// Both channels at x in [-1, 1]; phi(+-1) = 0 exactly.
ChannelValues eval_wavefunction(const BoundState& state, const CouplingParams& params, double x);
cdouble eval_phi(const BoundState& state, double x);
cdouble eval_phi_derivative(const BoundState& state, double x);

// Continuity residuals |A sin k - C sin k*| and |A k cos k + C k* cos k*|.
double continuity_residual(const BoundState& state);
double derivative_residual(const BoundState& state);

// Closed form (1/2s) sin 2s cosh 2t - (1/2t) cos 2s sinh 2t, i.e. the integral of
// sin kappa*(x+1) sin kappa(1-x) over [-1, 1]. Uses a Taylor branch for |t| < 1e-6.
double parity_overlap(const LevelRoot& root);

// Exact <m|P|n> = integral of conj(phi_m(x)) phi_n(-x) over [-1, 1], closed form.
cdouble parity_element(const BoundState& m, const BoundState& n);

// sigma * sign(parity_overlap). Throws AccidentalNode below 1e-12.
QuasiParity quasi_parity(const LevelRoot& root);

// <<E_m, tau | E_n, sigma>> = rho_m * sqrt(XY) (sigma_m + sigma_n) <m|P|n>.
cdouble biorthogonal_overlap(const BoundState& left, QuasiParity left_rho, const BoundState& right,
                             const CouplingParams& params);

// 2 sigma rho sqrt(XY) <n|P|n>.
double self_overlap(const BoundState& state, const CouplingParams& params, QuasiParity rho);

// Rescales A and C by a positive factor so that |self_overlap| = 1.
BoundState normalize_special(const BoundState& state, const CouplingParams& params);

// phi_plus phi_minus' - phi_plus' phi_minus at x.
cdouble wronskian(const BoundState& plus, const BoundState& minus, double x);

// Wronskian of the degenerate sigma = +1 / -1 states of level n at the interface x = 0,
// A_minus C_plus kappa* sin 2 kappa* with kappa the sigma = +1 wavenumber, both
// states in make_state normalization. Requires Z = 0.
cdouble wronskian_at_crossing(const CouplingParams& params, int n);

// Weak-coupling estimate pi^2/4 + XY/pi^2 + 2 sigma Z sqrt(XY)/pi^2 of E_0.
double ground_state_expansion(const CouplingParams& params, Spin sigma);

}  // namespace ptwell
