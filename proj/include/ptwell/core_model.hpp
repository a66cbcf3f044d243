#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace ptwell {

inline constexpr double pi = std::numbers::pi;

// Approximate single-channel merging strength of the lowest level pair.
// The solver computes the precise value (find_critical_z); this is for quick checks.
inline constexpr double default_z_crit = 4.48;

enum class Spin : int { up = +1, down = -1 };

inline constexpr std::array<Spin, 2> both_spins{Spin::up, Spin::down};

constexpr int sign(Spin s) { return static_cast<int>(s); }
constexpr Spin flipped(Spin s) { return s == Spin::up ? Spin::down : Spin::up; }

// Three real strengths of the coupled-channel square well (units hbar = 2m = 1,
// half-width 1). X and Y are the channel couplings, Z the internal strength.
class CouplingParams {
public:
    // Throws InvalidParameter unless X > 0 and Y > 0 (the decoupling limits
    // X -> 0 or Y -> 0 destroy the spin symmetry) and all values are finite.
    CouplingParams(double x, double y, double z);

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }

    double xy() const { return x_ * y_; }
    double sqrt_xy() const { return std::sqrt(x_ * y_); }

    friend bool operator==(const CouplingParams&, const CouplingParams&) = default;

private:
    double x_;
    double y_;
    double z_;
};

// Z + sigma * sqrt(XY): the only combination the reduced equation of a spin sector sees.
double z_eff(const CouplingParams& params, Spin sigma);

// sqrt(X/Y), the off-diagonal scale of the spin-like symmetry.
double omega(const CouplingParams& params);

// Same check for raw values; rejects x <= 0 or y <= 0.
double omega(double x, double y);

// sqrt(XY) + |Z| < z_crit.
bool is_physical(const CouplingParams& params, double z_crit = default_z_crit);

// One solved level of a spin sector. The energy is always recomputed from (s, t).
struct LevelRoot {
    int n = 0;
    Spin sigma = Spin::up;
    double s = 0.0;
    double t = 0.0;
    // Q_n = 2 (-1)^n (s - (n+1) pi/2), kept separately at full relative precision.
    double q = 0.0;

    double energy() const { return s * s - t * t; }
    double z_eff() const { return 2.0 * s * t; }
};

// (n+1) pi / 2, the Hermitian-limit position of root n.
constexpr double level_center(int n) { return 0.5 * (n + 1) * pi; }

}  // namespace ptwell
