#include "ptwell/core_model.hpp"

#include <string>

#include "ptwell/errors.hpp"

namespace ptwell {

CouplingParams::CouplingParams(double x, double y, double z) : x_(x), y_(y), z_(z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        throw InvalidParameter("coupling strengths must be finite");
    }
    if (x <= 0.0 || y <= 0.0) {
        throw InvalidParameter(
            "X and Y must be strictly positive (X=" + std::to_string(x) + ", Y=" +
            std::to_string(y) +
            "); X -> 0 or Y -> 0 is the decoupling limit where the spin symmetry Omega ceases to exist");
    }
}

double z_eff(const CouplingParams& params, Spin sigma) {
    return params.z() + sign(sigma) * params.sqrt_xy();
}

double omega(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) {
        throw InvalidParameter("omega = sqrt(X/Y) requires X > 0 and Y > 0 (decoupling limit)");
    }
    return std::sqrt(x / y);
}

double omega(const CouplingParams& params) { return omega(params.x(), params.y()); }

bool is_physical(const CouplingParams& params, double z_crit) {
    return params.sqrt_xy() + std::abs(params.z()) < z_crit;
}

}  // namespace ptwell
