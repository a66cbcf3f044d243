#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ptwell/core_model.hpp"

namespace ptwell {

inline constexpr double default_tol = 1e-12;

// Number of samples per localization window (n+1)pi/2 +- pi/4.
inline constexpr int window_samples = 64;

// f(s) = s sin 2s + t sinh 2t with t = z_eff / (2s). Throws InvalidParameter for s <= 0.
double secular_residual(double s, double z_eff);

// Root n of the reduced problem with effective strength z_eff. `sigma` only tags
// the result. Throws RootNotFound when the pair containing level n has merged.
LevelRoot solve_level(int n, double z_eff, double tol = default_tol, Spin sigma = Spin::up);
LevelRoot solve_level(int n, Spin sigma, const CouplingParams& params, double tol = default_tol);

// Lowest level of a pair that has complexified, tagged with its spin sector.
struct LostPair {
    int n = 0;  // the pair is (n, n+1)
    Spin sigma = Spin::up;

    friend bool operator==(const LostPair&, const LostPair&) = default;
};

struct SpectrumResult {
    CouplingParams params;
    // Sorted by energy, ties with sigma = +1 first.
    std::vector<LevelRoot> levels;
    bool physical = true;
    int n_max = 0;
    std::optional<LostPair> first_complex_pair;

    // Levels of one sector ordered by n.
    std::vector<LevelRoot> sector(Spin sigma) const;
};

SpectrumResult solve_spectrum(const CouplingParams& params, int n_max, double tol = default_tol);

// True while both roots of the pair (2k, 2k+1) are real.
bool pair_is_real(int k, double z_eff);

struct MergeEvent {
    int n = 0;  // merging pair is (n, n+1)
    Spin sigma = Spin::up;
    // |Z_eff| at coalescence.
    double z_critical = 0.0;
    // Internal strength Z at which the pair merges: z_critical - sqrt(XY).
    double critical_z = 0.0;
    double s_merge = 0.0;
};

struct MergeSearch {
    double search_bound = 60.0;  // largest |Z_eff| examined
    double step = 0.5;           // coarse stepping before bisection
};

// Coalescence point of the adjacent pair (n, n+1) by bisection on |Z_eff|.
// Only pairs sharing a lobe (n even) can merge; others raise NoMerge, as does a
// pair that survives up to search.search_bound.
MergeEvent find_critical_z(double xy_product, int n, double tol = default_tol,
                           MergeSearch search = {});

struct PhaseRow {
    double xy = 0.0;
    double z = 0.0;
    bool physical = true;
    std::optional<LostPair> first_complex_pair;
};

// One row per (xy, z) grid point, xy-major. Points with xy < 0 are recorded as
// non-physical with no pair. threads = 0 uses all cores.
std::vector<PhaseRow> phase_scan(std::span<const double> xy_grid, std::span<const double> z_grid,
                                 int n_max, unsigned threads = 0);

struct BoundaryPoint {
    double xy = 0.0;
    // Midpoint between the last physical and first non-physical z >= 0 in the scan.
    std::optional<double> z_star;
};

std::vector<BoundaryPoint> extract_boundary(std::span<const PhaseRow> rows);

}  // namespace ptwell
