#include "ptwell/secular_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "ptwell/errors.hpp"
#include "ptwell/parallel.hpp"

namespace ptwell {

namespace {

constexpr double quarter_pi = 0.25 * pi;

// f at s = (n+1)pi/2 + delta, using sin 2s = (-1)^(n+1) sin 2 delta so that a
// root close to the center keeps its full relative precision in delta.
double residual_about(int n, double delta, double z) {
    const double s = level_center(n) + delta;
    const double t = z / (2.0 * s);
    const double parity = (n % 2 == 0) ? -1.0 : 1.0;
    return s * parity * std::sin(2.0 * delta) + t * std::sinh(2.0 * t);
}

struct Sample {
    int window;  // level whose window holds the sample
    double delta;
    double f;
    double s() const { return level_center(window) + delta; }
};

// Both localization windows of pair k, in increasing s.
std::vector<Sample> scan_pair(int k, double z) {
    std::vector<Sample> out;
    out.reserve(2 * window_samples);
    const double step = (2.0 * quarter_pi) / (window_samples - 1);
    for (int w : {2 * k, 2 * k + 1}) {
        for (int j = 0; j < window_samples; ++j) {
            const double delta = -quarter_pi + j * step;
            out.push_back({w, delta, residual_about(w, delta, z)});
        }
    }
    return out;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Bisection on [a, b] (offsets about level `window`) down to width tol, then
// secant polishing.
double refine_root(int window, double a, double b, double z, double tol) {
    double fa = residual_about(window, a, z);
    double fb = residual_about(window, b, z);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = residual_about(window, m, z);
        if (fm == 0.0) return m;
        if (sign_of(fm) == sign_of(fa)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    // Secant pass from the final bracket; stays inside it or stops.
    double x0 = a, f0 = fa, x1 = b, f1 = fb;
    double best = std::abs(fa) < std::abs(fb) ? a : b;
    for (int it = 0; it < 4 && f1 != f0; ++it) {
        const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!(x2 >= a - tol && x2 <= b + tol)) break;
        const double f2 = residual_about(window, x2, z);
        best = x2;
        if (f2 == 0.0 || x2 == x1) break;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
    }
    return best;
}

struct PairRoots {
    // Root positions as (window, delta), lower first.
    std::array<std::pair<int, double>, 2> roots;
};

struct PairMinimum {
    double s;
    double f;
};

// Minimum of f over the pair region around the sample with the smallest value.
PairMinimum pair_minimum(const std::vector<Sample>& samples, double z) {
    const auto lowest = std::min_element(samples.begin(), samples.end(),
                                         [](const Sample& l, const Sample& r) { return l.f < r.f; });
    const auto idx = static_cast<std::size_t>(lowest - samples.begin());
    const double lo = samples[idx == 0 ? 0 : idx - 1].s();
    const double hi = samples[std::min(idx + 1, samples.size() - 1)].s();
    auto f = [z](double s) { return secular_residual(s, z); };
    const auto [s_min, f_min] =
        boost::math::tools::brent_find_minima(f, lo, hi, std::numeric_limits<double>::digits / 2);
    if (lowest->f < f_min) return {lowest->s(), lowest->f};
    return {s_min, f_min};
}

std::optional<PairRoots> locate_pair(int k, double z, double tol) {
    const auto samples = scan_pair(k, z);
    std::vector<std::pair<int, double>> roots;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const auto& a = samples[i];
        const auto& b = samples[i + 1];
        if (a.window != b.window) continue;
        if (a.f == 0.0) {
            roots.emplace_back(a.window, a.delta);
        } else if (sign_of(a.f) * sign_of(b.f) < 0) {
            roots.emplace_back(a.window, refine_root(a.window, a.delta, b.delta, z, tol));
        }
    }
    if (roots.size() == 2) return PairRoots{{roots[0], roots[1]}};
    if (roots.size() != 0) {
        throw RootNotFound("ambiguous sign pattern (" + std::to_string(roots.size()) +
                           " sign changes) for level pair (" + std::to_string(2 * k) + ", " +
                           std::to_string(2 * k + 1) + ") at z_eff=" + std::to_string(z));
    }

    // Both roots may sit inside one sampling cell just below coalescence.
    const auto minimum = pair_minimum(samples, z);
    if (!(minimum.f < 0.0)) return std::nullopt;
    const int w = minimum.s < level_center(2 * k) + quarter_pi ? 2 * k : 2 * k + 1;
    const double d_min = minimum.s - level_center(w);
    const double cell = 2.0 * quarter_pi / (window_samples - 1);
    const double lo = refine_root(w, d_min - cell, d_min, z, tol);
    const double hi = refine_root(w, d_min, d_min + cell, z, tol);
    return PairRoots{{std::pair{w, lo}, std::pair{w, hi}}};
}

LevelRoot make_root(int n, Spin sigma, int window, double delta_window, double z) {
    // Offset about level n's own center.
    const double delta = delta_window + 0.5 * pi * (window - n);
    LevelRoot r;
    r.n = n;
    r.sigma = sigma;
    r.s = level_center(n) + delta;
    r.t = z / (2.0 * r.s);
    r.q = 2.0 * (n % 2 == 0 ? 1.0 : -1.0) * delta;
    return r;
}

void check_tol(double tol) {
    if (!(tol > 0.0)) throw InvalidParameter("tolerance must be positive");
}

std::optional<LostPair> first_lost_pair(double z_up, double z_down, int n_max) {
    for (int k = 0; 2 * k <= n_max; ++k) {
        for (auto [sigma, z] : {std::pair{Spin::up, z_up}, std::pair{Spin::down, z_down}}) {
            if (!pair_is_real(k, z)) return LostPair{2 * k, sigma};
        }
    }
    return std::nullopt;
}

}  // namespace

double secular_residual(double s, double z_eff) {
    if (!(s > 0.0)) throw InvalidParameter("secular residual requires s > 0");
    const double t = z_eff / (2.0 * s);
    return s * std::sin(2.0 * s) + t * std::sinh(2.0 * t);
}

LevelRoot solve_level(int n, double z_eff, double tol, Spin sigma) {
    if (n < 0) throw InvalidParameter("level index must be non-negative");
    check_tol(tol);
    const int k = n / 2;
    const auto pair = locate_pair(k, z_eff, tol);
    if (!pair) {
        throw RootNotFound("level " + std::to_string(n) + " has no real root at z_eff=" +
                           std::to_string(z_eff) + ": pair (" + std::to_string(2 * k) + ", " +
                           std::to_string(2 * k + 1) + ") has merged");
    }
    const auto [window, delta] = pair->roots[n % 2];
    return make_root(n, sigma, window, delta, z_eff);
}

LevelRoot solve_level(int n, Spin sigma, const CouplingParams& params, double tol) {
    return solve_level(n, z_eff(params, sigma), tol, sigma);
}

std::vector<LevelRoot> SpectrumResult::sector(Spin sigma) const {
    std::vector<LevelRoot> out;
    for (const auto& level : levels) {
        if (level.sigma == sigma) out.push_back(level);
    }
    std::sort(out.begin(), out.end(), [](const LevelRoot& a, const LevelRoot& b) { return a.n < b.n; });
    return out;
}

SpectrumResult solve_spectrum(const CouplingParams& params, int n_max, double tol) {
    if (n_max < 0) throw InvalidParameter("n_max must be non-negative");
    check_tol(tol);
    SpectrumResult result{params, {}, true, n_max, std::nullopt};
    for (Spin sigma : both_spins) {
        for (int n = 0; n <= n_max; ++n) {
            try {
                result.levels.push_back(solve_level(n, sigma, params, tol));
            } catch (const RootNotFound&) {
                result.physical = false;
            }
        }
    }
    if (!result.physical) {
        result.first_complex_pair =
            first_lost_pair(z_eff(params, Spin::up), z_eff(params, Spin::down), n_max);
    }
    std::sort(result.levels.begin(), result.levels.end(), [](const LevelRoot& a, const LevelRoot& b) {
        if (a.energy() != b.energy()) return a.energy() < b.energy();
        return sign(a.sigma) > sign(b.sigma);
    });
    return result;
}

bool pair_is_real(int k, double z_eff) {
    const auto samples = scan_pair(k, z_eff);
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        if (samples[i].f <= 0.0) return true;
    }
    return pair_minimum(samples, z_eff).f <= 0.0;
}

MergeEvent find_critical_z(double xy_product, int n, double tol, MergeSearch search) {
    if (!(xy_product >= 0.0)) throw InvalidParameter("xy_product must be non-negative");
    if (n < 0) throw InvalidParameter("level index must be non-negative");
    check_tol(tol);
    if (n % 2 != 0) {
        throw NoMerge("levels " + std::to_string(n) + " and " + std::to_string(n + 1) +
                      " belong to different lobes of the secular function and never coalesce");
    }
    const int k = n / 2;
    double lo = 0.0;
    double hi = search.step;
    while (pair_is_real(k, hi)) {
        lo = hi;
        hi += search.step;
        if (lo >= search.search_bound) {
            throw NoMerge("pair (" + std::to_string(n) + ", " + std::to_string(n + 1) +
                          ") stays real up to |Z_eff| = " + std::to_string(search.search_bound));
        }
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (pair_is_real(k, mid) ? lo : hi) = mid;
    }
    MergeEvent event;
    event.n = n;
    event.sigma = Spin::up;
    event.z_critical = 0.5 * (lo + hi);
    event.critical_z = event.z_critical - std::sqrt(xy_product);
    event.s_merge = pair_minimum(scan_pair(k, event.z_critical), event.z_critical).s;
    return event;
}

std::vector<PhaseRow> phase_scan(std::span<const double> xy_grid, std::span<const double> z_grid,
                                 int n_max, unsigned threads) {
    if (n_max < 0) throw InvalidParameter("n_max must be non-negative");
    const std::size_t nz = z_grid.size();
    return parallel_map(
        xy_grid.size() * nz,
        [&](std::size_t i) {
            PhaseRow row;
            row.xy = xy_grid[i / nz];
            row.z = z_grid[i % nz];
            if (!(row.xy >= 0.0) || !std::isfinite(row.z)) {
                row.physical = false;
                return row;
            }
            const double coupling = std::sqrt(row.xy);
            row.first_complex_pair = first_lost_pair(row.z + coupling, row.z - coupling, n_max);
            row.physical = !row.first_complex_pair.has_value();
            return row;
        },
        threads);
}

std::vector<BoundaryPoint> extract_boundary(std::span<const PhaseRow> rows) {
    std::vector<BoundaryPoint> out;
    for (std::size_t i = 0; i < rows.size();) {
        std::size_t j = i;
        while (j < rows.size() && rows[j].xy == rows[i].xy) ++j;
        BoundaryPoint point{rows[i].xy, std::nullopt};
        std::optional<double> last_physical;
        for (std::size_t r = i; r < j; ++r) {
            if (rows[r].z < 0.0) continue;
            if (rows[r].physical) {
                last_physical = rows[r].z;
            } else if (last_physical) {
                point.z_star = 0.5 * (*last_physical + rows[r].z);
                break;
            }
        }
        out.push_back(point);
        i = j;
    }
    return out;
}

}  // namespace ptwell
