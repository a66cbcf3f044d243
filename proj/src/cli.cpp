#include "ptwell/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "ptwell/errors.hpp"
#include "ptwell/perturbation.hpp"
#include "ptwell/secular_solver.hpp"
#include "ptwell/states.hpp"

namespace ptwell::cli {

namespace {

using json = nlohmann::ordered_json;

double parse_double(std::string_view text) {
    const std::string copy(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(copy, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != copy.size() || !std::isfinite(v)) {
        throw InvalidParameter("not a finite number: '" + copy + "'");
    }
    return v;
}

json params_json(const CouplingParams& params) {
    return json{{"X", params.x()}, {"Y", params.y()}, {"Z", params.z()}};
}

json pair_json(const std::optional<LostPair>& pair) {
    if (!pair) return nullptr;
    return json{{"n", pair->n}, {"sigma", sign(pair->sigma)}};
}

std::optional<int> safe_quasi_parity(const LevelRoot& root) {
    try {
        return quasi_parity(root).value();
    } catch (const AccidentalNode&) {
        return std::nullopt;
    }
}

void write_json(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const RootNotFound& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::non_physical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }
}

}  // namespace

Range Range::parse(std::string_view text) {
    Range r;
    const auto first = text.find(':');
    if (first == std::string_view::npos) {
        r.start = parse_double(text);
        r.step = 1.0;
        r.stop = r.start + r.step;
        return r;
    }
    const auto second = text.find(':', first + 1);
    if (second == std::string_view::npos) {
        throw InvalidParameter("range must be start:stop:step, got '" + std::string(text) + "'");
    }
    r.start = parse_double(text.substr(0, first));
    r.stop = parse_double(text.substr(first + 1, second - first - 1));
    r.step = parse_double(text.substr(second + 1));
    if (!(r.step > 0.0)) throw InvalidParameter("range step must be positive");
    if (r.stop < r.start) throw InvalidParameter("range stop must not precede start");
    return r;
}

std::vector<double> Range::values() const {
    std::vector<double> out;
    // Points closer to stop than a tiny fraction of the step count as the
    // excluded endpoint, so 0:1:0.1 has ten points despite rounding.
    const double span = (stop - start) / step;
    const auto count = static_cast<long>(std::ceil(span - 1e-9));
    for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

Spin parse_sigma(std::string_view text) {
    if (text == "+1" || text == "1" || text == "up" || text == "+") return Spin::up;
    if (text == "-1" || text == "down" || text == "-") return Spin::down;
    throw InvalidParameter("sigma must be +1 or -1, got '" + std::string(text) + "'");
}

unsigned parse_threads(const char* value) {
    if (value == nullptr || *value == '\0') return 0;
    const std::string_view text(value);
    unsigned threads = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), threads);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw InvalidParameter("PTWELL_THREADS must be a non-negative integer, got '" + std::string(text) + "'");
    }
    return threads;
}

std::string format_number(double v) {
    char buffer[40];
    // Signed zeros print as 0.
    std::snprintf(buffer, sizeof buffer, "%.17g", v == 0.0 ? 0.0 : v);
    return buffer;
}

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const CouplingParams params(config.x, config.y, config.z);
        const SpectrumResult result = solve_spectrum(params, config.n_max, config.tol);
        if (config.format == OutputFormat::csv) {
            out << "n,sigma,s,t,E,Q,quasi_parity\n";
            for (const auto& level : result.levels) {
                const auto rho = safe_quasi_parity(level);
                out << level.n << ',' << sign(level.sigma) << ',' << format_number(level.s) << ','
                    << format_number(level.t) << ',' << format_number(level.energy()) << ','
                    << format_number(level.q) << ',' << (rho ? std::to_string(*rho) : "") << '\n';
            }
        } else {
            json levels = json::array();
            for (const auto& level : result.levels) {
                const auto rho = safe_quasi_parity(level);
                levels.push_back(json{{"n", level.n},
                                      {"sigma", sign(level.sigma)},
                                      {"s", level.s},
                                      {"t", level.t},
                                      {"E", level.energy()},
                                      {"Q", level.q},
                                      {"quasi_parity", rho ? json(*rho) : json(nullptr)}});
            }
            write_json(out, json{{"params", params_json(params)},
                                 {"levels", levels},
                                 {"physical", result.physical},
                                 {"first_complex_pair", pair_json(result.first_complex_pair)},
                                 {"tool_version", tool_version}});
        }
        if (!result.physical) {
            err << "warning: spectrum is not physical; pair (" << result.first_complex_pair->n << ", "
                << result.first_complex_pair->n + 1 << ") of sigma=" << sign(result.first_complex_pair->sigma)
                << " has complexified\n";
            return exit_code::non_physical;
        }
        return exit_code::ok;
    });
}

int cmd_phase(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (config.n_max < 0) throw InvalidParameter("n_max must be non-negative");
        const auto xy = config.xy_range.values();
        const auto z = config.z_range.values();
        const auto rows = phase_scan(xy, z, config.n_max, config.threads);
        const auto boundary = extract_boundary(rows);
        if (config.format == OutputFormat::csv) {
            out << "xy,z,physical,first_complex_pair\n";
            for (const auto& row : rows) {
                out << format_number(row.xy) << ',' << format_number(row.z) << ',' << (row.physical ? 1 : 0)
                    << ',' << (row.first_complex_pair ? std::to_string(row.first_complex_pair->n) : "") << '\n';
            }
            out << "\nxy,z_star,z_star_plus_sqrt_xy\n";
            for (const auto& point : boundary) {
                out << format_number(point.xy) << ',';
                if (point.z_star) {
                    out << format_number(*point.z_star) << ',' << format_number(*point.z_star + std::sqrt(point.xy));
                } else {
                    out << ',';
                }
                out << '\n';
            }
        } else {
            json scan = json::array();
            for (const auto& row : rows) {
                scan.push_back(json{{"xy", row.xy},
                                    {"z", row.z},
                                    {"physical", row.physical},
                                    {"first_complex_pair", pair_json(row.first_complex_pair)}});
            }
            json edge = json::array();
            for (const auto& point : boundary) {
                edge.push_back(json{{"xy", point.xy},
                                    {"z_star", point.z_star ? json(*point.z_star) : json(nullptr)},
                                    {"z_star_plus_sqrt_xy",
                                     point.z_star ? json(*point.z_star + std::sqrt(point.xy)) : json(nullptr)}});
            }
            write_json(out, json{{"rows", scan}, {"boundary", edge}, {"tool_version", tool_version}});
        }
        return exit_code::ok;
    });
}

int cmd_perturb(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const CouplingParams params(config.x, config.y, config.z);
        if (config.n_first < 0 || config.n_last < config.n_first) {
            throw InvalidParameter("perturb needs 0 <= n-first <= n-last");
        }
        std::vector<PerturbationRow> rows;
        int failures = 0;
        // Rows are computed level by level so one merged level does not hide the rest.
        for (Spin sigma : both_spins) {
            for (int n = config.n_first; n <= config.n_last; ++n) {
                try {
                    const auto one = compare_perturbation_exact(z_eff(params, sigma), n, n, sigma);
                    rows.insert(rows.end(), one.begin(), one.end());
                } catch (const RootNotFound& e) {
                    ++failures;
                    err << "warning: n=" << n << " sigma=" << sign(sigma) << ": " << e.what() << '\n';
                }
            }
        }
        if (config.format == OutputFormat::csv) {
            out << "n,sigma,q_exact,q_order1,q_order2,err1,err2\n";
            for (const auto& row : rows) {
                out << row.n << ',' << sign(row.sigma) << ',' << format_number(row.q_exact) << ','
                    << format_number(row.q_order1) << ',' << format_number(row.q_order2) << ','
                    << format_number(row.err1) << ',' << format_number(row.err2) << '\n';
            }
        } else {
            json table = json::array();
            for (const auto& row : rows) {
                table.push_back(json{{"n", row.n},
                                     {"sigma", sign(row.sigma)},
                                     {"q_exact", row.q_exact},
                                     {"q_order1", row.q_order1},
                                     {"q_order2", row.q_order2},
                                     {"err1", row.err1},
                                     {"err2", row.err2}});
            }
            write_json(out, json{{"params", params_json(params)}, {"rows", table}, {"tool_version", tool_version}});
        }
        return failures == 0 ? exit_code::ok : exit_code::non_physical;
    });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const CouplingParams params(config.x, config.y, config.z);
        const VerificationReport report = run_identity_suite(params, {config.grid_n, config.n_max, config.norm});
        if (config.format == OutputFormat::csv) {
            out << "name,residual,tolerance,norm,passed\n";
            for (const auto& e : report.entries) {
                out << e.name << ',' << format_number(e.residual) << ',' << format_number(e.tolerance) << ','
                    << to_string(e.norm) << ',' << (e.passed ? 1 : 0) << '\n';
            }
        } else {
            json entries = json::array();
            for (const auto& e : report.entries) {
                entries.push_back(json{{"name", e.name},
                                       {"residual", e.residual},
                                       {"tolerance", e.tolerance},
                                       {"norm", to_string(e.norm)},
                                       {"passed", e.passed}});
            }
            write_json(out, json{{"params", params_json(params)},
                                 {"grid_n", config.grid_n},
                                 {"n_max", config.n_max},
                                 {"entries", entries},
                                 {"all_passed", report.all_passed()},
                                 {"tool_version", tool_version}});
        }
        for (const auto& e : report.entries) {
            if (!e.passed) {
                err << "failed: " << e.name << " residual " << format_number(e.residual) << " > "
                    << format_number(e.tolerance) << '\n';
            }
        }
        return report.all_passed() ? exit_code::ok : exit_code::verification_failed;
    });
}

int cmd_wavefunction(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const CouplingParams params(config.x, config.y, config.z);
        if (config.samples < 2) throw InvalidParameter("wavefunction needs at least 2 samples");
        const BoundState state = make_state(solve_level(config.level, config.sigma, params, config.tol), params);
        json rows = json::array();
        if (config.format == OutputFormat::csv) out << "x,re_phi,im_phi,re_chi,im_chi\n";
        for (int j = 0; j < config.samples; ++j) {
            // Exact endpoints so the boundary rows are evaluated at x = +-1.
            const double x = j + 1 == config.samples ? 1.0 : -1.0 + 2.0 * j / (config.samples - 1);
            const auto v = eval_wavefunction(state, params, x);
            if (config.format == OutputFormat::csv) {
                out << format_number(x) << ',' << format_number(v.phi.real()) << ','
                    << format_number(v.phi.imag()) << ',' << format_number(v.chi.real()) << ','
                    << format_number(v.chi.imag()) << '\n';
            } else {
                rows.push_back(json{{"x", x},
                                    {"re_phi", v.phi.real()},
                                    {"im_phi", v.phi.imag()},
                                    {"re_chi", v.chi.real()},
                                    {"im_chi", v.chi.imag()}});
            }
        }
        if (config.format == OutputFormat::json) {
            write_json(out, json{{"params", params_json(params)},
                                 {"n", config.level},
                                 {"sigma", sign(config.sigma)},
                                 {"samples", rows},
                                 {"tool_version", tool_version}});
        }
        return exit_code::ok;
    });
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    switch (config.subcommand) {
        case Subcommand::spectrum: return cmd_spectrum(config, out, err);
        case Subcommand::phase: return cmd_phase(config, out, err);
        case Subcommand::perturb: return cmd_perturb(config, out, err);
        case Subcommand::verify: return cmd_verify(config, out, err);
        case Subcommand::wavefunction: return cmd_wavefunction(config, out, err);
    }
    err << "error: unknown subcommand\n";
    return exit_code::usage;
}

}  // namespace ptwell::cli
