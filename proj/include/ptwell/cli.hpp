#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptwell/core_model.hpp"
#include "ptwell/operator_algebra.hpp"

namespace ptwell::cli {

inline constexpr const char* tool_version = "0.1.0";

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int non_physical = 2;
inline constexpr int verification_failed = 3;
}  // namespace exit_code

// start:stop:step with stop excluded; a bare number is a one-point range.
struct Range {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    // Throws InvalidParameter on malformed text, a non-positive step or stop < start.
    static Range parse(std::string_view text);
    std::vector<double> values() const;
};

enum class Subcommand { spectrum, phase, perturb, verify, wavefunction };
enum class OutputFormat { json, csv };

struct RunConfig {
    Subcommand subcommand = Subcommand::spectrum;
    double x = 1.0;
    double y = 1.0;
    double z = 0.0;
    int n_max = 8;
    double tol = 1e-12;
    int grid_n = 200;
    std::optional<std::string> output;
    OutputFormat format = OutputFormat::json;
    // phase
    Range xy_range{0.0, 4.0, 0.5};
    Range z_range{0.0, 5.0, 0.1};
    // perturb
    int n_first = 0;
    int n_last = 10;
    // wavefunction
    int level = 0;
    Spin sigma = Spin::up;
    int samples = 101;
    // verify
    NormKind norm = NormKind::max_abs_entry;
    unsigned threads = 0;
};

// "+1", "1", "up" or "-1", "down".
Spin parse_sigma(std::string_view text);

// Value of PTWELL_THREADS (nullptr or empty = 0 = auto). Throws InvalidParameter
// for anything but a non-negative integer.
unsigned parse_threads(const char* value);

// printf "%.17g" rendering used for every CSV number.
std::string format_number(double v);

// Each command writes data to `out`, diagnostics to `err`, and returns an exit code.
int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_phase(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_perturb(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_wavefunction(const RunConfig& config, std::ostream& out, std::ostream& err);

// Dispatches on config.subcommand and maps library errors to exit codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ptwell::cli
