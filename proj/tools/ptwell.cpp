#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ptwell/cli.hpp"
#include "ptwell/errors.hpp"

namespace {

using ptwell::cli::OutputFormat;
using ptwell::cli::RunConfig;
using ptwell::cli::Subcommand;

void add_params(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--x", config.x, "channel coupling X (> 0)")->capture_default_str();
    cmd->add_option("--y", config.y, "channel coupling Y (> 0)")->capture_default_str();
    cmd->add_option("--z", config.z, "internal strength Z")->capture_default_str();
}

void add_format(CLI::App* cmd, std::string& format, std::string& output) {
    cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("-o,--output", output, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig config;
    std::string format;
    std::string output;
    std::string sigma = "+1";
    std::string xy_range = "0:4:0.5";
    std::string z_range = "0:5:0.1";
    std::string norm = "max";

    CLI::App app{"Coupled-channel PT-symmetric square well: spectra, phase diagram and operator checks"};
    app.require_subcommand(1, 1);

    auto* spectrum = app.add_subcommand("spectrum", "solve both spin sectors up to n-max");
    add_params(spectrum, config);
    spectrum->add_option("--n-max", config.n_max, "highest level index")->capture_default_str();
    spectrum->add_option("--tol", config.tol, "root tolerance")->capture_default_str();
    add_format(spectrum, format, output);

    auto* phase = app.add_subcommand("phase", "scan the (xy, Z) plane for complexified pairs");
    phase->add_option("--xy", xy_range, "xy range start:stop:step")->capture_default_str();
    phase->add_option("--z", z_range, "Z range start:stop:step")->capture_default_str();
    phase->add_option("--n-max", config.n_max, "highest level index checked")->capture_default_str();
    add_format(phase, format, output);

    auto* perturb = app.add_subcommand("perturb", "compare exact Q_n with the weak-coupling series");
    add_params(perturb, config);
    perturb->add_option("--n-first", config.n_first)->capture_default_str();
    perturb->add_option("--n-last", config.n_last)->capture_default_str();
    add_format(perturb, format, output);

    auto* verify = app.add_subcommand("verify", "run the operator identity suite on a grid");
    add_params(verify, config);
    verify->add_option("--grid-n", config.grid_n, "interior grid points (even)")->capture_default_str();
    verify->add_option("--n-max", config.n_max, "highest level per sector in the basis")->capture_default_str();
    verify->add_option("--norm", norm, "max or power")->check(CLI::IsMember({"max", "power"}))->capture_default_str();
    add_format(verify, format, output);

    auto* wavefunction = app.add_subcommand("wavefunction", "sample phi and chi of one level on [-1, 1]");
    add_params(wavefunction, config);
    wavefunction->add_option("--n", config.level, "level index")->capture_default_str();
    wavefunction->add_option("--sigma", sigma, "spin sector, +1 or -1")->capture_default_str();
    wavefunction->add_option("--samples", config.samples, "number of points including both ends")
        ->capture_default_str();
    wavefunction->add_option("--tol", config.tol, "root tolerance")->capture_default_str();
    add_format(wavefunction, format, output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ptwell::cli::exit_code::ok : ptwell::cli::exit_code::usage;
    }

    const std::map<CLI::App*, Subcommand> kinds{{spectrum, Subcommand::spectrum},
                                                {phase, Subcommand::phase},
                                                {perturb, Subcommand::perturb},
                                                {verify, Subcommand::verify},
                                                {wavefunction, Subcommand::wavefunction}};
    config.subcommand = kinds.at(app.get_subcommands().front());

    try {
        config.sigma = ptwell::cli::parse_sigma(sigma);
        config.xy_range = ptwell::cli::Range::parse(xy_range);
        config.z_range = ptwell::cli::Range::parse(z_range);
        config.threads = ptwell::cli::parse_threads(std::getenv("PTWELL_THREADS"));
    } catch (const ptwell::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ptwell::cli::exit_code::usage;
    }
    config.norm = norm == "power" ? ptwell::NormKind::power_iteration : ptwell::NormKind::max_abs_entry;
    if (format.empty()) {
        const bool tabular = config.subcommand == Subcommand::phase || config.subcommand == Subcommand::perturb ||
                             config.subcommand == Subcommand::wavefunction;
        config.format = tabular ? OutputFormat::csv : OutputFormat::json;
    } else {
        config.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
    }

    if (output.empty()) return ptwell::cli::run(config, std::cout, std::cerr);
    config.output = output;
    std::ofstream file(output);
    if (!file) {
        std::cerr << "error: cannot open output file '" << output << "'\n";
        return ptwell::cli::exit_code::usage;
    }
    return ptwell::cli::run(config, file, std::cerr);
}
