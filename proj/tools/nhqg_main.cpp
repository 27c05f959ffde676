// nhqg: phase-diagram scans, exceptional-point traces, adiabatic benchmarks
// and per-mode spectrum dumps for the non-Hermitian two-level / dissipative
// Ising toolkit.
//
// Subcommands: scan, ep-trace, adiabatic-bench, mode-table.
// Every flag can come from a config file (--config FILE, flat key=value
// lines) or from the environment with the NHQG_ prefix; precedence is
// command line > config file > environment > defaults.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure
// (including any singular-flagged cell under --strict).

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "nhqg/ising.hpp"
#include "nhqg/scan.hpp"

namespace {

// "name=min:max:steps"
nhqg::AxisSpec parse_axis(const std::string& text) {
    const auto eq = text.find('=');
    const auto c1 = text.find(':', eq == std::string::npos ? 0 : eq);
    const auto c2 = text.find(':', c1 == std::string::npos ? 0 : c1 + 1);
    if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos) {
        throw nhqg::ConfigError("bad --grid spec (want name=min:max:steps): " + text);
    }
    nhqg::AxisSpec ax;
    ax.name = text.substr(0, eq);
    try {
        ax.min = std::stod(text.substr(eq + 1, c1 - eq - 1));
        ax.max = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        ax.steps = std::stoi(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw nhqg::ConfigError("bad number in --grid spec: " + text);
    }
    return ax;
}

// "name=value"
std::pair<std::string, double> parse_fix(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw nhqg::ConfigError("bad --fix spec (want name=value): " + text);
    }
    try {
        return {text.substr(0, eq), std::stod(text.substr(eq + 1))};
    } catch (const std::exception&) {
        throw nhqg::ConfigError("bad number in --fix spec: " + text);
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        nhqg::write_text_file(out_path, text);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"complex geometric phase scans for open two-level and Ising systems"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file");

    std::string format = "csv";
    std::string out_path;
    app.add_option("--format", format, "csv|json")
        ->envname("NHQG_FORMAT")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "output path (default: stdout)")
        ->envname("NHQG_OUT");

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "grid scan of gamma over parameters");
    std::string mode = "ising";
    std::vector<std::string> grid_specs;
    std::vector<std::string> fix_specs;
    double fd_step = 1e-4;
    int threads = 1;
    bool strict = false;
    scan_cmd->add_option("--mode", mode, "two-level|ising|derivative")
        ->envname("NHQG_MODE")
        ->check(CLI::IsMember({"two-level", "ising", "derivative"}));
    scan_cmd->add_option("--grid", grid_specs, "axis spec name=min:max:steps (1 or 2)")
        ->required();
    scan_cmd->add_option("--fix", fix_specs, "fixed parameter name=value");
    scan_cmd->add_option("--fd-step", fd_step, "central-difference step")
        ->envname("NHQG_FD_STEP");
    scan_cmd->add_option("--threads", threads, "worker count")->envname("NHQG_THREADS");
    scan_cmd->add_flag("--strict", strict, "exit 3 if any cell is singular");

    // ep-trace
    auto* ep_cmd = app.add_subcommand("ep-trace", "exceptional-point locus over delta");
    double dmin = 0.0, dmax = 1.0;
    int dsteps = 11;
    ep_cmd->add_option("--delta-min", dmin, "range start");
    ep_cmd->add_option("--delta-max", dmax, "range end");
    ep_cmd->add_option("--steps", dsteps, "row count");

    // adiabatic-bench
    auto* ab_cmd = app.add_subcommand("adiabatic-bench",
                                      "slow-loop phase extraction error vs T");
    nhqg::AdiabaticBenchConfig ab;
    std::vector<double> tlist;
    ab_cmd->add_option("--times", tlist, "loop traversal times T");
    ab_cmd->add_option("--tol", ab.tol, "integrator tolerance per unit time");
    ab_cmd->add_option("--eps", ab.eps, "imaginary z-offset of the field loop");
    ab_cmd->add_option("--theta", ab.theta, "polar angle of the loop");
    ab_cmd->add_option("--dump-trajectory", ab.dump_path,
                       "CSV dump of the largest-T trajectory");

    // mode-table
    auto* mt_cmd = app.add_subcommand("mode-table", "per-k Ising mode spectrum");
    nhqg::IsingParams ip;
    mt_cmd->add_option("--field", ip.h_field, "transverse field h")->envname("NHQG_H");
    mt_cmd->add_option("--delta", ip.delta, "decay rate")->envname("NHQG_DELTA");
    mt_cmd->add_option("--coupling", ip.j_coupling, "coupling J");
    mt_cmd->add_option("--phi", ip.phi, "field rotation angle");
    mt_cmd->add_option("--sites", ip.n_sites, "site count (even)")->envname("NHQG_N");
    mt_cmd->add_option("--spacing", ip.lattice_a, "lattice spacing a");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            return app.exit(e);
        }
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    try {
        const nhqg::OutputFormat fmt =
            (format == "json") ? nhqg::OutputFormat::Json : nhqg::OutputFormat::Csv;
        if (scan_cmd->parsed()) {
            nhqg::ScanConfig cfg;
            cfg.mode = nhqg::mode_from_name(mode);
            for (const auto& s : grid_specs) cfg.axes.push_back(parse_axis(s));
            for (const auto& s : fix_specs) cfg.fixed.insert(parse_fix(s));
            cfg.format = fmt;
            cfg.fd_step = fd_step;
            cfg.threads = threads;
            cfg.strict = strict;
            const nhqg::PhaseScanGrid grid = nhqg::run_scan(cfg);
            emit(fmt == nhqg::OutputFormat::Csv ? nhqg::to_csv(grid)
                                                : nhqg::to_json(grid),
                 out_path);
            if (strict) {
                for (const auto& c : grid.cells) {
                    if (c.flag == nhqg::CellFlag::Singular) {
                        std::cerr << "strict: singular cell present\n";
                        return 3;
                    }
                }
            }
        } else if (ep_cmd->parsed()) {
            const auto rows = nhqg::ep_trace(dmin, dmax, dsteps);
            emit(fmt == nhqg::OutputFormat::Csv ? nhqg::to_csv(rows)
                                                : nhqg::to_json(rows),
                 out_path);
        } else if (ab_cmd->parsed()) {
            if (!tlist.empty()) ab.times = tlist;
            const auto rows = nhqg::adiabatic_bench(ab);
            emit(fmt == nhqg::OutputFormat::Csv ? nhqg::to_csv(rows)
                                                : nhqg::to_json(rows),
                 out_path);
        } else if (mt_cmd->parsed()) {
            const auto spectrum = nhqg::mode_spectrum(ip);
            emit(fmt == nhqg::OutputFormat::Csv ? nhqg::to_csv(spectrum)
                                                : nhqg::to_json(spectrum),
                 out_path);
        }
    } catch (const nhqg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const nhqg::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
