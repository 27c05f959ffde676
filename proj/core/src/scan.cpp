#include "nhqg/scan.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "nhqg/adiabatic.hpp"
#include "nhqg/geom_phase.hpp"

namespace nhqg {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

// shortest round-trip decimal form, locale-free; keeps scan output
// byte-deterministic across worker counts and exact through JSON
std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

const char* flag_name(CellFlag f) {
    switch (f) {
        case CellFlag::Ok: return "ok";
        case CellFlag::NearEp: return "near_ep";
        case CellFlag::Singular: return "singular";
    }
    return "ok";
}

CellFlag flag_from_name(const std::string& s) {
    if (s == "ok") return CellFlag::Ok;
    if (s == "near_ep") return CellFlag::NearEp;
    if (s == "singular") return CellFlag::Singular;
    throw ConfigError("unknown cell flag: " + s);
}

const char* order_name(QptOrder o) {
    return o == QptOrder::First ? "first" : "second";
}

// parameter environment of one cell: axis values plus fixed values
struct CellParams {
    const ScanConfig* cfg;
    double a0{0.0};
    double a1{0.0};

    double get(const std::string& name, double fallback, bool* found = nullptr) const {
        if (found) *found = true;
        if (cfg->axes[0].name == name) return a0;
        if (cfg->axes.size() > 1 && cfg->axes[1].name == name) return a1;
        auto it = cfg->fixed.find(name);
        if (it != cfg->fixed.end()) return it->second;
        if (found) *found = false;
        return fallback;
    }
};

ScanCell two_level_cell(const ScanConfig& cfg, const CellParams& p) {
    const double eps = p.get("eps", 0.0);
    const auto gamma_at = [&](double r, double z) {
        const ComplexVec3 v{r, 0.0, Complex(z, -eps)};
        const Complex rad = complex_radius(v);
        const double sc = std::max(v.scale(), 1e-300);
        if (std::abs(rad) <= 1e-10 * sc || v.scale() == 0.0) {
            return std::pair<Complex, CellFlag>{0.0, CellFlag::Singular};
        }
        const CellFlag f = (std::abs(rad) <= cfg.singular_band * sc)
                               ? CellFlag::NearEp
                               : CellFlag::Ok;
        return std::pair<Complex, CellFlag>{kPi * (1.0 - v.z / rad), f};
    };

    const double r = p.get("r", 0.0);
    const double z = p.get("z", 0.0);
    ScanCell cell;
    auto [g0, f0] = gamma_at(r, z);
    cell.gamma = g0;
    cell.flag = f0;
    if (f0 != CellFlag::Singular) {
        const bool d_in_r = (cfg.axes[0].name == "r");
        const double s = cfg.fd_step;
        const auto [gp, fp] = d_in_r ? gamma_at(r + s, z) : gamma_at(r, z + s);
        const auto [gm, fm] = d_in_r ? gamma_at(r - s, z) : gamma_at(r, z - s);
        if (fp != CellFlag::Singular && fm != CellFlag::Singular) {
            cell.dgamma = (gp - gm) / (2.0 * s);
        }
    }
    return cell;
}

ScanCell ising_cell(const ScanConfig& cfg, const CellParams& p, bool with_derivative) {
    const double h = p.get("h", 0.0);
    const double delta = p.get("delta", 0.0);
    const Complex g(h, -delta);

    ScanCell cell;
    const double circle = std::abs(std::norm(g) - 1.0);
    if (circle <= 1e-12) {
        cell.flag = CellFlag::Singular;
        return cell;
    }
    cell.flag = (circle < cfg.singular_band) ? CellFlag::NearEp : CellFlag::Ok;
    try {
        cell.gamma = overall_phase_closed(g);
        if (with_derivative) {
            const double s = cfg.fd_step;
            cell.dgamma = (overall_phase_closed(Complex(h + s, -delta)) -
                           overall_phase_closed(Complex(h - s, -delta))) /
                          (2.0 * s);
        }
    } catch (const Error&) {
        cell.gamma = 0.0;
        cell.dgamma = 0.0;
        cell.flag = CellFlag::Singular;
    }
    return cell;
}

void check_param_names(const ScanConfig& cfg) {
    const bool two_level = cfg.mode == ScanMode::TwoLevelMap;
    const std::vector<std::string> allowed =
        two_level ? std::vector<std::string>{"r", "z", "eps"}
                  : std::vector<std::string>{"h", "delta"};
    const auto known = [&](const std::string& n) {
        for (const auto& a : allowed) {
            if (a == n) return true;
        }
        return false;
    };
    for (const auto& ax : cfg.axes) {
        if (!known(ax.name)) throw ConfigError("unknown axis name: " + ax.name);
    }
    for (const auto& [k, v] : cfg.fixed) {
        (void)v;
        if (!known(k)) throw ConfigError("unknown fixed parameter: " + k);
    }
}

}  // namespace

void ScanConfig::validate() const {
    if (mode == ScanMode::EpTrace || mode == ScanMode::AdiabaticBench) {
        throw ConfigError("run_scan handles grid modes only; use ep_trace / adiabatic_bench");
    }
    if (axes.empty() || axes.size() > 2) {
        throw ConfigError("scan needs one or two axes");
    }
    for (const auto& ax : axes) {
        if (ax.steps < 2) throw ConfigError("axis " + ax.name + ": steps must be >= 2");
        if (!(ax.min < ax.max)) throw ConfigError("axis " + ax.name + ": min must be < max");
    }
    if (fd_step <= 0.0) throw ConfigError("fd-step must be positive");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    check_param_names(*this);
}

PhaseScanGrid run_scan(const ScanConfig& config) {
    config.validate();

    PhaseScanGrid grid;
    grid.mode = config.mode;
    grid.axes = config.axes;
    grid.fixed = config.fixed;
    const int n0 = config.axes[0].steps;
    const int n1 = (config.axes.size() > 1) ? config.axes[1].steps : 1;
    grid.cells.resize(static_cast<std::size_t>(n0) * n1);

    const auto compute = [&](std::size_t idx) {
        CellParams p{&config, 0.0, 0.0};
        const int i0 = static_cast<int>(idx) / n1;
        const int i1 = static_cast<int>(idx) % n1;
        p.a0 = config.axes[0].value(i0);
        if (config.axes.size() > 1) p.a1 = config.axes[1].value(i1);
        switch (config.mode) {
            case ScanMode::TwoLevelMap:
                grid.cells[idx] = two_level_cell(config, p);
                break;
            case ScanMode::IsingMap:
                grid.cells[idx] = ising_cell(config, p, false);
                break;
            case ScanMode::DerivativeMap:
                grid.cells[idx] = ising_cell(config, p, true);
                break;
            default:
                break;
        }
    };

    const std::size_t total = grid.cells.size();
    const int workers = std::min<int>(config.threads, static_cast<int>(total));
    if (workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) compute(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < total; i += workers) compute(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    if (!config.output_path.empty()) {
        write_text_file(config.output_path, config.format == OutputFormat::Csv
                                                ? to_csv(grid)
                                                : to_json(grid));
    }
    return grid;
}

std::vector<QptDiagnosis> ep_trace(double delta_min, double delta_max, int steps) {
    if (delta_min < 0.0 || delta_max > 1.0 || !(delta_min <= delta_max)) {
        throw DomainError("ep_trace: delta range must lie within [0, 1]");
    }
    if (steps < 1) throw DomainError("ep_trace: steps must be >= 1");
    std::vector<QptDiagnosis> rows;
    rows.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        const double d = (steps == 1)
                             ? delta_min
                             : delta_min + (delta_max - delta_min) * i / (steps - 1);
        rows.push_back(exceptional_point(d));
    }
    return rows;
}

std::vector<AdiabaticBenchRow> adiabatic_bench(const AdiabaticBenchConfig& config) {
    if (config.times.empty()) throw ConfigError("adiabatic_bench: empty T list");
    const double r = std::sin(config.theta);
    const Complex zc(std::cos(config.theta), -config.eps);
    const ComplexVec3 field{r, 0.0, zc};
    const Complex analytic = monopole_phase(field).gamma;
    const LoopPath loop = field_circle_loop(r, zc, config.loop_segments);

    std::vector<AdiabaticBenchRow> rows;
    rows.reserve(config.times.size());
    for (std::size_t i = 0; i < config.times.size(); ++i) {
        const double T = config.times[i];
        const Schedule sched{loop, T, Ramp::Linear};
        const Trajectory traj = evolve_pair(loop_hamiltonian(loop, T), sched, config.tol);
        const PhaseResult res = extract_geometric_phase(traj, loop_hamiltonian(loop, T));
        rows.push_back({T, res.gamma, std::abs(res.gamma - analytic)});
        if (!config.dump_path.empty() && i + 1 == config.times.size()) {
            std::ostringstream os;
            write_trajectory_csv(traj, os);
            write_text_file(config.dump_path, os.str());
        }
    }
    return rows;
}

std::string to_csv(const PhaseScanGrid& grid) {
    std::ostringstream os;
    os << "# schema_version " << grid.schema_version << '\n';
    os << "# mode " << mode_name(grid.mode) << '\n';
    for (const auto& [k, v] : grid.fixed) os << "# fixed " << k << ' ' << fmt(v) << '\n';
    os << "# dgamma is the central-difference derivative along " << grid.axes[0].name
       << '\n';
    for (const auto& ax : grid.axes) os << ax.name << ',';
    os << "re_gamma,im_gamma,re_dgamma,im_dgamma,flag\n";

    const int n1 = (grid.axes.size() > 1) ? grid.axes[1].steps : 1;
    for (std::size_t idx = 0; idx < grid.cells.size(); ++idx) {
        const int i0 = static_cast<int>(idx) / n1;
        const int i1 = static_cast<int>(idx) % n1;
        os << fmt(grid.axes[0].value(i0)) << ',';
        if (grid.axes.size() > 1) os << fmt(grid.axes[1].value(i1)) << ',';
        const ScanCell& c = grid.cells[idx];
        os << fmt(c.gamma.real()) << ',' << fmt(c.gamma.imag()) << ','
           << fmt(c.dgamma.real()) << ',' << fmt(c.dgamma.imag()) << ','
           << flag_name(c.flag) << '\n';
    }
    return os.str();
}

std::string to_json(const PhaseScanGrid& grid) {
    nlohmann::json j;
    j["schema_version"] = grid.schema_version;
    j["mode"] = mode_name(grid.mode);
    j["axes"] = nlohmann::json::array();
    for (const auto& ax : grid.axes) {
        j["axes"].push_back({{"name", ax.name},
                             {"min", ax.min},
                             {"max", ax.max},
                             {"steps", ax.steps}});
    }
    j["fixed"] = grid.fixed;
    j["cells"] = nlohmann::json::array();
    for (const auto& c : grid.cells) {
        j["cells"].push_back({{"re_gamma", c.gamma.real()},
                              {"im_gamma", c.gamma.imag()},
                              {"re_dgamma", c.dgamma.real()},
                              {"im_dgamma", c.dgamma.imag()},
                              {"flag", flag_name(c.flag)}});
    }
    return j.dump(2) + "\n";
}

PhaseScanGrid grid_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(std::string("grid_from_json: ") + e.what());
    }
    PhaseScanGrid grid;
    grid.schema_version = j.at("schema_version").get<int>();
    grid.mode = mode_from_name(j.at("mode").get<std::string>());
    for (const auto& ja : j.at("axes")) {
        grid.axes.push_back({ja.at("name").get<std::string>(),
                             ja.at("min").get<double>(), ja.at("max").get<double>(),
                             ja.at("steps").get<int>()});
    }
    grid.fixed = j.at("fixed").get<std::map<std::string, double>>();
    for (const auto& jc : j.at("cells")) {
        ScanCell c;
        c.gamma = Complex(jc.at("re_gamma").get<double>(), jc.at("im_gamma").get<double>());
        c.dgamma =
            Complex(jc.at("re_dgamma").get<double>(), jc.at("im_dgamma").get<double>());
        c.flag = flag_from_name(jc.at("flag").get<std::string>());
        grid.cells.push_back(c);
    }
    return grid;
}

std::string to_csv(const std::vector<QptDiagnosis>& rows) {
    std::ostringstream os;
    os << "# schema_version 1\n";
    os << "delta,h_c,k_c,order,re_jump,im_jump\n";
    for (const auto& r : rows) {
        const double delta = std::sqrt(std::max(0.0, 1.0 - r.h_c * r.h_c));
        os << fmt(delta) << ',' << fmt(r.h_c) << ',' << fmt(r.k_c) << ','
           << order_name(r.order) << ',' << fmt(r.jump.real()) << ','
           << fmt(r.jump.imag()) << '\n';
    }
    return os.str();
}

std::string to_json(const std::vector<QptDiagnosis>& rows) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        const double delta = std::sqrt(std::max(0.0, 1.0 - r.h_c * r.h_c));
        j["rows"].push_back({{"delta", delta},
                             {"h_c", r.h_c},
                             {"k_c", r.k_c},
                             {"order", order_name(r.order)},
                             {"re_jump", r.jump.real()},
                             {"im_jump", r.jump.imag()}});
    }
    return j.dump(2) + "\n";
}

std::string to_csv(const std::vector<AdiabaticBenchRow>& rows) {
    std::ostringstream os;
    os << "# schema_version 1\n";
    os << "total_time,error,re_gamma,im_gamma\n";
    for (const auto& r : rows) {
        os << fmt(r.total_time) << ',' << fmt(r.error) << ',' << fmt(r.gamma.real())
           << ',' << fmt(r.gamma.imag()) << '\n';
    }
    return os.str();
}

std::string to_json(const std::vector<AdiabaticBenchRow>& rows) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"total_time", r.total_time},
                             {"error", r.error},
                             {"re_gamma", r.gamma.real()},
                             {"im_gamma", r.gamma.imag()}});
    }
    return j.dump(2) + "\n";
}

std::string to_csv(const ModeSpectrum& spectrum) {
    std::ostringstream os;
    os << "# schema_version 1\n";
    os << "# epsilon0 " << fmt(spectrum.epsilon0.real()) << ' '
       << fmt(spectrum.epsilon0.imag()) << '\n';
    os << "j,k,re_eps,im_eps,re_cos_theta,im_cos_theta\n";
    for (std::size_t i = 0; i < spectrum.momenta.size(); ++i) {
        os << (i + 1) << ',' << fmt(spectrum.momenta[i]) << ','
           << fmt(spectrum.energies[i].real()) << ',' << fmt(spectrum.energies[i].imag())
           << ',' << fmt(spectrum.cos_theta[i].real()) << ','
           << fmt(spectrum.cos_theta[i].imag()) << '\n';
    }
    return os.str();
}

std::string to_json(const ModeSpectrum& spectrum) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["epsilon0"] = {{"re", spectrum.epsilon0.real()}, {"im", spectrum.epsilon0.imag()}};
    j["modes"] = nlohmann::json::array();
    for (std::size_t i = 0; i < spectrum.momenta.size(); ++i) {
        j["modes"].push_back({{"j", i + 1},
                              {"k", spectrum.momenta[i]},
                              {"re_eps", spectrum.energies[i].real()},
                              {"im_eps", spectrum.energies[i].imag()},
                              {"re_cos_theta", spectrum.cos_theta[i].real()},
                              {"im_cos_theta", spectrum.cos_theta[i].imag()}});
    }
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << contents;
    if (!os) throw IoError("write failed: " + path);
}

const char* mode_name(ScanMode mode) {
    switch (mode) {
        case ScanMode::TwoLevelMap: return "two-level";
        case ScanMode::IsingMap: return "ising";
        case ScanMode::DerivativeMap: return "derivative";
        case ScanMode::EpTrace: return "ep-trace";
        case ScanMode::AdiabaticBench: return "adiabatic-bench";
    }
    return "ising";
}

ScanMode mode_from_name(const std::string& name) {
    if (name == "two-level") return ScanMode::TwoLevelMap;
    if (name == "ising") return ScanMode::IsingMap;
    if (name == "derivative") return ScanMode::DerivativeMap;
    if (name == "ep-trace") return ScanMode::EpTrace;
    if (name == "adiabatic-bench") return ScanMode::AdiabaticBench;
    throw ConfigError("unknown scan mode: " + name);
}

}  // namespace nhqg
