#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nhqg/ising.hpp"
#include "nhqg/two_level.hpp"

namespace nhqg {

enum class ScanMode { TwoLevelMap, IsingMap, DerivativeMap, EpTrace, AdiabaticBench };
enum class OutputFormat { Csv, Json };
enum class CellFlag { Ok, NearEp, Singular };

struct AxisSpec {
    std::string name;
    double min{0.0};
    double max{0.0};
    int steps{0};

    double value(int i) const { return min + (max - min) * i / (steps - 1); }
    bool operator==(const AxisSpec&) const = default;
};

// Grid scan request. Modes:
//   TwoLevelMap    gamma of the closed-form monopole phase over (r, z),
//                  field (r, 0, z - i*eps); allowed parameters r, z, eps
//   IsingMap       overall phase gamma_g over (h, delta)
//   DerivativeMap  IsingMap plus d gamma_g / d<axis0> by central differences
// One or two axes; every parameter a mode needs must come from an axis or
// from `fixed`. Cells are stored row-major in the first axis.
struct ScanConfig {
    ScanMode mode{ScanMode::IsingMap};
    std::vector<AxisSpec> axes;
    std::map<std::string, double> fixed;
    std::string output_path;  // empty: no file side effect
    OutputFormat format{OutputFormat::Csv};
    double fd_step{1e-4};
    double singular_band{1e-3};
    int threads{1};
    bool strict{false};

    void validate() const;  // throws ConfigError
};

struct ScanCell {
    Complex gamma{};
    Complex dgamma{};  // derivative along the first axis (DerivativeMap/TwoLevelMap)
    CellFlag flag{CellFlag::Ok};
    bool operator==(const ScanCell&) const = default;
};

struct PhaseScanGrid {
    int schema_version{1};
    ScanMode mode{ScanMode::IsingMap};
    std::vector<AxisSpec> axes;
    std::map<std::string, double> fixed;
    std::vector<ScanCell> cells;

    bool operator==(const PhaseScanGrid&) const = default;
};

// Deterministic grid computation: cells are produced into a pre-sized
// buffer by index, so the worker count never changes the output bytes.
// Singular cells are flagged and carry zeros, never NaN. Writes the grid to
// config.output_path when set.
PhaseScanGrid run_scan(const ScanConfig& config);

// (delta, h_c, k_c, order, jump) rows over an inclusive delta range in [0, 1].
std::vector<QptDiagnosis> ep_trace(double delta_min, double delta_max, int steps);

struct AdiabaticBenchConfig {
    std::vector<double> times{250.0, 500.0, 1000.0};
    double tol{1e-10};
    double eps{0.0};            // imaginary z-offset of the field loop
    double theta{1.5707963267948966};  // polar angle of the loop
    int loop_segments{64};
    std::string dump_path;      // optional trajectory CSV for the largest T
};

struct AdiabaticBenchRow {
    double total_time{0.0};
    Complex gamma{};
    double error{0.0};  // |gamma - analytic|
};

std::vector<AdiabaticBenchRow> adiabatic_bench(const AdiabaticBenchConfig& config);

// Serialization. CSV and JSON both carry schema_version; JSON re-parses to
// the exact in-memory grid (shortest round-trip number formatting).
std::string to_csv(const PhaseScanGrid& grid);
std::string to_json(const PhaseScanGrid& grid);
PhaseScanGrid grid_from_json(const std::string& text);

std::string to_csv(const std::vector<QptDiagnosis>& rows);
std::string to_json(const std::vector<QptDiagnosis>& rows);
std::string to_csv(const std::vector<AdiabaticBenchRow>& rows);
std::string to_json(const std::vector<AdiabaticBenchRow>& rows);
std::string to_csv(const ModeSpectrum& spectrum);
std::string to_json(const ModeSpectrum& spectrum);

void write_text_file(const std::string& path, const std::string& contents);

const char* mode_name(ScanMode mode);
ScanMode mode_from_name(const std::string& name);  // throws ConfigError

}  // namespace nhqg
