#pragma once

#include "hypcat/asymptotics.hpp"
#include "hypcat/mode_spectrum.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hypcat {

inline constexpr const char* kToolVersion = "0.1.0";

// One output table: typed cells, ordered columns, optional trailing notes.
// CSV renders notes as "# ..." comment lines after the data; JSON carries
// them in meta.notes.
using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> notes;
};

// 17 significant digits through std::to_chars: locale-independent and
// round-trips every double bit-exactly.
std::string format_double(double x);

std::string to_csv(const Table& table);
std::string to_json(const Table& table,
                    const std::vector<std::pair<std::string, std::string>>& meta = {});

// Flat "key = value" sweep configuration ('#' starts a comment). Grid is
// either an explicit a_values list or a geometric a_min/a_max/a_count
// range. Parse and validation failures throw ConfigError naming the line
// and column.
struct SweepConfig {
    std::string mode;  // profile|radius|spectrum|index|asymptotics-large|asymptotics-degenerate|constants
    std::vector<double> a_values;
    int k_max = 3;
    int s_samples = 101;
    double mu_max = 1.0;
    Tolerance tol{};
    std::string output_path;
    std::string output_format = "csv";  // csv|json
    std::string source_text;            // raw config, echoed into the sidecar
};

SweepConfig parse_sweep_config(const std::string& text);

// Everything a finished sweep knows about itself. The data file stays
// deterministic; started_at lives only in the sidecar.
struct RunRecord {
    SweepConfig config_echo;
    std::string tool_version;
    std::string started_at;  // UTC, RFC 3339
    Table rows;
    std::vector<std::string> warnings;  // each prefixed "row N: "
};

// Meridian slice at theta = 0, n samples from s_min to s_max inclusive.
Table profile_table(double a, double s_min, double s_max, int n, const Tolerance& tol = {});

// Single-row record of the free-boundary solve plus the Robin coefficient.
Table radius_report(double a, const Tolerance& tol = {});

// Eigenvalue rows below mu_max with a "# negatives=N kernel=M" footer.
// If the search fails, retries at smaller mu_max and reports what survived
// with complete=false and a warning.
struct SpectrumReport {
    Table table;
    bool complete = true;
    std::vector<std::string> warnings;
};
SpectrumReport spectrum_report(double a, int k, double mu_max, const Tolerance& tol = {});

// Mode index rows over (a_values) x (0..k_max) with per-a total-index notes
// applying the angular multiplicity convention (k=0 counts once, k>=1
// twice).
Table index_report(const std::vector<double>& a_values, int k_max, const Tolerance& tol = {});

// Convergence rows; with_d1_fit appends the exploratory 1/a-fit note (large
// side only).
Table large_a_report(const std::vector<double>& a_grid, bool with_d1_fit,
                     const Tolerance& tol = {});
Table degenerate_report(const std::vector<double>& eps_grid, const Tolerance& tol = {});

// One row: the five constants, the shift, and their cross-check gaps.
Table constants_report(const Tolerance& tol = {});

// Writes content to path via a temp file in the same directory plus rename,
// so readers never observe a partial file.
void write_atomic(const std::string& path, const std::string& content);

// Executes the configured mode. Per-row failures become "row N: ..."
// warnings; the data file and a "<output_path>.meta.json" sidecar are
// written atomically.
RunRecord run_sweep(const SweepConfig& config);

std::string sidecar_json(const RunRecord& record);

} // namespace hypcat
