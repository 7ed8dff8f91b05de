#include "hypcat/report.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace hypcat;

struct GlobalOpts {
    double tol_abs = 1e-12;
    double tol_rel = 1e-12;
    std::string format = "csv";
    std::string out_path;
    bool quiet = false;

    Tolerance tolerance() const {
        Tolerance t;
        t.abs_tol = tol_abs;
        t.rel_tol = tol_rel;
        return t;
    }
};

void emit(const GlobalOpts& g, const Table& table, const std::string& mode) {
    const std::string data = g.format == "json"
                                 ? to_json(table, {{"mode", mode}, {"tool_version", kToolVersion}})
                                 : to_csv(table);
    if (g.out_path.empty())
        std::fputs(data.c_str(), stdout);
    else
        write_atomic(g.out_path, data);
}

void warn(const GlobalOpts& g, const std::string& msg) {
    if (!g.quiet) std::fprintf(stderr, "warning: %s\n", msg.c_str());
}

std::vector<double> resolve_grid(const std::vector<double>& values, double lo, double hi,
                                 int count) {
    if (!values.empty()) return values;
    if (count < 2) throw DomainError("geometric grid needs count >= 2");
    if (!(lo < hi)) throw DomainError("geometric grid needs min < max");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
        g[i] = lo * std::pow(hi / lo, double(i) / double(count - 1));
    return g;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spherical catenoid laboratory: free-boundary geometry, Robin spectra, "
                 "and asymptotic laws in hyperbolic 3-space"};
    app.require_subcommand(1);
    app.fallthrough();  // accept the shared options before or after the subcommand
    app.set_version_flag("--version", kToolVersion);

    GlobalOpts g;
    app.add_option("--tol-abs", g.tol_abs, "absolute tolerance for solvers")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol-rel", g.tol_rel, "relative tolerance for solvers")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out_path, "write output to this path (atomic); default stdout");
    app.add_flag("--quiet", g.quiet, "suppress warnings on standard error");

    double a = 1.0, s_min = 0.0, s_max = 0.0, mu_max = 1.0;
    int n_samples = 101, k = 0, k_max = 3, count = 5;
    bool explicit_span = false, fit_d1_flag = false;
    std::string side = "large", config_path;
    std::vector<double> grid_values;
    double grid_min = 0.0, grid_max = 0.0;

    CLI::App* profile = app.add_subcommand("profile", "meridian slice of the surface data");
    profile->add_option("--a", a, "family parameter (a > 1/2)")->required();
    auto* smin_opt = profile->add_option("--s-min", s_min, "left end of the s range");
    profile->add_option("--s-max", s_max, "right end of the s range")->needs(smin_opt);
    smin_opt->needs(profile->get_option("--s-max"));
    profile->add_option("--n", n_samples, "number of samples")->check(CLI::Range(2, 1000000));
    profile->callback([&] { explicit_span = profile->count("--s-min") > 0; });

    CLI::App* radius_cmd = app.add_subcommand("radius", "free-boundary solve at one a");
    radius_cmd->add_option("--a", a, "family parameter (a > 1/2)")->required();

    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "Robin eigenvalues of one angular mode");
    spectrum_cmd->add_option("--a", a, "family parameter (a > 1/2)")->required();
    spectrum_cmd->add_option("--k", k, "angular mode (k >= 0)")->required();
    spectrum_cmd->add_option("--mu-max", mu_max, "upper search limit");

    CLI::App* index_cmd = app.add_subcommand("index", "negative/kernel counts over (a, k)");
    index_cmd->add_option("--a", grid_values, "comma-separated a values")
        ->required()
        ->delimiter(',');
    index_cmd->add_option("--k-max", k_max, "largest angular mode");

    CLI::App* asym = app.add_subcommand("asymptotics", "convergence tables for either limit");
    asym->add_option("--side", side, "which limit to study")
        ->check(CLI::IsMember({"large", "degenerate"}));
    asym->add_option("--grid", grid_values,
                     "comma-separated grid (a values for large, eps values for degenerate)")
        ->delimiter(',');
    asym->add_option("--min", grid_min, "geometric grid start");
    asym->add_option("--max", grid_max, "geometric grid end");
    asym->add_option("--count", count, "geometric grid size");
    asym->add_flag("--fit-d1", fit_d1_flag, "append the exploratory 1/a remainder fit");

    CLI::App* constants_cmd =
        app.add_subcommand("constants", "closed-form constants and cross-check gaps");
    (void)constants_cmd;

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a sweep described by a config file");
    sweep_cmd->add_option("config", config_path, "flat key = value config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }

    const Tolerance tol = g.tolerance();
    try {
        if (profile->parsed()) {
            if (!explicit_span) {
                const double s0 = solve_s0(make_params(a), tol);
                s_min = -s0;
                s_max = s0;
            }
            emit(g, profile_table(a, s_min, s_max, n_samples, tol), "profile");
        } else if (radius_cmd->parsed()) {
            emit(g, radius_report(a, tol), "radius");
        } else if (spectrum_cmd->parsed()) {
            SpectrumReport rep = spectrum_report(a, k, mu_max, tol);
            emit(g, rep.table, "spectrum");
            for (const std::string& w : rep.warnings) warn(g, w);
            if (!rep.complete) return 3;
        } else if (index_cmd->parsed()) {
            emit(g, index_report(grid_values, k_max, tol), "index");
        } else if (asym->parsed()) {
            const std::vector<double> grid = resolve_grid(grid_values, grid_min, grid_max, count);
            if (side == "large")
                emit(g, large_a_report(grid, fit_d1_flag, tol), "asymptotics-large");
            else
                emit(g, degenerate_report(grid, tol), "asymptotics-degenerate");
        } else if (constants_cmd->parsed()) {
            emit(g, constants_report(tol), "constants");
        } else if (sweep_cmd->parsed()) {
            std::ifstream in(config_path);
            if (!in) {
                std::fprintf(stderr, "error: cannot read config file '%s'\n",
                             config_path.c_str());
                return 4;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            SweepConfig cfg = parse_sweep_config(buf.str());
            cfg.tol.abs_tol = std::min(cfg.tol.abs_tol, tol.abs_tol);
            cfg.tol.rel_tol = std::min(cfg.tol.rel_tol, tol.rel_tol);
            const RunRecord rec = run_sweep(cfg);
            for (const std::string& w : rec.warnings) warn(g, w);
            if (!g.quiet)
                std::fprintf(stderr, "wrote %zu rows to %s (+ sidecar)\n", rec.rows.rows.size(),
                             cfg.output_path.c_str());
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
