#include "hypcat/report.hpp"

#include "hypcat/catenoid.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace hypcat {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string cell_text(const Cell& cell) {
    struct Visitor {
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

ordered_json cell_json(const Cell& cell) {
    struct Visitor {
        ordered_json operator()(double v) const { return v; }
        ordered_json operator()(long long v) const { return v; }
        ordered_json operator()(bool v) const { return v; }
        ordered_json operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

[[noreturn]] void config_fail(int line, int col, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                      ": " + msg);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s, int line, int col) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        config_fail(line, col, "cannot parse number '" + s + "'");
    return v;
}

long long parse_integer(const std::string& s, int line, int col) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        config_fail(line, col, "cannot parse integer '" + s + "'");
    return v;
}

std::vector<double> parse_list(const std::string& s, int line, int col) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t comma = std::min(s.find(',', pos), s.size());
        const std::string item = trim(s.substr(pos, comma - pos));
        if (item.empty()) config_fail(line, col, "empty list entry");
        out.push_back(parse_number(item, line, col));
        pos = comma + 1;
    }
    return out;
}

std::string utc_now_rfc3339() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string parity_name(Parity p) { return p == Parity::even ? "even" : "odd"; }

} // namespace

std::string format_double(double x) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        if (j) out += ',';
        out += table.columns[j];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += cell_text(row[j]);
        }
        out += '\n';
    }
    for (const std::string& note : table.notes) out += "# " + note + "\n";
    return out;
}

std::string to_json(const Table& table,
                    const std::vector<std::pair<std::string, std::string>>& meta) {
    ordered_json root;
    ordered_json m = ordered_json::object();
    for (const auto& [k, v] : meta) m[k] = v;
    if (!table.notes.empty()) m["notes"] = table.notes;
    root["meta"] = m;
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t j = 0; j < row.size() && j < table.columns.size(); ++j)
            obj[table.columns[j]] = cell_json(row[j]);
        rows.push_back(std::move(obj));
    }
    root["rows"] = std::move(rows);
    return root.dump(2) + "\n";
}

SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig cfg;
    cfg.source_text = text;

    static const std::set<std::string> known{
        "mode",  "a_values",  "a_min",      "a_max",        "a_count",      "k_max",
        "s_samples", "mu_max", "tol_abs",   "tol_rel",      "output_path",  "output_format"};
    static const std::set<std::string> modes{
        "profile", "radius",           "spectrum",              "index",
        "constants", "asymptotics-large", "asymptotics-degenerate"};

    std::set<std::string> seen;
    std::map<std::string, int> key_line;
    double a_min = 0.0, a_max = 0.0;
    long long a_count = 0;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        const std::string body = (hash == std::string::npos) ? line : line.substr(0, hash);
        const std::size_t first = body.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;

        const std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            config_fail(lineno, int(first) + 1, "expected 'key = value'");
        const std::string key = trim(body.substr(0, eq));
        if (key.empty()) config_fail(lineno, int(first) + 1, "missing key before '='");
        const std::size_t vstart = body.find_first_not_of(" \t", eq + 1);
        const int vcol = int((vstart == std::string::npos ? eq + 1 : vstart)) + 1;
        const std::string value = trim(body.substr(eq + 1));
        if (value.empty()) config_fail(lineno, vcol, "missing value for '" + key + "'");
        if (!known.count(key))
            config_fail(lineno, int(first) + 1, "unknown key '" + key + "'");
        if (!seen.insert(key).second)
            config_fail(lineno, int(first) + 1, "duplicate key '" + key + "'");
        key_line[key] = lineno;

        if (key == "mode") cfg.mode = value;
        else if (key == "a_values") cfg.a_values = parse_list(value, lineno, vcol);
        else if (key == "a_min") a_min = parse_number(value, lineno, vcol);
        else if (key == "a_max") a_max = parse_number(value, lineno, vcol);
        else if (key == "a_count") a_count = parse_integer(value, lineno, vcol);
        else if (key == "k_max") cfg.k_max = int(parse_integer(value, lineno, vcol));
        else if (key == "s_samples") cfg.s_samples = int(parse_integer(value, lineno, vcol));
        else if (key == "mu_max") cfg.mu_max = parse_number(value, lineno, vcol);
        else if (key == "tol_abs") cfg.tol.abs_tol = parse_number(value, lineno, vcol);
        else if (key == "tol_rel") cfg.tol.rel_tol = parse_number(value, lineno, vcol);
        else if (key == "output_path") cfg.output_path = value;
        else if (key == "output_format") cfg.output_format = value;
    }

    const auto where = [&](const char* key) {
        const auto it = key_line.find(key);
        return it == key_line.end() ? 1 : it->second;
    };

    if (cfg.mode.empty()) config_fail(1, 1, "missing required key 'mode'");
    if (!modes.count(cfg.mode))
        config_fail(where("mode"), 1, "unknown mode '" + cfg.mode + "'");
    if (cfg.output_path.empty()) config_fail(1, 1, "missing required key 'output_path'");
    if (cfg.output_format != "csv" && cfg.output_format != "json")
        config_fail(where("output_format"), 1,
                    "output_format must be csv or json, got '" + cfg.output_format + "'");
    if (!(cfg.tol.abs_tol > 0.0) || !(cfg.tol.rel_tol > 0.0))
        config_fail(where(seen.count("tol_abs") ? "tol_abs" : "tol_rel"), 1,
                    "tolerances must be positive");
    if (cfg.s_samples < 2) config_fail(where("s_samples"), 1, "s_samples must be >= 2");
    if (cfg.k_max < 0) config_fail(where("k_max"), 1, "k_max must be >= 0");

    const bool has_range = seen.count("a_min") || seen.count("a_max") || seen.count("a_count");
    if (!cfg.a_values.empty() && has_range)
        config_fail(where("a_min"), 1, "give either a_values or a_min/a_max/a_count, not both");
    if (has_range) {
        if (!(seen.count("a_min") && seen.count("a_max") && seen.count("a_count")))
            config_fail(where(seen.count("a_min") ? "a_min" : "a_max"), 1,
                        "geometric range needs all of a_min, a_max, a_count");
        if (a_count < 2) config_fail(where("a_count"), 1, "a_count must be >= 2");
        if (!(a_min < a_max)) config_fail(where("a_min"), 1, "need a_min < a_max");
        if (!(a_min > 0.0)) config_fail(where("a_min"), 1, "need a_min > 0");
        for (long long i = 0; i < a_count; ++i)
            cfg.a_values.push_back(a_min *
                                   std::pow(a_max / a_min, double(i) / double(a_count - 1)));
    }
    if (cfg.a_values.empty() && cfg.mode != "constants")
        config_fail(1, 1, "mode '" + cfg.mode + "' needs a_values or a_min/a_max/a_count");
    for (double a : cfg.a_values)
        if (!(a > 0.5 + 1e-9))
            config_fail(where(seen.count("a_values") ? "a_values" : "a_min"), 1,
                        "a = " + format_double(a) + " violates a > 1/2 + 1e-9");
    return cfg;
}

Table profile_table(double a, double s_min, double s_max, int n, const Tolerance& tol) {
    if (n < 2) throw DomainError("profile needs at least 2 samples, got " + std::to_string(n));
    if (!(s_min < s_max)) throw DomainError("profile needs s_min < s_max");
    const CatenoidParams p = make_params(a);
    Table t;
    t.columns = {"s", "A", "B", "phi", "II_sq", "fstar", "x0", "x1", "x2"};
    t.rows.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double s = s_min + (s_max - s_min) * double(i) / double(n - 1);
        const MeridianState st = meridian_state(p, s, tol);
        const AmbientPoint x = embed(p, s, 0.0, tol);
        t.rows.push_back(
            {s, st.A, st.B, st.phi, st.II_sq, fstar(p, s, tol), x.x0, x.x1, x.x2});
    }
    return t;
}

Table radius_report(double a, const Tolerance& tol) {
    const FreeBoundarySolution sol = radius(make_params(a), tol);
    Table t;
    t.columns = {"a", "s0", "r", "phi_s0", "residual_fb", "residual_nu0", "robin_coef"};
    t.rows.push_back({sol.a, sol.s0, sol.r, sol.phi_s0, sol.residual_fb, sol.residual_nu0,
                      1.0 / std::tanh(sol.r)});
    return t;
}

SpectrumReport spectrum_report(double a, int k, double mu_max, const Tolerance& tol) {
    SpectrumReport rep;
    const SLProblem pr = build_problem(make_params(a), k, tol);
    std::vector<SLEigenpair> eigs;
    double used = mu_max;
    for (int attempt = 0;; ++attempt) {
        try {
            eigs = eigenvalues_below(pr, used, tol);
            break;
        } catch (const IncompleteSpectrum& err) {
            rep.complete = false;
            if (attempt == 4) {
                rep.warnings.push_back(std::string("eigenvalue search failed down to mu_max=") +
                                       format_double(used) + ": " + err.what());
                break;
            }
            used *= 0.25;  // salvage whatever lies below the failure
        }
    }
    if (!rep.complete && !eigs.empty())
        rep.warnings.push_back("spectrum truncated to mu < " + format_double(used) +
                               " after a search failure below " + format_double(mu_max));

    Table t;
    t.columns = {"n", "mu", "parity", "n_zeros", "robin_residual"};
    long long negatives = 0, kernel = 0;
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        const SLEigenpair& e = eigs[i];
        t.rows.push_back({(long long)i, e.mu, parity_name(e.parity), (long long)e.n_zeros,
                          e.robin_residual});
        if (e.mu < -1e-6) ++negatives;
        if (std::fabs(e.mu) < 1e-6) ++kernel;
    }
    t.notes.push_back("negatives=" + std::to_string(negatives) +
                      " kernel=" + std::to_string(kernel));
    rep.table = std::move(t);
    return rep;
}

Table index_report(const std::vector<double>& a_values, int k_max, const Tolerance& tol) {
    const auto rows = mode_index_table(a_values, k_max, tol);
    Table t;
    t.columns = {"a", "k", "n_negative_radial", "kernel_dim_radial", "mu0", "mu1", "complete"};
    for (const ModeIndexRow& r : rows)
        t.rows.push_back({r.a, (long long)r.k, (long long)r.n_negative_radial,
                          (long long)r.kernel_dim_radial, r.mu0, r.mu1, r.complete});
    t.notes.push_back(
        "EXPLORATORY: total index applies angular multiplicity (k=0 once, k>=1 twice)");
    for (double a : a_values) {
        long long total = 0;
        bool all_complete = true;
        for (const ModeIndexRow& r : rows)
            if (r.a == a) {
                all_complete = all_complete && r.complete;
                total += (r.k == 0 ? 1 : 2) * r.n_negative_radial;
            }
        t.notes.push_back("total_index(a=" + format_double(a) + ")=" +
                          (all_complete ? std::to_string(total) : std::string("incomplete")));
    }
    return t;
}

namespace {

void push_convergence_rows(Table& t, const std::vector<ConvergenceRow>& rows, bool with_eps) {
    for (const ConvergenceRow& r : rows) {
        std::vector<Cell> cells{r.a};
        if (with_eps) cells.push_back(r.a - 0.5);
        cells.insert(cells.end(), {Cell{r.quantity}, Cell{r.value}, Cell{r.target},
                                   Cell{r.gap}, Cell{r.gap_scaled}});
        t.rows.push_back(std::move(cells));
    }
}

} // namespace

Table large_a_report(const std::vector<double>& a_grid, bool with_d1_fit,
                     const Tolerance& tol) {
    Table t;
    t.columns = {"a", "quantity", "value", "target", "gap", "gap_scaled"};
    push_convergence_rows(t, large_a_table(a_grid, tol), false);
    if (with_d1_fit) {
        const D1Fit fit = estimate_d1(a_grid, tol);
        t.notes.push_back("EXPLORATORY d1_hat=" + format_double(fit.d1_hat) +
                          " fit_residual=" + format_double(fit.fit_residual));
    }
    return t;
}

Table degenerate_report(const std::vector<double>& eps_grid, const Tolerance& tol) {
    Table t;
    t.columns = {"a", "eps", "quantity", "value", "target", "gap", "gap_scaled"};
    push_convergence_rows(t, degenerate_table(eps_grid, tol), true);
    return t;
}

Table constants_report(const Tolerance& tol) {
    const AsymptoticConstants c = constants(tol);
    const IInfCheck chk = verify_I_inf(tol);
    const double alt_d_inf =
        0.5 * std::log(2.0) + 2.0 * gamma_ln(0.25) - 1.5 * std::log(3.1415926535897932);
    Table t;
    t.columns = {"I_inf",     "d_inf",     "s0_shift",
                 "sigma_star", "rho_star", "c_star",
                 "gap_I_quadrature", "gap_d_inf_forms", "gap_sigma_fixed_point",
                 "gap_c_star_forms"};
    t.rows.push_back({c.I_inf, c.d_inf, c.s0_shift, c.sigma_star, c.rho_star, c.c_star,
                      chk.gap, c.d_inf - alt_d_inf,
                      c.sigma_star - 1.0 / std::tanh(c.sigma_star),
                      c.c_star - (c.rho_star + 1.0 / c.rho_star)});
    return t;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), std::streamsize(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

namespace {

// One independent block of a sweep (typically all rows for a single a, or one
// (a, k) pair). Warnings carry the row offset inside the block at which they
// were raised so the merged table can address them by absolute row index.
struct SweepUnit {
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> notes;
    std::vector<std::pair<std::size_t, std::string>> warnings;
};

// Computes units 0..n-1 with a fixed pool of workers over an atomic cursor.
// `fill(i, unit)` must be pure in everything but `unit` and must not throw.
template <typename Fn>
std::vector<SweepUnit> run_units(std::size_t n, Fn&& fill) {
    std::vector<SweepUnit> units(n);
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers = std::min<std::size_t>(n, hw == 0 ? 1 : hw);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fill(i, units[i]);
        return units;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = cursor.fetch_add(1); i < n; i = cursor.fetch_add(1))
                fill(i, units[i]);
        });
    for (std::thread& th : pool) th.join();
    return units;
}

} // namespace

RunRecord run_sweep(const SweepConfig& config) {
    RunRecord rec;
    rec.config_echo = config;
    rec.tool_version = kToolVersion;
    rec.started_at = utc_now_rfc3339();

    Table& t = rec.rows;
    // Emit in grid order regardless of scheduling; drop notes repeated verbatim
    // across units (e.g. a shared convention note).
    const auto merge = [&](std::vector<SweepUnit>&& units) {
        for (SweepUnit& u : units) {
            const std::size_t base = t.rows.size();
            for (const auto& [offset, what] : u.warnings)
                rec.warnings.push_back("row " + std::to_string(base + offset) + ": " + what);
            for (std::string& note : u.notes)
                if (std::find(t.notes.begin(), t.notes.end(), note) == t.notes.end())
                    t.notes.push_back(std::move(note));
            for (auto& row : u.rows) t.rows.push_back(std::move(row));
        }
    };
    const Tolerance tol = config.tol;

    if (config.mode == "constants") {
        t = constants_report(tol);
    } else if (config.mode == "index") {
        t.columns = {"a", "k", "n_negative_radial", "kernel_dim_radial", "mu0", "mu1",
                     "complete"};
        const std::vector<double>& as = config.a_values;
        const int k_max = config.k_max;
        merge(run_units(as.size(), [&as, k_max, &tol](std::size_t i, SweepUnit& u) {
            try {
                Table block = index_report({as[i]}, k_max, tol);
                u.rows = std::move(block.rows);
                u.notes = std::move(block.notes);
            } catch (const std::exception& err) {
                u.warnings.emplace_back(0, "a=" + format_double(as[i]) + ": " + err.what());
            }
        }));
    } else if (config.mode == "profile") {
        t.columns = {"a", "s", "A", "B", "phi", "II_sq", "fstar", "x0", "x1", "x2"};
        const std::vector<double>& as = config.a_values;
        const int ns = config.s_samples;
        merge(run_units(as.size(), [&as, ns, &tol](std::size_t i, SweepUnit& u) {
            try {
                const double s0 = solve_s0(make_params(as[i]), tol);
                Table block = profile_table(as[i], -s0, s0, ns, tol);
                for (auto& row : block.rows) {
                    row.insert(row.begin(), Cell{as[i]});
                    u.rows.push_back(std::move(row));
                }
            } catch (const std::exception& err) {
                u.rows.clear();
                u.warnings.emplace_back(0, "a=" + format_double(as[i]) + ": " + err.what());
            }
        }));
    } else if (config.mode == "radius") {
        t.columns = {"a", "s0", "r", "phi_s0", "residual_fb", "residual_nu0", "robin_coef"};
        const std::vector<double>& as = config.a_values;
        merge(run_units(as.size(), [&as, &tol](std::size_t i, SweepUnit& u) {
            try {
                Table one = radius_report(as[i], tol);
                u.rows.push_back(std::move(one.rows.front()));
            } catch (const std::exception& err) {
                u.warnings.emplace_back(0, "a=" + format_double(as[i]) + ": " + err.what());
            }
        }));
    } else if (config.mode == "spectrum") {
        t.columns = {"a", "k", "n", "mu", "parity", "n_zeros", "robin_residual"};
        const std::vector<double>& as = config.a_values;
        const int k_count = config.k_max + 1;
        const double mu_max = config.mu_max;
        merge(run_units(as.size() * std::size_t(k_count),
                        [&as, k_count, mu_max, &tol](std::size_t i, SweepUnit& u) {
            const double a = as[i / std::size_t(k_count)];
            const int k = int(i % std::size_t(k_count));
            const std::string tag = "a=" + format_double(a) + " k=" + std::to_string(k);
            try {
                SpectrumReport rep = spectrum_report(a, k, mu_max, tol);
                for (auto& row : rep.table.rows) {
                    row.insert(row.begin(), Cell{(long long)k});
                    row.insert(row.begin(), Cell{a});
                    u.rows.push_back(std::move(row));
                }
                for (const std::string& note : rep.table.notes)
                    u.notes.push_back(tag + " " + note);
                for (const std::string& w : rep.warnings)
                    u.warnings.emplace_back(u.rows.size(), tag + ": " + w);
            } catch (const std::exception& err) {
                u.rows.clear();
                u.warnings.emplace_back(0, tag + ": " + err.what());
            }
        }));
    } else if (config.mode == "asymptotics-large" || config.mode == "asymptotics-degenerate") {
        const bool degenerate = config.mode == "asymptotics-degenerate";
        t.columns = degenerate
                        ? std::vector<std::string>{"a", "eps", "quantity", "value",
                                                   "target", "gap", "gap_scaled"}
                        : std::vector<std::string>{"a", "quantity", "value", "target",
                                                   "gap", "gap_scaled"};
        const std::vector<double>& as = config.a_values;
        merge(run_units(as.size(), [&as, degenerate, &tol](std::size_t i, SweepUnit& u) {
            try {
                Table block;
                if (degenerate)
                    push_convergence_rows(block, degenerate_table({as[i] - 0.5}, tol), true);
                else
                    push_convergence_rows(block, large_a_table({as[i]}, tol), false);
                u.rows = std::move(block.rows);
            } catch (const std::exception& err) {
                u.warnings.emplace_back(0, "a=" + format_double(as[i]) + ": " + err.what());
            }
        }));
    } else {
        throw ConfigError("unknown mode '" + config.mode + "'");  // parse should have caught
    }

    const std::string data =
        config.output_format == "json"
            ? to_json(t, {{"mode", config.mode}, {"tool_version", rec.tool_version}})
            : to_csv(t);
    write_atomic(config.output_path, data);
    write_atomic(config.output_path + ".meta.json", sidecar_json(rec));
    return rec;
}

std::string sidecar_json(const RunRecord& record) {
    ordered_json j;
    j["tool_version"] = record.tool_version;
    j["started_at"] = record.started_at;
    j["mode"] = record.config_echo.mode;
    j["output_path"] = record.config_echo.output_path;
    j["output_format"] = record.config_echo.output_format;
    j["row_count"] = record.rows.rows.size();
    j["warnings"] = record.warnings;
    j["config_echo"] = record.config_echo.source_text;
    return j.dump(2) + "\n";
}

} // namespace hypcat
