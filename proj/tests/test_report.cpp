#include "doctest.h"

#include "hypcat/report.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using namespace hypcat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "hypcat_report_tests";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("numeric formatting round-trips doubles and stays locale-free") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e17, 1e-300, 3.141592653589793, 0.0, -0.0, 1.0}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
        CHECK(s.find(',') == std::string::npos);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("csv and json rendering of a small table") {
    Table t;
    t.columns = {"a", "n", "tag", "ok"};
    t.rows.push_back({0.5, (long long)3, std::string("even"), true});
    t.notes.push_back("negatives=1 kernel=0");

    CHECK(to_csv(t) == "a,n,tag,ok\n0.5,3,even,true\n# negatives=1 kernel=0\n");

    const auto j = nlohmann::json::parse(to_json(t, {{"mode", "demo"}}));
    CHECK(j["meta"]["mode"] == "demo");
    CHECK(j["meta"]["notes"][0] == "negatives=1 kernel=0");
    CHECK(j["rows"].size() == 1);
    CHECK(j["rows"][0]["a"] == 0.5);
    CHECK(j["rows"][0]["n"] == 3);
    CHECK(j["rows"][0]["tag"] == "even");
    CHECK(j["rows"][0]["ok"] == true);
}

TEST_CASE("profile table: exact header, midpoint row, determinism") {
    const Table t = profile_table(1.0, -1.0, 1.0, 3);
    const std::string csv = to_csv(t);
    CHECK(csv.substr(0, csv.find('\n')) == "s,A,B,phi,II_sq,fstar,x0,x1,x2");
    REQUIRE(t.rows.size() == 3);
    CHECK(std::get<double>(t.rows[1][0]) == 0.0);  // s
    CHECK(std::get<double>(t.rows[1][3]) == 0.0);  // phi
    CHECK(std::get<double>(t.rows[1][5]) == 0.0);  // fstar
    CHECK(to_csv(profile_table(1.0, -1.0, 1.0, 3)) == csv);

    CHECK_THROWS_AS(profile_table(1.0, -1.0, 1.0, 1), DomainError);
    CHECK_THROWS_AS(profile_table(1.0, 1.0, -1.0, 5), DomainError);
    CHECK_THROWS_AS(profile_table(0.4, -1.0, 1.0, 5), DomainError);
}

TEST_CASE("radius report is one self-consistent record") {
    const Table t = radius_report(1.0);
    REQUIRE(t.rows.size() == 1);
    REQUIRE(t.columns.size() == 7);
    const auto& row = t.rows[0];
    CHECK(std::get<double>(row[0]) == 1.0);
    const double r = std::get<double>(row[2]);
    CHECK(r == doctest::Approx(1.4884149293747055).epsilon(1e-12));
    CHECK(std::fabs(std::get<double>(row[4])) <= 1e-11);  // residual_fb
    CHECK(std::fabs(std::get<double>(row[5])) <= 1e-9);   // residual_nu0
    CHECK(std::get<double>(row[6]) == doctest::Approx(1.0 / std::tanh(r)).epsilon(1e-15));
}

TEST_CASE("spectrum report rows and negative/kernel footer") {
    const SpectrumReport rep = spectrum_report(1.0, 1, 1.0);
    CHECK(rep.complete);
    CHECK(rep.warnings.empty());
    REQUIRE(rep.table.rows.size() == 2);
    CHECK(std::get<std::string>(rep.table.rows[0][2]) == "even");
    CHECK(std::get<std::string>(rep.table.rows[1][2]) == "odd");
    REQUIRE(rep.table.notes.size() == 1);
    CHECK(rep.table.notes[0] == "negatives=1 kernel=1");
    const std::string csv = to_csv(rep.table);
    CHECK(csv.find("# negatives=1 kernel=1\n") != std::string::npos);

    const SpectrumReport k2 = spectrum_report(1.0, 2, 1.0);
    CHECK(k2.table.notes[0] == "negatives=0 kernel=0");
}

TEST_CASE("index report carries exploratory totals per parameter") {
    const Table t = index_report({1.0}, 3);
    REQUIRE(t.rows.size() == 4);
    const long long expected_neg[4] = {2, 1, 0, 0};
    for (int kk = 0; kk < 4; ++kk) {
        CHECK(std::get<long long>(t.rows[kk][1]) == kk);
        CHECK(std::get<long long>(t.rows[kk][2]) == expected_neg[kk]);
        CHECK(std::get<bool>(t.rows[kk][6]));
    }
    REQUIRE(t.notes.size() == 2);
    CHECK(t.notes[0].find("EXPLORATORY") == 0);
    CHECK(t.notes[1] == "total_index(a=1)=4");
}

TEST_CASE("constants report exposes the cross-check gaps") {
    const Table t = constants_report();
    REQUIRE(t.rows.size() == 1);
    const auto& row = t.rows[0];
    CHECK(std::get<double>(row[0]) == doctest::Approx(0.5990701173677961).epsilon(1e-14));
    CHECK(std::get<double>(row[1]) == doctest::Approx(1.2055238109020273).epsilon(1e-14));
    CHECK(std::fabs(std::get<double>(row[6])) <= 1e-10);  // quadrature vs closed form
    CHECK(std::fabs(std::get<double>(row[7])) <= 1e-11);  // two gamma forms
    CHECK(std::fabs(std::get<double>(row[8])) <= 1e-12);  // fixed point residual
    CHECK(std::fabs(std::get<double>(row[9])) <= 1e-12);  // two c* forms
}

TEST_CASE("sweep config parser: happy paths") {
    const SweepConfig list_cfg = parse_sweep_config(
        "# demo\nmode = radius\na_values = 1, 2.5, 10\noutput_path = out.csv\n");
    CHECK(list_cfg.mode == "radius");
    REQUIRE(list_cfg.a_values.size() == 3);
    CHECK(list_cfg.a_values[1] == 2.5);
    CHECK(list_cfg.output_format == "csv");

    const SweepConfig range_cfg = parse_sweep_config(
        "mode = radius\na_min = 1\na_max = 100\na_count = 3\noutput_path = o.json\n"
        "output_format = json\ntol_abs = 1e-10\ntol_rel = 1e-10\nk_max = 2\n"
        "s_samples = 11\nmu_max = 2.5\n");
    REQUIRE(range_cfg.a_values.size() == 3);
    CHECK(range_cfg.a_values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(range_cfg.a_values[1] == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(range_cfg.a_values[2] == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(range_cfg.tol.abs_tol == 1e-10);
    CHECK(range_cfg.mu_max == 2.5);
    CHECK(range_cfg.output_format == "json");

    const SweepConfig no_grid = parse_sweep_config("mode = constants\noutput_path = c.csv\n");
    CHECK(no_grid.a_values.empty());
}

TEST_CASE("sweep config parser: every malformed input names its line") {
    using doctest::Contains;
    CHECK_THROWS_WITH_AS(parse_sweep_config("output_path = x\n"),
                         Contains("missing required key 'mode'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_sweep_config("mode = radius\na_values = 1\n"),
                         Contains("missing required key 'output_path'"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_sweep_config("mode = warp\na_values = 1\noutput_path = x\n"),
        Contains("unknown mode"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_sweep_config("mode = radius\nbogus_key = 1\noutput_path = x\n"),
        Contains("line 2"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_sweep_config("mode = radius\nmode = radius\noutput_path = x\n"),
        Contains("duplicate key"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_sweep_config("mode = radius\njust words\noutput_path = x\n"),
                         Contains("line 2"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_sweep_config("mode = radius\na_values = 1, zap\noutput_path = x\n"),
        Contains("cannot parse number"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_sweep_config(
            "mode = radius\na_min = 1\na_max = 9\na_count = 1\noutput_path = x\n"),
        Contains("a_count must be >= 2"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_sweep_config(
            "mode = radius\na_min = 9\na_max = 1\na_count = 3\noutput_path = x\n"),
        Contains("a_min < a_max"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_sweep_config("mode = radius\na_values = 0.4\noutput_path = x\n"),
        Contains("a > 1/2 + 1e-9"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_sweep_config(
            "mode = radius\na_values = 1\na_min = 1\na_max = 2\na_count = 2\noutput_path = x\n"),
        Contains("not both"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_sweep_config("mode = radius\na_values = 1\noutput_path = x\noutput_format = xml\n"),
        Contains("csv or json"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_sweep_config("mode = radius\na_values =\noutput_path = x\n"),
                         Contains("missing value"), ConfigError);
}

TEST_CASE("sweep runs end to end: atomic files, sidecar, determinism") {
    const fs::path dir = scratch_dir();
    const fs::path out = dir / "nested" / "radius.csv";
    fs::remove_all(dir / "nested");

    SweepConfig cfg = parse_sweep_config("mode = radius\na_values = 1, 0.6\noutput_path = " +
                                         out.string() + "\n");
    const RunRecord rec = run_sweep(cfg);
    CHECK(rec.warnings.empty());
    CHECK(rec.tool_version == kToolVersion);
    CHECK(rec.rows.rows.size() == 2);
    REQUIRE(fs::exists(out));
    REQUIRE(fs::exists(out.string() + ".meta.json"));
    CHECK(!fs::exists(out.string() + ".tmp"));

    const std::string first = slurp(out);
    CHECK(first.substr(0, first.find('\n')) ==
          "a,s0,r,phi_s0,residual_fb,residual_nu0,robin_coef");
    run_sweep(cfg);
    CHECK(slurp(out) == first);  // data files carry no timestamps

    const auto side = nlohmann::json::parse(slurp(out.string() + ".meta.json"));
    CHECK(side["mode"] == "radius");
    CHECK(side["row_count"] == 2);
    CHECK(side["config_echo"] == cfg.source_text);
    CHECK(side["warnings"].empty());
    CHECK(side["started_at"].get<std::string>().size() == 20);  // RFC 3339 UTC
}

TEST_CASE("sweep collects per-row warnings instead of aborting") {
    const fs::path out = scratch_dir() / "large.csv";
    // 50 is outside the large-a table's domain; the other rows must survive
    SweepConfig cfg = parse_sweep_config(
        "mode = asymptotics-large\na_values = 50, 100, 1000\noutput_path = " + out.string() +
        "\n");
    const RunRecord rec = run_sweep(cfg);
    CHECK(rec.rows.rows.size() == 4);  // two quantities per surviving a
    REQUIRE(rec.warnings.size() == 1);
    CHECK(rec.warnings[0].find("row 0") == 0);
    CHECK(rec.warnings[0].find("a=50") != std::string::npos);
}

TEST_CASE("constants sweep emits a one-row json document") {
    const fs::path out = scratch_dir() / "constants.json";
    SweepConfig cfg = parse_sweep_config(
        "mode = constants\noutput_path = " + out.string() + "\noutput_format = json\n");
    run_sweep(cfg);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["meta"]["mode"] == "constants");
    REQUIRE(j["rows"].size() == 1);
    CHECK(j["rows"][0]["sigma_star"].get<double>() ==
          doctest::Approx(1.1996786402577338).epsilon(1e-13));
    CHECK(j["rows"][0]["rho_star"].get<double>() ==
          doctest::Approx(1.5088795615383199).epsilon(1e-13));
    CHECK(j["rows"][0]["c_star"].get<double>() ==
          doctest::Approx(2.1716229808875015).epsilon(1e-13));
}
