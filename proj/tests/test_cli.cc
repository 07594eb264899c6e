#include "shutter/cli.hpp"

#include <cmath>
#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.hpp"

using namespace shutter;
using shutter::test::Gen;

namespace
{
struct Outcome
{
    int status;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> const& args)
{
    std::ostringstream out, err;
    int const status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

//! Write text to a fresh file in the temp directory
std::string write_temp(std::string const& name, std::string const& text)
{
    auto const dir = std::filesystem::temp_directory_path() / "shutter_tests";
    std::filesystem::create_directories(dir);
    auto const path = dir / name;
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
}

bool contains(std::string const& haystack, std::string const& needle)
{
    return haystack.find(needle) != std::string::npos;
}

std::string const small_ensemble = "particle_count = 20000\n"
                                   "seed = 11\n"
                                   "v_min = 0.1\n"
                                   "v_max = 100\n"
                                   "reservoir_depth = 1000\n"
                                   "detectors = 1, 2, 4\n"
                                   "times = 0.2, 0.5, 1, 2\n"
                                   "bin_fraction = 0.2\n";

}  // namespace

TEST_CASE("numbers round-trip through the CSV formatter")
{
    Gen gen(3);
    for (int k = 0; k < 2000; ++k)
    {
        double const v = gen.signed_log_uniform(1e-300, 1e300);
        CHECK(csv::parse_number(csv::format_number(v)) == v);
    }
    CHECK(csv::format_number(0.1) == "0.1");
    CHECK(csv::format_number(1e6) == "1e+06");
    CHECK(csv::format_number(250) == "250");
    CHECK(csv::parse_number("+2.5") == 2.5);
    CHECK_THROWS_AS(csv::parse_number("1.0x"), ConfigError);
    CHECK_THROWS_AS(csv::parse_number(""), ConfigError);
}

TEST_CASE("CSV tables round-trip byte for byte")
{
    csv::Table t;
    t.header = {"a", "b", "c"};
    t.add_row({"1", "", "-3.5e-07"});
    t.add_row({"x", "y", "z"});
    t.trailer = {"note one", "slope=-1 se=0.01"};
    std::string const text = csv::to_string(t);
    CHECK(text == "a,b,c\n1,,-3.5e-07\nx,y,z\n# note one\n# slope=-1 se=0.01\n");
    auto const parsed = csv::read(text);
    CHECK(parsed.header == t.header);
    CHECK(parsed.rows == t.rows);
    CHECK(parsed.trailer == t.trailer);
    CHECK(csv::to_string(parsed) == text);

    CHECK_THROWS_AS(t.add_row({"1", "2"}), UsageError);
    try
    {
        csv::read("a,b\n1,2\n3\n");
        FAIL("ragged row accepted");
    }
    catch (ConfigError const& e)
    {
        CHECK(contains(e.what(), "line 3"));
    }
    CHECK_THROWS_AS(csv::read("a,b\n1,2"), ConfigError);
    CHECK_THROWS_AS(csv::read("a,b\n# done\n1,2\n"), ConfigError);
}

TEST_CASE("key = value files")
{
    auto f = KeyValueFile::parse("# comment\n"
                                 "alpha = 1.5  # trailing\n"
                                 "\n"
                                 "count = 1e6\n"
                                 "list = 1, 2,3\n"
                                 "name = pinned\n",
                                 "demo.cfg");
    CHECK(f.contains("alpha"));
    CHECK(f.number("alpha", 0) == 1.5);
    CHECK(f.count("count", 0) == 1000000);
    CHECK(f.numbers("list", {}) == std::vector<double>{1, 2, 3});
    CHECK(f.text("name", "") == "pinned");
    CHECK(f.number("missing", 7) == 7);
    CHECK_NOTHROW(f.finish());

    auto unused = KeyValueFile::parse("a = 1\nbogus = 2\n", "u.cfg");
    unused.number("a", 0);
    try
    {
        unused.finish();
        FAIL("unknown key accepted");
    }
    catch (ConfigError const& e)
    {
        CHECK(contains(e.what(), "bogus"));
    }

    try
    {
        KeyValueFile::parse("a = 1\nno equals sign\n", "bad.cfg");
        FAIL("malformed line accepted");
    }
    catch (ConfigError const& e)
    {
        CHECK(contains(e.what(), "bad.cfg:2"));
    }
    CHECK_THROWS_AS(KeyValueFile::parse("a = 1\na = 2\n"), ConfigError);
    auto garbage = KeyValueFile::parse("a = 1.5kg\n", "g.cfg");
    try
    {
        garbage.number("a", 0);
        FAIL("garbage number accepted");
    }
    catch (ConfigError const& e)
    {
        CHECK(contains(e.what(), "g.cfg:1"));
    }
    auto fractional = KeyValueFile::parse("n = 2.5\n");
    CHECK_THROWS_AS(fractional.count("n", 0), ConfigError);
    CHECK_THROWS_AS(KeyValueFile::load("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("exit codes by error category")
{
    CHECK(exit_code(ErrorKind::usage) == 2);
    CHECK(exit_code(ErrorKind::domain) == 3);
    CHECK(exit_code(ErrorKind::config) == 4);
    CHECK(exit_code(ErrorKind::verification) == 5);

    CHECK(run({"--help"}).status == 0);
    CHECK(run({"sweep", "--help"}).status == 0);
    CHECK(run({}).status == 2);
    CHECK(run({"frobnicate"}).status == 2);
    CHECK(run({"sweep", "--min", "0"}).status == 2);
    CHECK(run({"regimes", "--x", "1"}).status == 2);
    CHECK(run({"sweep", "--at", "1", "--min", "0", "--max", "1", "--sources",
               "bogus"})
              .status
          == 2);
}

TEST_CASE("sweep output")
{
    auto const r = run({"sweep", "--mode", "fix-t", "--at", "1", "--min", "-1",
                        "--max", "1", "--points", "3", "--xi", "0.1",
                        "--sources", "exact,plateau"});
    REQUIRE(r.status == 0);
    auto const table = csv::read(r.out);
    CHECK(table.header
          == std::vector<std::string>(std::begin(sweep_header),
                                      std::end(sweep_header)));
    REQUIRE(table.rows.size() == 6);
    // Coordinate-major, sources in request order
    CHECK(table.rows[0][0] == "-1");
    CHECK(table.rows[0][1] == "exact");
    CHECK(table.rows[1][1] == "plateau");
    // Undefined fields are empty: plateau at x <= 0, psi for a current law
    CHECK(table.rows[1][5].empty());
    CHECK(table.rows[5][2].empty());
    double const j_exact = csv::parse_number(table.rows[4][5]);
    CHECK(j_exact
          == doctest::Approx(current(1, 1, InitialCondition::smoothed(0.1)))
                 .epsilon(1e-15));
    CHECK(csv::parse_number(table.rows[5][5])
          == doctest::Approx(plateau_current(1)).epsilon(1e-15));

    SweepRequest req;
    req.sources = {};
    CHECK_THROWS_AS(req.validate(), UsageError);
    req.sources = {Source::exact};
    req.spacing = Spacing::log;
    req.min = -1;
    CHECK_THROWS_AS(req.validate(), UsageError);
    req.min = 1;
    req.max = 100;
    req.points = 3;
    auto const xs = req.coordinates();
    CHECK(xs[1] == doctest::Approx(10));
    CHECK(xs.back() == 100);
    CHECK(parse_source("longtime") == Source::longtime);
    CHECK_THROWS_AS(parse_source("nope"), UsageError);

    auto const empty = run({"sweep", "--at", "1", "--min", "0", "--max", "1",
                            "--sources", ""});
    CHECK(empty.status == 2);
}

TEST_CASE("oracle source in a sweep")
{
    SweepRequest req;
    req.mode = SweepMode::fix_t_scan_x;
    req.fixed = 0.05;
    req.min = -0.5;
    req.max = 0.5;
    req.points = 5;
    req.xi = 0.1;
    req.sources = {Source::exact, Source::oracle};
    req.grid.x_min = -5;
    req.grid.x_max = 5;
    req.grid.point_count = 2001;
    auto const table = run_sweep(req);
    REQUIRE(table.rows.size() == 10);
    for (std::size_t k = 0; k < 10; k += 2)
    {
        double const exact = csv::parse_number(table.rows[k][4]);
        double const oracle = csv::parse_number(table.rows[k + 1][4]);
        CHECK(oracle == doctest::Approx(exact).epsilon(1e-2));
    }
}

TEST_CASE("regime report")
{
    auto const r = run({"regimes", "--x", "1", "--t", "0.5", "--xi", "1e-3"});
    REQUIRE(r.status == 0);
    CHECK(contains(r.out, "regime"));
    CHECK(contains(r.out, "plateau"));
    CHECK(contains(r.out, "t_sat"));
    CHECK(run({"regimes", "--x", "-1", "--t", "0.5", "--xi", "1e-3"}).status
          == 3);

    for (auto tag : {RegimeTag::non_causal,
                     RegimeTag::linear_rise,
                     RegimeTag::exponential_rise,
                     RegimeTag::plateau,
                     RegimeTag::long_time_decay})
    {
        auto const f = recommended_formula(tag);
        CHECK(!f.rho.empty());
        CHECK(!f.j.empty());
    }
}

TEST_CASE("experiment window for rubidium")
{
    auto const w = experiment_window(0.01, 1e-7);
    CHECK(w.t_min == doctest::Approx(2.7367).epsilon(1e-3));
    CHECK(w.t_max == doctest::Approx(2.7367e5).epsilon(1e-3));
    CHECK(w.feasible);
    CHECK_FALSE(experiment_window(0.01, 2e-4).feasible);
    CHECK_THROWS_AS(experiment_window(1e-3, 1e-3), DomainError);

    auto const r = run({"experiment-window", "--x", "0.01", "--xi", "1e-7"});
    REQUIRE(r.status == 0);
    CHECK(contains(r.out, "feasible = true"));
    CHECK(run({"experiment-window", "--x", "0.01", "--xi", "0.01"}).status
          == 3);
}

TEST_CASE("semiclassical command")
{
    auto const path = write_temp("ensemble.cfg", small_ensemble);
    auto const a = run({"semiclassical", "--config", path});
    REQUIRE(a.status == 0);
    auto const b = run({"semiclassical", "--config", path});
    CHECK(a.out == b.out);
    auto const table = csv::read(a.out);
    CHECK(table.rows.size() == 12);
    CHECK(table.trailer.size() == 3 * 2 + 4);
    CHECK(contains(a.out, "slope_log_j_vs_log_t="));
    CHECK(contains(a.out, "slope_log_j_vs_log_x0="));

    auto const threaded
        = write_temp("ensemble_threads.cfg", small_ensemble + "threads = 3\n");
    CHECK(run({"semiclassical", "--config", threaded}).out == a.out);

    // v_max * t_max = 300 > reservoir depth 100
    auto const shallow = write_temp(
        "shallow.cfg",
        "particle_count = 100\nv_min = 0.1\nv_max = 150\n"
        "reservoir_depth = 100\ndetectors = 1\ntimes = 1, 2\n");
    auto const r = run({"semiclassical", "--config", shallow});
    CHECK(r.status == 4);
    CHECK(contains(r.err, "v_max * max(times) < reservoir_depth"));

    auto const typo = write_temp("typo.cfg", small_ensemble + "partcle = 3\n");
    auto const t = run({"semiclassical", "--config", typo});
    CHECK(t.status == 4);
    CHECK(contains(t.err, "partcle"));
    CHECK(run({"semiclassical", "--config", "/nonexistent.cfg"}).status == 4);
}

TEST_CASE("oracle-verify command")
{
    auto const malformed
        = write_temp("malformed.cfg", "xi = 0.1\nratio 0.1\n");
    auto const m = run({"oracle-verify", "--spec", malformed});
    CHECK(m.status == 4);
    CHECK(contains(m.err, ":2"));

    auto const both = write_temp("both.cfg",
                                 "xi = 0.1\nratio = 0.1\ndt = 1e-3\n");
    CHECK(run({"oracle-verify", "--spec", both}).status == 4);

    auto const even = write_temp(
        "even.cfg",
        "xi = 0.1\nx_min = -5\nx_max = 5\npoints = 100\nratio = 0.1\n"
        "t_final = 0.01\nmin_order = 1.8\n");
    CHECK(run({"oracle-verify", "--spec", even}).status == 4);

    // Spacing 0.2 cannot resolve xi = 0.1
    auto const coarse = write_temp(
        "coarse.cfg",
        "xi = 0.1\nx_min = -10\nx_max = 10\npoints = 101\nratio = 0.1\n"
        "t_final = 0.25\n");
    auto const c = run({"oracle-verify", "--spec", coarse});
    CHECK(c.status == 5);
    auto const report = csv::read(c.out);
    CHECK(report.header
          == std::vector<std::string>{
              "check", "relation", "tolerance", "measured", "status"});
    REQUIRE(!report.rows.empty());
    CHECK(report.rows[0][0] == "resolution_xi_over_spacing");
    CHECK(report.rows[0][4] == "fail");

    auto const fine = write_temp(
        "fine.cfg",
        "xi = 0.1\nx_min = -10\nx_max = 10\npoints = 2001\nratio = 0.1\n"
        "t_final = 0.01\nl2_tolerance = 1e-3\ncontinuity_tolerance = 5e-2\n"
        "min_order = 1.8\nmin_continuity_reduction = 3.5\n");
    auto const f = run({"oracle-verify", "--spec", fine});
    CHECK(f.status == 0);
    auto const ok = csv::read(f.out);
    CHECK(ok.rows.size() == 5);
    for (auto const& row : ok.rows)
        CHECK(row[4] == "pass");
}

TEST_CASE("trap potential command")
{
    auto const r = run({"potential", "--xi", "0.5", "--min", "-2", "--max",
                        "10", "--points", "13"});
    REQUIRE(r.status == 0);
    auto const table = csv::read(r.out);
    REQUIRE(table.rows.size() == 13);
    bool saw_origin = false;
    for (auto const& row : table.rows)
    {
        double const x = csv::parse_number(row[0]);
        double const v = csv::parse_number(row[1]);
        CHECK(std::isfinite(v));
        CHECK(std::fabs(csv::parse_number(row[2])) <= 1e-8);
        if (x == 0)
        {
            saw_origin = true;
            CHECK(v == 0);
        }
    }
    CHECK(saw_origin);
    CHECK(csv::parse_number(table.rows.back()[0]) == 10);
    CHECK(run({"potential", "--xi", "0"}).status == 3);
    CHECK(run({"potential", "--xi", "1", "--min", "1", "--max", "0"}).status
          == 2);
}
