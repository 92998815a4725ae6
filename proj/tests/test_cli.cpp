#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <doctest.h>

#include "airimpact/forecast.hpp"
#include "airimpact/impact.hpp"
#include "airimpact/ingest.hpp"
#include "airimpact/io.hpp"
#include "airimpact/scenario.hpp"
#include "airimpact/synth.hpp"
#include "helpers.hpp"

#ifndef AIRIMPACT_BIN
#error "AIRIMPACT_BIN must point at the CLI binary"
#endif

using namespace airimpact;
using testutil::TempDir;
using testutil::write_file;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the CLI with stdout/stderr captured to files in a scratch dir.
RunResult run_cli(const TempDir& dir, const std::string& args) {
    static int counter = 0;
    const auto out_path = dir.file("stdout-" + std::to_string(counter) + ".txt");
    const auto err_path = dir.file("stderr-" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string(AIRIMPACT_BIN) + " " + args + " > " +
                            out_path.string() + " 2> " + err_path.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    if (status != -1 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    r.out = read_file(out_path);
    r.err = read_file(err_path);
    return r;
}

// A small real-looking corpus: quadratic growth, full history, two countries.
void write_fixture_corpus(const std::filesystem::path& series_path,
                          const std::filesystem::path& airports_path) {
    const RouteCorpus corpus = generate_synthetic_corpus(1234, 12, SynthProfile{});
    write_corpus(corpus, series_path, airports_path);
}

}  // namespace

TEST_CASE("cli: no subcommand fails, help succeeds") {
    TempDir dir;
    CHECK(run_cli(dir, "").exit_code == 1);
    const RunResult help = run_cli(dir, "--help");
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("airimpact") != std::string::npos);
    CHECK(run_cli(dir, "frobnicate").exit_code == 1);
}

TEST_CASE("cli: missing input file names the path and exits 1") {
    TempDir dir;
    write_file(dir.file("airports.csv"), "code,country,name\nAAA,US,Alpha\n");
    const RunResult r = run_cli(dir, "ingest-check --series /nonexistent/series.csv --airports " +
                                         dir.file("airports.csv").string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("/nonexistent/series.csv") != std::string::npos);
}

TEST_CASE("cli: validation problems exit 2") {
    TempDir dir;
    write_fixture_corpus(dir.file("series.csv"), dir.file("airports.csv"));
    const std::string out = dir.file("out").string();

    const RunResult forecast =
        run_cli(dir, "forecast --series " + dir.file("series.csv").string() + " --airports " +
                         dir.file("airports.csv").string() + " --threshold 0 --out " + out);
    REQUIRE(forecast.exit_code == 0);
    const std::string fc = dir.file("out/forecast/forecast.csv").string();

    CHECK(run_cli(dir, "impact --forecast " + fc + " --scenarios NOPE --out " + out).exit_code == 2);
    CHECK(run_cli(dir, "impact --forecast " + fc + " --region mars --out " + out).exit_code == 2);
    CHECK(run_cli(dir, "impact --forecast " + fc + " --kernels neon --out " + out).exit_code == 2);
    CHECK(run_cli(dir, "impact --forecast " + fc + " --pass-through -1 --out " + out).exit_code == 2);
    // Observed without snapshots has nothing to mask.
    CHECK(run_cli(dir, "impact --forecast " + fc + " --scenarios Observed --out " + out).exit_code ==
          2);
    // eu27 region needs the airports table.
    CHECK(run_cli(dir, "impact --forecast " + fc + " --region eu27 --out " + out).exit_code == 2);
}

TEST_CASE("cli: ingest-check summarizes a corpus") {
    TempDir dir;
    write_fixture_corpus(dir.file("series.csv"), dir.file("airports.csv"));
    const RunResult r = run_cli(dir, "ingest-check --series " + dir.file("series.csv").string() +
                                         " --airports " + dir.file("airports.csv").string() +
                                         " --threshold 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("routes=12") != std::string::npos);
    CHECK(r.out.find("observations=" + std::to_string(12 * 118)) != std::string::npos);
}

TEST_CASE("cli: empty corpus forecasts zero totals") {
    TempDir dir;
    write_file(dir.file("series.csv"), "origin,dest,year,month,passengers,avg_fare\n");
    write_file(dir.file("airports.csv"), "code,country,name\nAAA,US,Alpha\n");
    const RunResult r = run_cli(dir, "forecast --series " + dir.file("series.csv").string() +
                                         " --airports " + dir.file("airports.csv").string() +
                                         " --out " + dir.file("out").string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("routes=0") != std::string::npos);
    CHECK(r.out.find("total_2020_passengers=0") != std::string::npos);
    const std::string csv = read_file(dir.file("out/forecast/forecast.csv"));
    CHECK(csv == "origin,dest,year,month,expected_passengers,expected_fare\n");
}

TEST_CASE("cli: forecast matches the library pipeline") {
    TempDir dir;
    write_fixture_corpus(dir.file("series.csv"), dir.file("airports.csv"));
    const RunResult r = run_cli(dir, "forecast --series " + dir.file("series.csv").string() +
                                         " --airports " + dir.file("airports.csv").string() +
                                         " --threshold 10 --out " + dir.file("out").string());
    REQUIRE(r.exit_code == 0);

    const RouteCorpus corpus = filter_frequent(
        parse_route_corpus(dir.file("series.csv"), dir.file("airports.csv")), 10);
    const ForecastSet expected = forecast_corpus(corpus);
    CHECK(read_file(dir.file("out/forecast/forecast.csv")) == serialize_forecast(expected));
}

TEST_CASE("cli: scenario writes one forecast per curve") {
    TempDir dir;
    write_fixture_corpus(dir.file("series.csv"), dir.file("airports.csv"));
    const std::string out = dir.file("out").string();
    REQUIRE(run_cli(dir, "forecast --series " + dir.file("series.csv").string() + " --airports " +
                             dir.file("airports.csv").string() + " --out " + out)
                .exit_code == 0);
    const std::string fc = dir.file("out/forecast/forecast.csv").string();

    // No --scenarios: all seven builtin curves.
    const RunResult r = run_cli(dir, "scenario --forecast " + fc + " --out " + out);
    REQUIRE(r.exit_code == 0);
    const ForecastSet base = read_forecast_csv(fc);
    for (const auto& name : builtin_curve_names()) {
        const auto scen_path = dir.file("out/scenarios/" + name + "/forecast.csv");
        REQUIRE(std::filesystem::exists(scen_path));
        const ForecastSet expected = apply_scenario(base, builtin_curve(name));
        CHECK(read_file(scen_path) == serialize_forecast(expected));
        CHECK(std::filesystem::exists(dir.file("out/scenarios/" + name + "/curve.txt")));
        // The impact table for the default region/profile runs too.
        CHECK(std::filesystem::exists(dir.file("out/impact/" + name + "_global_world.csv")));
    }
}

TEST_CASE("cli: impact grid honors regions, profiles and pass-through") {
    TempDir dir;
    write_fixture_corpus(dir.file("series.csv"), dir.file("airports.csv"));
    const std::string out = dir.file("out").string();
    REQUIRE(run_cli(dir, "forecast --series " + dir.file("series.csv").string() + " --airports " +
                             dir.file("airports.csv").string() + " --out " + out)
                .exit_code == 0);
    const std::string fc = dir.file("out/forecast/forecast.csv").string();

    const RunResult r = run_cli(
        dir, "impact --forecast " + fc + " --airports " + dir.file("airports.csv").string() +
                 " --scenarios COVID-12,SARS --region global --region origin:US --profile world" +
                 " --out " + out);
    REQUIRE(r.exit_code == 0);
    for (const char* stem : {"COVID-12_global_world", "COVID-12_origin-us_world",
                             "SARS_global_world", "SARS_origin-us_world"}) {
        CHECK(std::filesystem::exists(dir.file("out/impact/" + std::string(stem) + ".csv")));
        CHECK(std::filesystem::exists(dir.file("out/impact/" + std::string(stem) + ".txt")));
        CHECK(std::filesystem::exists(dir.file("out/impact/tourism_" + std::string(stem) + ".csv")));
        CHECK(r.out.find(stem) != std::string::npos);
    }
    CHECK(std::filesystem::exists(dir.file("out/impact/revenue_COVID-12_global.csv")));

    // Cross-check one table against the library.
    const ForecastSet base = read_forecast_csv(fc);
    const auto airports = load_airports(dir.file("airports.csv"));
    const ForecastSet adj = apply_scenario(base, builtin_curve("COVID-12"));
    const auto base_rev = monthly_revenue(base, RegionFilter::global(), airports);
    const auto scen_rev = monthly_revenue(adj, RegionFilter::global(), airports);
    double annual = 0.0;
    for (int m = 2; m < kHorizonMonths; ++m) annual += base_rev[static_cast<std::size_t>(m)];
    const QuarterShares q = quarterly_loss_table(revenue_loss(base_rev, scen_rev), annual);
    const LossTable expected = socio_impact(q, EconomyProfile::world(), "global", "COVID-12");
    CHECK(read_file(dir.file("out/impact/COVID-12_global_world.csv")) ==
          serialize_loss_table_csv(expected));

    // Reruns are byte-identical.
    const std::string first = read_file(dir.file("out/impact/COVID-12_global_world.csv"));
    const RunResult again = run_cli(
        dir, "impact --forecast " + fc + " --airports " + dir.file("airports.csv").string() +
                 " --scenarios COVID-12,SARS --region global --region origin:US --profile world" +
                 " --out " + out);
    REQUIRE(again.exit_code == 0);
    CHECK(read_file(dir.file("out/impact/COVID-12_global_world.csv")) == first);
    CHECK(again.out == r.out);
}

TEST_CASE("cli: custom curve file and profile file work") {
    TempDir dir;
    write_fixture_corpus(dir.file("series.csv"), dir.file("airports.csv"));
    const std::string out = dir.file("out").string();
    REQUIRE(run_cli(dir, "forecast --series " + dir.file("series.csv").string() + " --airports " +
                             dir.file("airports.csv").string() + " --out " + out)
                .exit_code == 0);
    const std::string fc = dir.file("out/forecast/forecast.csv").string();

    ScenarioCurve curve = builtin_curve("SARS");
    curve.name = "CustomDip";
    const auto curve_path = write_file(dir.file("custom.curve"), serialize_curve(curve));
    EconomyProfile profile = EconomyProfile::eu27();
    profile.name = "customprof";
    const auto prof_path = write_file(dir.file("custom.profile"), serialize_profile(profile));

    const RunResult r = run_cli(dir, "impact --forecast " + fc + " --scenarios " +
                                         curve_path.string() + " --profile " + prof_path.string() +
                                         " --out " + out);
    REQUIRE(r.exit_code == 0);
    CHECK(std::filesystem::exists(dir.file("out/impact/CustomDip_global_customprof.csv")));
}

TEST_CASE("cli: observed scenario masks suppressed routes") {
    TempDir dir;
    write_fixture_corpus(dir.file("series.csv"), dir.file("airports.csv"));
    const std::string out = dir.file("out").string();
    REQUIRE(run_cli(dir, "forecast --series " + dir.file("series.csv").string() + " --airports " +
                             dir.file("airports.csv").string() + " --out " + out)
                .exit_code == 0);
    const std::string fc = dir.file("out/forecast/forecast.csv").string();
    const ForecastSet base = read_forecast_csv(fc);
    REQUIRE(base.size() > 0);

    // Suppress the first route for March 2020.
    const RouteKey& key = base.keys[0];
    const auto snaps = write_file(
        dir.file("snaps.csv"),
        "origin,dest,snapshot_date,horizon_days,n_direct,n_one_stop,n_two_stop\n" + key.origin +
            "," + key.destination + ",2020-03-10,7,0,0,0\n");

    const RunResult r = run_cli(dir, "scenario --forecast " + fc + " --scenarios Observed" +
                                         " --snapshots " + snaps.string() + " --out " + out);
    REQUIRE(r.exit_code == 0);
    const ForecastSet masked = read_forecast_csv(dir.file("out/scenarios/Observed/forecast.csv"));
    CHECK(masked.passengers[4][0] == 0.0);       // March 2020 zeroed
    CHECK(masked.passengers[3][0] == base.passengers[3][0]);
    CHECK(masked.passengers[4][1] == base.passengers[4][1]);
    CHECK(std::filesystem::exists(dir.file("out/scenarios/Observed/mask.csv")));
}

TEST_CASE("cli: tracking outputs") {
    TempDir dir;
    const char* header =
        "departure_time,origin_airport,origin_country,dest_airport,dest_country,airline_code\n";
    std::string log(header);
    // 4 GB departures late March vs 10 early Feb; 2 FR vs 4.
    for (int i = 0; i < 4; ++i) log += "2020-03-2" + std::to_string(i) + "T08:00:00Z,LHR,GB,JFK,US,BAW\n";
    for (int i = 0; i < 10; ++i) log += "2020-02-0" + std::to_string(1 + i % 5) + "T09:00:00Z,LHR,GB,JFK,US,BAW\n";
    for (int i = 0; i < 2; ++i) log += "2020-03-2" + std::to_string(i) + "T10:00:00Z,CDG,FR,,,\n";
    for (int i = 0; i < 4; ++i) log += "2020-02-0" + std::to_string(1 + i) + "T11:00:00Z,CDG,FR,,,\n";
    const auto log_path = write_file(dir.file("departures.csv"), log);

    const RunResult r = run_cli(dir, "tracking --departures " + log_path.string() + " --out " +
                                         dir.file("out").string());
    REQUIRE(r.exit_code == 0);
    for (const char* name : {"daily_counts.csv", "normalized.csv", "airline_trends.csv",
                             "country_ratios.csv", "pair_matrix.csv", "aggregates.csv",
                             "coverage.txt"})
        CHECK(std::filesystem::exists(dir.file("out/tracking/" + std::string(name))));

    const std::string ratios = read_file(dir.file("out/tracking/country_ratios.csv"));
    CHECK(ratios.find("FR,2,4,0.5\n") != std::string::npos);
    CHECK(ratios.find("GB,4,10,0.4\n") != std::string::npos);
    const std::string aggregates = read_file(dir.file("out/tracking/aggregates.csv"));
    CHECK(aggregates.find("global,6,14,") != std::string::npos);
    // Out of GB and FR only France is in the EU27 aggregate.
    CHECK(aggregates.find("eu27,2,4,0.5\n") != std::string::npos);
    // Normalized series peak at 1.
    const std::string normalized = read_file(dir.file("out/tracking/normalized.csv"));
    CHECK(normalized.find(",1\n") != std::string::npos);

    SUBCASE("empty log still writes headers") {
        const auto empty = write_file(dir.file("empty.csv"), header);
        const RunResult e = run_cli(dir, "tracking --departures " + empty.string() + " --out " +
                                             dir.file("out2").string());
        CHECK(e.exit_code == 0);
        CHECK(read_file(dir.file("out2/tracking/daily_counts.csv")) == "key,date,value\n");
        CHECK(read_file(dir.file("out2/tracking/country_ratios.csv")) ==
              "key,count_a,count_b,ratio\n");
    }
    SUBCASE("bad window flag") {
        CHECK(run_cli(dir, "tracking --departures " + log_path.string() +
                               " --window-a whenever --out " + dir.file("out3").string())
                  .exit_code == 2);
    }
    SUBCASE("custom windows") {
        const RunResult c = run_cli(dir, "tracking --departures " + log_path.string() +
                                             " --window-a 2020-03-20..2020-03-26" +
                                             " --window-b 2020-01-30..2020-02-05 --out " +
                                             dir.file("out4").string());
        CHECK(c.exit_code == 0);
    }
}

TEST_CASE("cli: config file supplies defaults, flags override") {
    TempDir dir;
    write_fixture_corpus(dir.file("series.csv"), dir.file("airports.csv"));
    const auto cfg = write_file(dir.file("run.cfg"),
                                "series = " + dir.file("series.csv").string() + "\n" +
                                    "airports = " + dir.file("airports.csv").string() + "\n" +
                                    "threshold = 10\n" +
                                    "out = " + dir.file("cfg_out").string() + "\n");
    const RunResult r = run_cli(dir, "forecast --config " + cfg.string());
    REQUIRE(r.exit_code == 0);
    CHECK(std::filesystem::exists(dir.file("cfg_out/forecast/forecast.csv")));

    // A flag beats the config value: different out dir, same inputs.
    const RunResult o = run_cli(dir, "forecast --config " + cfg.string() + " --out " +
                                         dir.file("flag_out").string());
    REQUIRE(o.exit_code == 0);
    CHECK(std::filesystem::exists(dir.file("flag_out/forecast/forecast.csv")));
    CHECK(read_file(dir.file("flag_out/forecast/forecast.csv")) ==
          read_file(dir.file("cfg_out/forecast/forecast.csv")));

    // Unknown config keys are parse errors (exit 1).
    const auto bad = write_file(dir.file("bad.cfg"), "bogus_key = 1\n");
    CHECK(run_cli(dir, "forecast --config " + bad.string()).exit_code == 1);
}

TEST_CASE("cli: kernels flag selects implementations") {
    TempDir dir;
    write_fixture_corpus(dir.file("series.csv"), dir.file("airports.csv"));
    const RunResult scalar =
        run_cli(dir, "forecast --series " + dir.file("series.csv").string() + " --airports " +
                         dir.file("airports.csv").string() + " --kernels scalar --out " +
                         dir.file("s_out").string());
    REQUIRE(scalar.exit_code == 0);
    const RunResult automatic =
        run_cli(dir, "forecast --series " + dir.file("series.csv").string() + " --airports " +
                         dir.file("airports.csv").string() + " --kernels auto --out " +
                         dir.file("a_out").string());
    REQUIRE(automatic.exit_code == 0);
    // Forecast files agree whatever kernel ran (elementwise ops are bitwise
    // stable; per-route sums are short enough to stay exact here).
    CHECK(read_file(dir.file("s_out/forecast/forecast.csv")) ==
          read_file(dir.file("a_out/forecast/forecast.csv")));
}
