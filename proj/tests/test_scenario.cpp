#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include <doctest.h>

#include "airimpact/scenario.hpp"
#include "airimpact/synth.hpp"
#include "helpers.hpp"

using namespace airimpact;
using testutil::TempDir;
using testutil::write_file;

namespace {

ForecastSet flat_set(std::size_t n_routes, double pax, double fare) {
    std::vector<RouteKey> keys;
    keys.reserve(n_routes);
    for (std::size_t i = 0; i < n_routes; ++i) {
        std::string dest(3, 'A');
        dest[2] = static_cast<char>('A' + i % 26);
        dest[1] = static_cast<char>('A' + i / 26 % 26);
        keys.push_back({"ZZZ", dest});
    }
    std::sort(keys.begin(), keys.end());
    ForecastSet set = ForecastSet::sized(std::move(keys));
    for (int m = 0; m < kHorizonMonths; ++m) {
        const auto mi = static_cast<std::size_t>(m);
        std::fill(set.passengers[mi].begin(), set.passengers[mi].end(), pax);
        std::fill(set.fares[mi].begin(), set.fares[mi].end(), fare);
    }
    return set;
}

}  // namespace

TEST_CASE("builtin curve anchor values") {
    const ScenarioCurve sars = builtin_curve("SARS");
    CHECK(sars.multipliers[0] == 1.0);
    CHECK(sars.multipliers[4] == 0.65);   // May trough
    CHECK(sars.multipliers[8] == 1.0);    // recovered by September
    CHECK(sars.multipliers[11] == 1.0);
    // Linear between anchors: March is halfway down.
    CHECK(sars.multipliers[2] == doctest::Approx(1.0 - (0.35 / 4.0) * 2).epsilon(1e-12));

    const ScenarioCurve mers = builtin_curve("MERS");
    CHECK(mers.multipliers[1] == 0.88);   // quick February dip
    CHECK(mers.multipliers[2] == 0.88);   // holds through March
    CHECK(mers.multipliers[3] == 0.88);
    CHECK(mers.multipliers[5] == 1.0);    // back by June
    CHECK(mers.multipliers[4] == doctest::Approx(0.94).epsilon(1e-12));

    const ScenarioCurve covid = builtin_curve("COVID-12");
    CHECK(covid.multipliers[0] == 1.0);
    CHECK(covid.multipliers[3] == 0.5);   // halved by April
    CHECK(covid.multipliers[11] == 1.0);  // year-end recovery
    CHECK(covid.multipliers[1] == doctest::Approx(1.0 - 0.5 / 3.0).epsilon(1e-12));
    CHECK(covid.multipliers[2] == doctest::Approx(1.0 - 1.0 / 3.0).epsilon(1e-12));
    CHECK(covid.multipliers[7] == doctest::Approx(0.75).epsilon(1e-12));

    const ScenarioCurve covid_l = builtin_curve("COVID-L");
    // Same descent, but the recovery saturates at 60%.
    for (int m = 0; m < 4; ++m)
        CHECK(covid_l.multipliers[static_cast<std::size_t>(m)] ==
              covid.multipliers[static_cast<std::size_t>(m)]);
    for (int m = 4; m < 12; ++m)
        CHECK(covid_l.multipliers[static_cast<std::size_t>(m)] ==
              std::min(covid.multipliers[static_cast<std::size_t>(m)], 0.6));
    CHECK(covid_l.multipliers[11] == 0.6);

    const ScenarioCurve euroc = builtin_curve("EUROC");
    CHECK(euroc.multipliers[3] == 0.15);  // deep April collapse
    CHECK(euroc.multipliers[9] == 1.0);   // October recovery
    CHECK(euroc.multipliers[11] == 1.0);

    const ScenarioCurve euroc12 = builtin_curve("EUROC-12");
    CHECK(euroc12.multipliers[3] == 0.15);
    CHECK(euroc12.multipliers[11] == 1.0);
    CHECK(euroc12.multipliers[7] == doctest::Approx(0.15 + 0.85 * 4 / 8.0).epsilon(1e-12));

    const ScenarioCurve euroc_l = builtin_curve("EUROC-L");
    CHECK(euroc_l.multipliers[3] == 0.15);
    for (int m = 4; m < 12; ++m)
        CHECK(euroc_l.multipliers[static_cast<std::size_t>(m)] ==
              std::min(euroc12.multipliers[static_cast<std::size_t>(m)], 0.6));
    CHECK(euroc_l.multipliers[11] == 0.6);

    CHECK(builtin_curve_names().size() == 7);
    for (const auto& name : builtin_curve_names()) {
        const ScenarioCurve c = builtin_curve(name);
        CHECK(c.name == name);
        CHECK(c.multipliers[0] == 1.0);  // every episode starts at full volume
        for (double m : c.multipliers) {
            CHECK(m > 0.0);
            CHECK(m <= 1.0);
        }
    }
    CHECK_THROWS_AS(builtin_curve("H1N1"), ValidationError);
}

TEST_CASE("multiplier_for is 1 outside 2020") {
    const ScenarioCurve covid = builtin_curve("COVID-12");
    CHECK(covid.multiplier_for({2019, 11}) == 1.0);
    CHECK(covid.multiplier_for({2019, 12}) == 1.0);
    CHECK(covid.multiplier_for({2020, 4}) == 0.5);
    CHECK(covid.multiplier_for({2021, 4}) == 1.0);
}

TEST_CASE("curve files round-trip exactly") {
    TempDir dir;
    for (const auto& name : builtin_curve_names()) {
        const ScenarioCurve curve = builtin_curve(name);
        const auto path = write_file(dir.file(name + ".curve"), serialize_curve(curve));
        std::vector<std::string> warnings;
        const ScenarioCurve back = load_curve(path, &warnings);
        CHECK(back.name == curve.name);
        CHECK(back.multipliers == curve.multipliers);  // shortest round-trip: bitwise
        CHECK(warnings.empty());
    }
}

TEST_CASE("curve file validation") {
    TempDir dir;
    SUBCASE("missing month key") {
        const auto p = write_file(dir.file("c.curve"),
                                  "name = partial\nm1 = 1\nm2 = 1\nm3 = 1\nm4 = 1\nm5 = 1\n"
                                  "m6 = 1\nm7 = 1\nm8 = 1\nm9 = 1\nm10 = 1\nm11 = 1\n");
        CHECK_THROWS_WITH_AS(load_curve(p), doctest::Contains("m12"), ParseError);
    }
    SUBCASE("value out of range") {
        const auto p = write_file(dir.file("c.curve"),
                                  "name = bad\nm1 = 1\nm2 = 1\nm3 = 1\nm4 = 2.5\nm5 = 1\n"
                                  "m6 = 1\nm7 = 1\nm8 = 1\nm9 = 1\nm10 = 1\nm11 = 1\nm12 = 1\n");
        CHECK_THROWS_AS(load_curve(p), ValidationError);
    }
    SUBCASE("negative value") {
        const auto p = write_file(dir.file("c.curve"),
                                  "name = bad\nm1 = -0.1\nm2 = 1\nm3 = 1\nm4 = 1\nm5 = 1\n"
                                  "m6 = 1\nm7 = 1\nm8 = 1\nm9 = 1\nm10 = 1\nm11 = 1\nm12 = 1\n");
        CHECK_THROWS_AS(load_curve(p), ValidationError);
    }
    SUBCASE("above one warns but loads") {
        const auto p = write_file(dir.file("c.curve"),
                                  "name = boom\nm1 = 1\nm2 = 1.4\nm3 = 1\nm4 = 1\nm5 = 1\n"
                                  "m6 = 1\nm7 = 1\nm8 = 1\nm9 = 1\nm10 = 1\nm11 = 1\nm12 = 1\n");
        std::vector<std::string> warnings;
        const ScenarioCurve c = load_curve(p, &warnings);
        CHECK(c.multipliers[1] == 1.4);
        REQUIRE(warnings.size() == 1);
        CHECK(warnings[0].find("m2") != std::string::npos);
    }
}

TEST_CASE("apply_scenario scales 2020 passengers only") {
    const ScenarioCurve covid = builtin_curve("COVID-12");

    RouteForecast f;
    f.key = {"AAA", "BBB"};
    f.passengers.fill(1000.0);
    f.fares.fill(80.0);
    const RouteForecast scaled = apply_scenario(f, covid);
    CHECK(scaled.passengers[0] == 1000.0);  // Nov 2019
    CHECK(scaled.passengers[1] == 1000.0);  // Dec 2019
    for (int m = 2; m < kHorizonMonths; ++m) {
        const YearMonth ym = horizon_month(m);
        CHECK(scaled.passengers[static_cast<std::size_t>(m)] ==
              1000.0 * covid.multiplier_for(ym));
    }
    for (double fare : scaled.fares) CHECK(fare == 80.0);
}

TEST_CASE("set and route scenario paths agree bitwise") {
    const RouteCorpus corpus = generate_synthetic_corpus(21, 40, SynthProfile{});
    const ForecastSet baseline = forecast_corpus(corpus);
    const ScenarioCurve curve = builtin_curve("EUROC");

    const ForecastSet scaled = apply_scenario(baseline, curve);
    for (std::size_t i = 0; i < baseline.size(); ++i) {
        const RouteForecast via_route = apply_scenario(baseline.route(i), curve);
        const RouteForecast via_set = scaled.route(i);
        for (int m = 0; m < kHorizonMonths; ++m) {
            const auto mi = static_cast<std::size_t>(m);
            CHECK(via_set.passengers[mi] == via_route.passengers[mi]);
            CHECK(via_set.fares[mi] == via_route.fares[mi]);
        }
    }
}

TEST_CASE("null curve is the identity") {
    ScenarioCurve null_curve;
    null_curve.name = "Null";
    null_curve.multipliers.fill(1.0);
    const ForecastSet set = flat_set(9, 123.25, 45.5);
    const ForecastSet out = apply_scenario(set, null_curve);
    for (int m = 0; m < kHorizonMonths; ++m) {
        const auto mi = static_cast<std::size_t>(m);
        CHECK(out.passengers[mi] == set.passengers[mi]);
        CHECK(out.fares[mi] == set.fares[mi]);
    }
}

TEST_CASE("snapshot loading and validation") {
    TempDir dir;
    const char* header = "origin,dest,snapshot_date,horizon_days,n_direct,n_one_stop,n_two_stop\n";
    const auto good = write_file(dir.file("s.csv"), std::string(header) +
                                                        "AAA,BBB,2020-03-05,7,2,3,4\n"
                                                        "AAA,BBB,2020-03-19,7,0,0,1\n");
    const auto snaps = load_snapshots(good);
    REQUIRE(snaps.size() == 2);
    CHECK(snaps[0].key == RouteKey{"AAA", "BBB"});
    CHECK(snaps[0].year == 2020);
    CHECK(snaps[0].month == 3);
    CHECK(snaps[0].day == 5);
    CHECK(snaps[0].horizon_days == 7);
    CHECK(snaps[0].n_direct == 2);
    CHECK(snaps[1].n_two_stop == 1);

    SUBCASE("bad date") {
        const auto p = write_file(dir.file("bad.csv"),
                                  std::string(header) + "AAA,BBB,2020-13-05,7,1,1,1\n");
        CHECK_THROWS_AS(load_snapshots(p), ParseError);
    }
    SUBCASE("malformed date") {
        const auto p = write_file(dir.file("bad2.csv"),
                                  std::string(header) + "AAA,BBB,2020/03/05,7,1,1,1\n");
        CHECK_THROWS_AS(load_snapshots(p), ParseError);
    }
    SUBCASE("negative count") {
        const auto p = write_file(dir.file("bad3.csv"),
                                  std::string(header) + "AAA,BBB,2020-03-05,7,-1,1,1\n");
        CHECK_THROWS_AS(load_snapshots(p), ParseError);
    }
    SUBCASE("zero horizon") {
        const auto p = write_file(dir.file("bad4.csv"),
                                  std::string(header) + "AAA,BBB,2020-03-05,0,1,1,1\n");
        CHECK_THROWS_AS(load_snapshots(p), ParseError);
    }
}

TEST_CASE("observed mask construction") {
    auto snap = [](const char* o, const char* d, int month, int day, std::int64_t direct,
                   std::int64_t one_stop) {
        AvailabilitySnapshot s;
        s.key = {o, d};
        s.year = 2020;
        s.month = month;
        s.day = day;
        s.n_direct = direct;
        s.n_one_stop = one_stop;
        s.n_two_stop = 0;
        return s;
    };

    std::vector<AvailabilitySnapshot> snaps = {
        snap("AAA", "BBB", 3, 5, 0, 0),   // suppressed all month
        snap("AAA", "BBB", 3, 19, 0, 0),  //
        snap("AAA", "BBB", 4, 2, 0, 5),   // one-stop service survives
        snap("CCC", "DDD", 3, 7, 2, 0),   // direct-only route
    };

    const ObservedMask both = build_observed_mask(snaps, MaskPredicate::both_zero);
    REQUIRE(both.entries.size() == 3);
    CHECK(both.entries.at({{"AAA", "BBB"}, 2020, 3}) == 0.0);
    CHECK(both.entries.at({{"AAA", "BBB"}, 2020, 4}) == 1.0);
    CHECK(both.entries.at({{"CCC", "DDD"}, 2020, 3}) == 1.0);

    // Stricter reading: any zero count suppresses.
    const ObservedMask either = build_observed_mask(snaps, MaskPredicate::either_zero);
    CHECK(either.entries.at({{"AAA", "BBB"}, 2020, 4}) == 0.0);
    CHECK(either.entries.at({{"CCC", "DDD"}, 2020, 3}) == 0.0);

    // A single live probe keeps the whole month alive.
    snaps.push_back(snap("AAA", "BBB", 3, 25, 1, 0));
    const ObservedMask rescued = build_observed_mask(snaps, MaskPredicate::both_zero);
    CHECK(rescued.entries.at({{"AAA", "BBB"}, 2020, 3}) == 1.0);
}

TEST_CASE("mask application") {
    ObservedMask mask;
    mask.entries[{{"ZZZ", "AAA"}, 2020, 2}] = 0.0;
    mask.entries[{{"ZZZ", "AAB"}, 2020, 3}] = 0.0;
    mask.entries[{{"ZZZ", "AAB"}, 2019, 12}] = 0.0;
    mask.entries[{{"ZZZ", "AAC"}, 2020, 5}] = 1.0;

    const ForecastSet set = flat_set(4, 500.0, 100.0);
    REQUIRE(set.keys[0] == RouteKey{"ZZZ", "AAA"});
    const ForecastSet out = apply_mask(set, mask);

    CHECK(out.passengers[3][0] == 0.0);   // Feb 2020 suppressed
    CHECK(out.passengers[2][0] == 500.0);  // Jan untouched
    CHECK(out.passengers[4][1] == 0.0);   // Mar 2020 suppressed
    CHECK(out.passengers[1][1] == 0.0);   // Dec 2019 entries apply too
    CHECK(out.passengers[6][2] == 500.0);  // factor 1 is a no-op
    for (int m = 0; m < kHorizonMonths; ++m) {
        CHECK(out.passengers[static_cast<std::size_t>(m)][3] == 500.0);  // unmasked route
        for (std::size_t i = 0; i < set.size(); ++i)
            CHECK(out.fares[static_cast<std::size_t>(m)][i] == 100.0);
    }

    // Route and set paths agree.
    for (std::size_t i = 0; i < set.size(); ++i) {
        const RouteForecast via_route = apply_mask(set.route(i), mask);
        for (int m = 0; m < kHorizonMonths; ++m)
            CHECK(via_route.passengers[static_cast<std::size_t>(m)] ==
                  out.passengers[static_cast<std::size_t>(m)][i]);
    }
}

TEST_CASE("mask CSV round trip") {
    ObservedMask mask;
    mask.entries[{{"AAA", "BBB"}, 2020, 3}] = 0.0;
    mask.entries[{{"AAA", "BBB"}, 2020, 4}] = 1.0;
    mask.entries[{{"CCC", "DDD"}, 2019, 12}] = 0.0;

    TempDir dir;
    const auto path = write_file(dir.file("mask.csv"), serialize_mask(mask));
    const ObservedMask back = read_mask_csv(path);
    CHECK(back.entries == mask.entries);

    SUBCASE("fractional factor rejected") {
        const auto p = write_file(dir.file("bad.csv"),
                                  "origin,dest,year,month,factor\nAAA,BBB,2020,3,0.5\n");
        CHECK_THROWS_AS(read_mask_csv(p), ParseError);
    }
    SUBCASE("duplicate entry rejected") {
        const auto p = write_file(dir.file("dup.csv"),
                                  "origin,dest,year,month,factor\n"
                                  "AAA,BBB,2020,3,0\nAAA,BBB,2020,3,1\n");
        CHECK_THROWS_AS(read_mask_csv(p), ParseError);
    }
}
