#include <cmath>
#include <string>

#include <doctest.h>

#include "airimpact/ingest.hpp"
#include "airimpact/synth.hpp"
#include "helpers.hpp"

using namespace airimpact;
using testutil::TempDir;
using testutil::write_file;

TEST_CASE("synthetic corpus shape") {
    const RouteCorpus corpus = generate_synthetic_corpus(7, 25, SynthProfile{});
    REQUIRE(corpus.routes.size() == 25);
    for (std::size_t i = 1; i < corpus.routes.size(); ++i)
        CHECK(corpus.routes[i - 1].key < corpus.routes[i].key);
    for (const auto& series : corpus.routes) {
        // Full window: Jan 2010 .. Oct 2019 is 118 months.
        REQUIRE(series.observations.size() == 118);
        CHECK(series.observations.front().ym() == YearMonth{2010, 1});
        CHECK(series.observations.back().ym() == YearMonth{2019, 10});
        std::uint32_t max_pax = 0;
        for (const auto& o : series.observations) {
            CHECK(o.has_fare);
            CHECK(o.avg_fare == 120.0);
            max_pax = std::max(max_pax, o.passengers);
        }
        CHECK(series.max_monthly_passengers == max_pax);
        CHECK(corpus.airport_country(series.key.origin));
        CHECK(corpus.airport_country(series.key.destination));
    }
}

TEST_CASE("same seed reproduces, different seed varies") {
    const RouteCorpus a = generate_synthetic_corpus(42, 10, SynthProfile{});
    const RouteCorpus b = generate_synthetic_corpus(42, 10, SynthProfile{});
    CHECK(serialize_series(a) == serialize_series(b));
    CHECK(serialize_airports(a) == serialize_airports(b));
    const RouteCorpus c = generate_synthetic_corpus(43, 10, SynthProfile{});
    CHECK(serialize_series(c) != serialize_series(a));
}

TEST_CASE("thread count does not change the corpus") {
    const RouteCorpus one = generate_synthetic_corpus(9, 40, SynthProfile{}, 1);
    const RouteCorpus four = generate_synthetic_corpus(9, 40, SynthProfile{}, 4);
    CHECK(serialize_series(one) == serialize_series(four));
}

TEST_CASE("draws track the profile mean") {
    SynthProfile profile;
    profile.base = 200.0;
    profile.growth = 0.03;
    profile.season = {0.8, 0.8, 0.9, 1.0, 1.1, 1.3, 1.4, 1.3, 1.1, 1.0, 0.9, 0.8};
    const RouteCorpus corpus = generate_synthetic_corpus(5, 50, profile);

    double expected = 0.0, got = 0.0;
    for (const auto& series : corpus.routes)
        for (const auto& o : series.observations) {
            expected += profile.mean(o.year, o.month);
            got += o.passengers;
        }
    // Sum of ~5900 Poisson draws: sigma = sqrt(expected).
    CHECK(std::abs(got - expected) <= 4.0 * std::sqrt(expected));
}

TEST_CASE("profile file loads and validates") {
    TempDir dir;
    const auto good = write_file(dir.file("p.profile"),
                                 "base = 150\n"
                                 "growth = 0.04\n"
                                 "season_1 = 0.9\nseason_2 = 0.9\nseason_3 = 1.0\n"
                                 "season_4 = 1.0\nseason_5 = 1.1\nseason_6 = 1.2\n"
                                 "season_7 = 1.2\nseason_8 = 1.1\nseason_9 = 1.0\n"
                                 "season_10 = 1.0\nseason_11 = 0.9\nseason_12 = 0.8\n"
                                 "fare_base = 95.5\n");
    const SynthProfile p = load_synth_profile(good);
    CHECK(p.base == 150.0);
    CHECK(p.growth == 0.04);
    CHECK(p.season[0] == 0.9);
    CHECK(p.season[11] == 0.8);
    CHECK(p.fare_base == 95.5);

    SUBCASE("negative base") {
        const auto bad = write_file(dir.file("bad.profile"), "base = -1\n");
        CHECK_THROWS_AS(load_synth_profile(bad), Error);
    }
    SUBCASE("unknown key") {
        const auto bad = write_file(dir.file("bad2.profile"), "base = 10\nbogus = 1\n");
        CHECK_THROWS_WITH_AS(load_synth_profile(bad), doctest::Contains("bogus"), ParseError);
    }
}
