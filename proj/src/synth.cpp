#include "airimpact/synth.hpp"

#include <random>
#include <string>

#include "airimpact/config.hpp"
#include "airimpact/parallel.hpp"

namespace airimpact {

namespace {

constexpr std::size_t kCodeSpace = 26 * 26 * 26;

std::string encode_code(std::size_t i) {
    std::string code(3, 'A');
    code[0] = static_cast<char>('A' + i / (26 * 26) % 26);
    code[1] = static_cast<char>('A' + i / 26 % 26);
    code[2] = static_cast<char>('A' + i % 26);
    return code;
}

// Distinct ordered pairs for any route index: same-origin routes get
// different destination offsets.
RouteKey route_key_for(std::size_t i) {
    std::size_t origin = i % kCodeSpace;
    std::size_t offset = 1 + i / kCodeSpace;
    std::size_t dest = (origin + offset) % kCodeSpace;
    return {encode_code(origin), encode_code(dest)};
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

const char* kCountryCycle[] = {"US", "GB", "DE", "FR", "IT", "ES", "CN", "JP", "AU", "BR"};

}  // namespace

SynthProfile load_synth_profile(const std::filesystem::path& file) {
    KeyValueConfig cfg = KeyValueConfig::load(file);
    SynthProfile p;
    p.base = cfg.get_number("base", p.base);
    p.growth = cfg.get_number("growth", p.growth);
    p.fare_base = cfg.get_number("fare_base", p.fare_base);
    for (int m = 1; m <= 12; ++m)
        p.season[static_cast<std::size_t>(m - 1)] =
            cfg.get_number("season_" + std::to_string(m), p.season[static_cast<std::size_t>(m - 1)]);
    cfg.finish("synthetic profile");
    require(p.base >= 0 && p.fare_base >= 0, "base and fare_base must be non-negative");
    for (double s : p.season) require(s >= 0, "season factors must be non-negative");
    return p;
}

RouteCorpus generate_synthetic_corpus(std::uint64_t seed, std::size_t n_routes,
                                      const SynthProfile& profile, unsigned threads) {
    require(n_routes >= 1, "n_routes must be positive");

    RouteCorpus corpus;
    corpus.routes.resize(n_routes);

    parallel_for(n_routes, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RouteSeries& series = corpus.routes[i];
            series.key = route_key_for(i);
            series.observations.reserve(118);
            std::mt19937_64 rng(splitmix64(seed ^ (0x51ed2701u + i * 0x9e3779b97f4a7c15ull)));
            for (int year = kHistFirstYear; year <= kHistLastYear; ++year) {
                int last_month = year == kHistLastYear ? kHistLastMonth : 12;
                for (int month = 1; month <= last_month; ++month) {
                    double mean = profile.mean(year, month);
                    std::uint32_t count = 0;
                    if (mean > 0) {
                        std::poisson_distribution<std::uint32_t> poisson(mean);
                        count = poisson(rng);
                    }
                    MonthlyObservation obs;
                    obs.year = static_cast<std::int16_t>(year);
                    obs.month = static_cast<std::int8_t>(month);
                    obs.passengers = count;
                    obs.has_fare = true;
                    obs.avg_fare = profile.fare_base;
                    series.observations.push_back(obs);
                }
            }
            series.recompute_max();
        }
    });

    std::sort(corpus.routes.begin(), corpus.routes.end(),
              [](const RouteSeries& a, const RouteSeries& b) { return a.key < b.key; });

    // One airport row per code used, with a rotating country assignment so
    // region filters have something to chew on.
    std::vector<std::string> codes;
    codes.reserve(2 * n_routes);
    for (const auto& s : corpus.routes) {
        codes.push_back(s.key.origin);
        codes.push_back(s.key.destination);
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    corpus.airports.reserve(codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i) {
        corpus.airports.push_back(
            {codes[i], kCountryCycle[i % std::size(kCountryCycle)], "Synthetic " + codes[i]});
    }
    return corpus;
}

}  // namespace airimpact
