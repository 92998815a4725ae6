#pragma once

#include <array>
#include <cstdint>
#include <filesystem>

#include "airimpact/types.hpp"

namespace airimpact {

// Monthly mean for a synthetic route:
//   mean(year, month) = base * (1 + growth*(year-2010))^2 * season[month]
// Counts are Poisson draws around that mean; fares are fare_base exactly.
struct SynthProfile {
    double base = 100.0;
    double growth = 0.05;
    std::array<double, 12> season{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
    double fare_base = 120.0;

    double mean(int year, int month) const {
        double trend = 1.0 + growth * static_cast<double>(year - kHistFirstYear);
        return base * trend * trend * season[static_cast<std::size_t>(month - 1)];
    }
};

// Flat key-value file with keys: base, growth, season_1..season_12, fare_base.
SynthProfile load_synth_profile(const std::filesystem::path& file);

// Deterministic for a fixed seed, independent of thread count. Covers the
// full Jan 2010 - Oct 2019 window for every route.
RouteCorpus generate_synthetic_corpus(std::uint64_t seed, std::size_t n_routes,
                                      const SynthProfile& profile, unsigned threads = 1);

}  // namespace airimpact
