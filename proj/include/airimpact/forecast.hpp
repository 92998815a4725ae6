#pragma once

#include <array>
#include <filesystem>
#include <vector>

#include "airimpact/regression.hpp"
#include "airimpact/types.hpp"

namespace airimpact {

// Baseline projection for one route over the 14-month horizon
// (November 2019 - December 2020). Index i maps to horizon_month(i).
struct RouteForecast {
    RouteKey key;
    std::array<double, kHorizonMonths> passengers{};
    std::array<double, kHorizonMonths> fares{};
};

// Corpus-wide forecasts in month-major layout: column m holds every
// route's value for horizon month m, in route-key order. This keeps the
// scenario and revenue loops contiguous.
struct ForecastSet {
    std::vector<RouteKey> keys;  // sorted
    std::array<std::vector<double>, kHorizonMonths> passengers;
    std::array<std::vector<double>, kHorizonMonths> fares;

    std::size_t size() const { return keys.size(); }

    RouteForecast route(std::size_t i) const {
        RouteForecast rf;
        rf.key = keys[i];
        for (int m = 0; m < kHorizonMonths; ++m) {
            rf.passengers[static_cast<std::size_t>(m)] = passengers[static_cast<std::size_t>(m)][i];
            rf.fares[static_cast<std::size_t>(m)] = fares[static_cast<std::size_t>(m)][i];
        }
        return rf;
    }

    void set_route(std::size_t i, const RouteForecast& rf) {
        for (int m = 0; m < kHorizonMonths; ++m) {
            passengers[static_cast<std::size_t>(m)][i] = rf.passengers[static_cast<std::size_t>(m)];
            fares[static_cast<std::size_t>(m)][i] = rf.fares[static_cast<std::size_t>(m)];
        }
    }

    static ForecastSet sized(std::vector<RouteKey> keys);
};

struct ForecastOptions {
    bool wuhan_adjustment = true;
    std::string wuhan_origin = "WUH";
    int wuhan_cutoff_day = 23;
    int wuhan_days_in_month = 31;
    unsigned threads = 1;  // 0 = hardware concurrency
};

// Fits the 12 calendar-month models on this route's history and predicts
// each horizon month. Fares reuse the same machinery when a month has at
// least 3 fare points; otherwise they fall back to the route's all-time
// mean fare, or 0 for a route with no fare data at all.
RouteForecast forecast_route(const RouteSeries& series,
                             const kernels::Kernels& k = kernels::active());

// January 2020 scaled by (cutoff_day - 1) / days_in_month; everything else
// untouched. Callers guard the origin; the operation rescales whatever it
// is given.
RouteForecast apply_wuhan_adjustment(RouteForecast forecast, int cutoff_day = 23,
                                     int days_in_month = 31);

// Per-route fits are independent; output is identical for any thread count.
ForecastSet forecast_corpus(const RouteCorpus& corpus, const ForecastOptions& options = {},
                            const kernels::Kernels& k = kernels::active());

// Monthly counts drawn as independent Poisson variables around the
// forecast means.
struct PoissonSample {
    RouteKey key;
    std::uint64_t seed = 0;
    std::size_t n_paths = 0;
    std::vector<std::uint32_t> draws;  // n_paths x 14, row-major

    std::uint32_t at(std::size_t path, int month_index) const {
        return draws[path * kHorizonMonths + static_cast<std::size_t>(month_index)];
    }
};

PoissonSample sample_poisson_paths(const RouteForecast& forecast, std::size_t n_paths,
                                   std::uint64_t seed);

// Forecast CSV: origin,dest,year,month,expected_passengers,expected_fare
// with 14 rows per route in horizon order.
std::string serialize_forecast(const ForecastSet& set);
void write_forecast_csv(const ForecastSet& set, const std::filesystem::path& file);
ForecastSet read_forecast_csv(const std::filesystem::path& file);

}  // namespace airimpact
