#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "airimpact/common.hpp"

namespace airimpact {

// Origin -> destination itinerary. Aggregates direct and multi-stop
// journeys; the source data cannot tell them apart.
struct RouteKey {
    std::string origin;
    std::string destination;

    friend auto operator<=>(const RouteKey&, const RouteKey&) = default;
};

struct MonthlyObservation {
    std::int16_t year = 0;
    std::int8_t month = 0;
    bool has_fare = false;
    std::uint32_t passengers = 0;
    double avg_fare = 0.0;  // US$ per passenger, valid when has_fare

    YearMonth ym() const { return {year, month}; }
};

// Monthly history for one route, sorted by (year, month), unique months.
struct RouteSeries {
    RouteKey key;
    std::vector<MonthlyObservation> observations;
    std::uint32_t max_monthly_passengers = 0;  // maxP, cached at load

    void recompute_max() {
        std::uint32_t m = 0;
        for (const auto& o : observations) m = std::max(m, o.passengers);
        max_monthly_passengers = m;
    }
};

struct AirportRef {
    std::string code;     // [A-Z]{3}
    std::string country;  // ISO 3166-1 alpha-2
    std::string name;
};

// Immutable after load; safe to share across threads.
struct RouteCorpus {
    std::vector<RouteSeries> routes;    // sorted by key
    std::vector<AirportRef> airports;   // sorted by code

    const RouteSeries* find_route(const RouteKey& key) const {
        auto it = std::lower_bound(routes.begin(), routes.end(), key,
                                   [](const RouteSeries& s, const RouteKey& k) { return s.key < k; });
        if (it == routes.end() || !(it->key == key)) return nullptr;
        return &*it;
    }

    // Country of an airport code, or nullopt when the code is unresolved.
    // Unresolved routes stay in global aggregates but drop out of
    // region-filtered ones.
    std::optional<std::string_view> airport_country(std::string_view code) const {
        auto it = std::lower_bound(airports.begin(), airports.end(), code,
                                   [](const AirportRef& a, std::string_view c) { return a.code < c; });
        if (it == airports.end() || it->code != code) return std::nullopt;
        return std::string_view(it->country);
    }
};

}  // namespace airimpact
