#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "airimpact/forecast.hpp"

namespace airimpact {

// Monthly volume multipliers for calendar 2020 (1.0 = pre-crisis volume).
// Anything before 2020 is implicitly 1.0.
struct ScenarioCurve {
    std::string name;
    std::array<double, 12> multipliers{};

    double multiplier_for(YearMonth ym) const {
        return ym.year == 2020 ? multipliers[static_cast<std::size_t>(ym.month - 1)] : 1.0;
    }
};

// Built-in curves: SARS, MERS, COVID-12, COVID-L, EUROC, EUROC-12, EUROC-L.
// Piecewise-linear reconstructions anchored at each episode's trough and
// recovery month; the same vectors ship as editable config files under
// data/curves/.
ScenarioCurve builtin_curve(std::string_view name);
const std::vector<std::string>& builtin_curve_names();

// Curve config: `name=<text>` plus `m1=..` through `m12=..`. Values must
// lie in [0, 2]; values above 1 are accepted with a warning.
ScenarioCurve load_curve(const std::filesystem::path& file,
                         std::vector<std::string>* warnings = nullptr);
std::string serialize_curve(const ScenarioCurve& curve);

// One booking-availability probe: flight counts seen for a route over the
// next `horizon_days` from `snapshot date`.
struct AvailabilitySnapshot {
    RouteKey key;
    int year = 0, month = 0, day = 0;
    int horizon_days = 7;
    std::int64_t n_direct = 0;
    std::int64_t n_one_stop = 0;
    std::int64_t n_two_stop = 0;
};

// Snapshot CSV: origin,dest,snapshot_date,horizon_days,n_direct,n_one_stop,n_two_stop
std::vector<AvailabilitySnapshot> load_snapshots(const std::filesystem::path& file);

// A snapshot marks a route suppressed when both direct and 1-stop counts
// are zero (zero-connection reading); `either_zero` is the stricter
// alternative reading, selectable in config.
enum class MaskPredicate { both_zero, either_zero };

// Binary suppression factors per route-month. Months without snapshots are
// absent and treated as 1 downstream.
struct ObservedMask {
    struct Key {
        RouteKey route;
        int year = 0, month = 0;
        friend auto operator<=>(const Key&, const Key&) = default;
    };
    std::map<Key, double> entries;  // factors are exactly 0.0 or 1.0
};

// Factor 0 for a route-month only when every snapshot in that month is
// suppressed; factor 1 otherwise.
ObservedMask build_observed_mask(const std::vector<AvailabilitySnapshot>& snapshots,
                                 MaskPredicate predicate = MaskPredicate::both_zero);

// Mask CSV: origin,dest,year,month,factor
std::string serialize_mask(const ObservedMask& mask);
ObservedMask read_mask_csv(const std::filesystem::path& file);

// 2020 passenger expectations scaled by the curve; fares and 2019 months
// untouched.
RouteForecast apply_scenario(RouteForecast forecast, const ScenarioCurve& curve);
ForecastSet apply_scenario(ForecastSet set, const ScenarioCurve& curve,
                           const kernels::Kernels& k = kernels::active());

// Horizon months with a mask entry are multiplied by it; months without
// one pass through unchanged.
RouteForecast apply_mask(RouteForecast forecast, const ObservedMask& mask);
ForecastSet apply_mask(ForecastSet set, const ObservedMask& mask);

}  // namespace airimpact
