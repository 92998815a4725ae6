#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "airimpact/common.hpp"

namespace airimpact {

// Calendar date with serial-day arithmetic (proleptic Gregorian, UTC).
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    friend auto operator<=>(const Date&, const Date&) = default;
};

bool is_valid_date(const Date& d);
std::int64_t to_serial_days(const Date& d);     // days since 1970-01-01
Date from_serial_days(std::int64_t days);
std::string format_date(const Date& d);          // YYYY-MM-DD

// Inclusive date range.
struct DateRange {
    Date first;
    Date last;

    std::int64_t length_days() const { return to_serial_days(last) - to_serial_days(first) + 1; }
    bool contains(const Date& d) const { return first <= d && d <= last; }
};

// Throws on invalid or inverted ranges.
void check_window(const DateRange& window, const char* what);

// The two comparison weeks used throughout the reporting: `late-march`
// (2020-03-19 .. 2020-03-25) against `early-feb` (2020-01-30 .. 2020-02-05).
DateRange preset_window(std::string_view name);
const std::vector<std::string>& preset_window_names();

// One take-off from the tracking feed. Destination and airline fields are
// optional (empty when the feed could not resolve them); cargo and
// passenger movements are not distinguished.
struct DepartureEvent {
    std::int64_t epoch_seconds = 0;  // UTC
    std::string origin_airport;
    std::string origin_country;
    std::string destination_airport;  // may be empty
    std::string destination_country;  // may be empty
    std::string airline_code;         // may be empty; taken verbatim from the log

    Date date() const { return from_serial_days(epoch_seconds / 86400); }
};

// Departures CSV:
// departure_time,origin_airport,origin_country,dest_airport,dest_country,airline_code
// Timestamps are ISO-8601 `YYYY-MM-DDTHH:MM:SS` with an optional trailing
// `Z`; trailing fields may be empty. Events come back sorted by time.
std::vector<DepartureEvent> parse_departures(const std::filesystem::path& file);

enum class GroupBy { airport, country, airline };

GroupBy parse_group_by(std::string_view name);

// Daily departure counts for one grouping value, zero-filled across the
// window: values[i] belongs to start + i days.
struct DailySeries {
    std::string key;
    Date start;
    std::vector<double> values;
};

// Per-group daily counts within the window. Events outside the window are
// ignored; events missing the grouping field are dropped from that
// grouping. When `groups` is given, exactly those series come back (all
// zero if nothing matched); otherwise groups are discovered from the
// in-window events. Output sorted by key.
std::vector<DailySeries> daily_counts(const std::vector<DepartureEvent>& events, GroupBy group_by,
                                      const DateRange& window,
                                      const std::vector<std::string>* groups = nullptr);

// Values divided by the series maximum; an all-zero series stays all zero.
DailySeries normalize_to_max(const DailySeries& series);

// Departure counts of one group in two windows. The ratio is absent when
// the group never flew in window B.
struct WindowRatio {
    std::string key;
    std::int64_t count_a = 0;
    std::int64_t count_b = 0;
    std::optional<double> ratio;
};

// Per-group count(A)/count(B) over the union of groups active in either
// window. Output sorted by key.
std::vector<WindowRatio> window_ratio(const std::vector<DepartureEvent>& events, GroupBy group_by,
                                      const DateRange& window_a, const DateRange& window_b);

// Counts of several groups folded into one ratio (e.g. an EU27 aggregate).
WindowRatio aggregate_ratio(const std::vector<WindowRatio>& ratios,
                            const std::vector<std::string>& keys, std::string label);

// Ordered (origin_country, destination_country) ratio cell. Events without
// a destination country are dropped.
struct PairRatio {
    std::string origin_country;
    std::string destination_country;
    std::int64_t count_a = 0;
    std::int64_t count_b = 0;
    std::optional<double> ratio;
};

std::vector<PairRatio> pair_ratio_matrix(const std::vector<DepartureEvent>& events,
                                         const DateRange& window_a, const DateRange& window_b);

// Flags groups whose longest zero run within the window reaches
// `min_gap_days` (likely feed outages rather than real groundings).
std::vector<std::string> coverage_report(const std::vector<DailySeries>& series,
                                         int min_gap_days = 7);

// Long-form exports, one row per (key, day) / group / pair.
std::string serialize_daily_series(const std::vector<DailySeries>& series);
std::string serialize_window_ratios(const std::vector<WindowRatio>& ratios);
std::string serialize_pair_matrix(const std::vector<PairRatio>& pairs);

}  // namespace airimpact
