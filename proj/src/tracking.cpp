#include "airimpact/tracking.hpp"

#include <algorithm>
#include <map>

#include "airimpact/csv.hpp"

namespace airimpact {

namespace {

constexpr int kDaysInMonth[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) { return m == 2 && is_leap(y) ? 29 : kDaysInMonth[m - 1]; }

}  // namespace

bool is_valid_date(const Date& d) {
    return d.month >= 1 && d.month <= 12 && d.day >= 1 && d.day <= days_in_month(d.year, d.month);
}

// Civil-from-days and days-from-civil follow the classic era-based
// formulation; exact over the whole proleptic Gregorian calendar.
std::int64_t to_serial_days(const Date& d) {
    const std::int64_t y = d.year - (d.month <= 2 ? 1 : 0);
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const std::int64_t yoe = y - era * 400;
    const std::int64_t doy = (153 * (d.month + (d.month > 2 ? -3 : 9)) + 2) / 5 + d.day - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

Date from_serial_days(std::int64_t days) {
    const std::int64_t z = days + 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2 ? 1 : 0)), static_cast<int>(m),
                static_cast<int>(d)};
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

void check_window(const DateRange& window, const char* what) {
    if (!is_valid_date(window.first) || !is_valid_date(window.last))
        throw ValidationError(std::string(what) + ": invalid calendar date");
    if (window.last < window.first)
        throw ValidationError(std::string(what) + ": window is inverted (" +
                              format_date(window.first) + " after " + format_date(window.last) +
                              ")");
}

DateRange preset_window(std::string_view name) {
    if (name == "late-march") return {{2020, 3, 19}, {2020, 3, 25}};
    if (name == "early-feb") return {{2020, 1, 30}, {2020, 2, 5}};
    throw ValidationError("unknown window preset: " + std::string(name));
}

const std::vector<std::string>& preset_window_names() {
    static const std::vector<std::string> names = {"late-march", "early-feb"};
    return names;
}

namespace {

bool three_upper(std::string_view s) {
    if (s.size() != 3) return false;
    for (char c : s)
        if (c < 'A' || c > 'Z') return false;
    return true;
}

std::int64_t parse_timestamp(std::string_view s, CsvReader& reader) {
    std::string_view core = s;
    if (!core.empty() && core.back() == 'Z') core.remove_suffix(1);
    if (core.size() != 19 || core[4] != '-' || core[7] != '-' || core[10] != 'T' ||
        core[13] != ':' || core[16] != ':')
        reader.fail("departure_time must be YYYY-MM-DDTHH:MM:SS[Z]");
    const auto year = parse_int(core.substr(0, 4));
    const auto month = parse_int(core.substr(5, 2));
    const auto day = parse_int(core.substr(8, 2));
    const auto hh = parse_int(core.substr(11, 2));
    const auto mm = parse_int(core.substr(14, 2));
    const auto ss = parse_int(core.substr(17, 2));
    if (!year || !month || !day || !hh || !mm || !ss)
        reader.fail("departure_time must be YYYY-MM-DDTHH:MM:SS[Z]");
    const Date d{static_cast<int>(*year), static_cast<int>(*month), static_cast<int>(*day)};
    if (!is_valid_date(d)) reader.fail("departure_time has no such calendar day");
    if (*hh > 23 || *mm > 59 || *ss > 59)
        reader.fail("departure_time has an invalid clock time");
    return to_serial_days(d) * 86400 + *hh * 3600 + *mm * 60 + *ss;
}

}  // namespace

std::vector<DepartureEvent> parse_departures(const std::filesystem::path& file) {
    CsvReader reader(file,
                     "departure_time,origin_airport,origin_country,dest_airport,dest_country,"
                     "airline_code");
    std::vector<DepartureEvent> out;
    std::vector<std::string_view> row;
    while (reader.next_row(row)) {
        if (row.size() != 6) reader.fail("expected 6 fields, got " + std::to_string(row.size()));
        DepartureEvent e;
        e.epoch_seconds = parse_timestamp(row[0], reader);
        e.origin_airport = std::string(row[1]);
        e.origin_country = std::string(row[2]);
        if (!is_airport_code(e.origin_airport))
            reader.fail("origin_airport must be three capital letters");
        if (!is_country_code(e.origin_country))
            reader.fail("origin_country must be two capital letters");
        if (!row[3].empty()) {
            e.destination_airport = std::string(row[3]);
            if (!is_airport_code(e.destination_airport))
                reader.fail("dest_airport must be three capital letters or empty");
        }
        if (!row[4].empty()) {
            e.destination_country = std::string(row[4]);
            if (!is_country_code(e.destination_country))
                reader.fail("dest_country must be two capital letters or empty");
        }
        if (!row[5].empty()) {
            e.airline_code = std::string(row[5]);
            if (!three_upper(e.airline_code))
                reader.fail("airline_code must be three capital letters or empty");
        }
        out.push_back(std::move(e));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const DepartureEvent& a, const DepartureEvent& b) {
                         return a.epoch_seconds < b.epoch_seconds;
                     });
    return out;
}

GroupBy parse_group_by(std::string_view name) {
    if (name == "airport") return GroupBy::airport;
    if (name == "country") return GroupBy::country;
    if (name == "airline") return GroupBy::airline;
    throw ValidationError("unknown grouping: " + std::string(name) +
                          " (expected airport, country or airline)");
}

namespace {

const std::string& group_key(const DepartureEvent& e, GroupBy group_by) {
    switch (group_by) {
        case GroupBy::airport: return e.origin_airport;
        case GroupBy::country: return e.origin_country;
        case GroupBy::airline: return e.airline_code;
    }
    throw Error("unreachable grouping");
}

}  // namespace

std::vector<DailySeries> daily_counts(const std::vector<DepartureEvent>& events, GroupBy group_by,
                                      const DateRange& window,
                                      const std::vector<std::string>* groups) {
    check_window(window, "daily counts");
    const std::int64_t start = to_serial_days(window.first);
    const auto length = static_cast<std::size_t>(window.length_days());

    std::map<std::string, std::vector<double>> table;
    const bool fixed = groups != nullptr;
    if (fixed)
        for (const auto& g : *groups) table.emplace(g, std::vector<double>(length, 0.0));

    for (const auto& e : events) {
        const Date d = e.date();
        if (!window.contains(d)) continue;
        const std::string& key = group_key(e, group_by);
        if (key.empty()) continue;  // grouping field missing in the log
        auto it = table.find(key);
        if (it == table.end()) {
            if (fixed) continue;  // only requested groups are reported
            it = table.emplace(key, std::vector<double>(length, 0.0)).first;
        }
        it->second[static_cast<std::size_t>(to_serial_days(d) - start)] += 1.0;
    }

    std::vector<DailySeries> out;
    out.reserve(table.size());
    for (auto& [key, values] : table)
        out.push_back(DailySeries{key, window.first, std::move(values)});
    return out;
}

DailySeries normalize_to_max(const DailySeries& series) {
    if (series.values.empty()) throw ValidationError("cannot normalize an empty series");
    DailySeries out = series;
    const double peak = *std::max_element(out.values.begin(), out.values.end());
    if (peak > 0.0)
        for (double& v : out.values) v /= peak;
    return out;
}

std::vector<WindowRatio> window_ratio(const std::vector<DepartureEvent>& events, GroupBy group_by,
                                      const DateRange& window_a, const DateRange& window_b) {
    check_window(window_a, "window A");
    check_window(window_b, "window B");
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> counts;
    for (const auto& e : events) {
        const std::string& key = group_key(e, group_by);
        if (key.empty()) continue;
        const Date d = e.date();
        const bool in_a = window_a.contains(d);
        const bool in_b = window_b.contains(d);
        if (!in_a && !in_b) continue;
        auto& c = counts[key];
        if (in_a) ++c.first;
        if (in_b) ++c.second;
    }
    std::vector<WindowRatio> out;
    out.reserve(counts.size());
    for (const auto& [key, c] : counts) {
        WindowRatio r;
        r.key = key;
        r.count_a = c.first;
        r.count_b = c.second;
        if (c.second > 0)
            r.ratio = static_cast<double>(c.first) / static_cast<double>(c.second);
        out.push_back(std::move(r));
    }
    return out;
}

WindowRatio aggregate_ratio(const std::vector<WindowRatio>& ratios,
                            const std::vector<std::string>& keys, std::string label) {
    std::vector<std::string> wanted = keys;
    std::sort(wanted.begin(), wanted.end());
    WindowRatio out;
    out.key = std::move(label);
    for (const auto& r : ratios) {
        if (!std::binary_search(wanted.begin(), wanted.end(), r.key)) continue;
        out.count_a += r.count_a;
        out.count_b += r.count_b;
    }
    if (out.count_b > 0)
        out.ratio = static_cast<double>(out.count_a) / static_cast<double>(out.count_b);
    return out;
}

std::vector<PairRatio> pair_ratio_matrix(const std::vector<DepartureEvent>& events,
                                         const DateRange& window_a, const DateRange& window_b) {
    check_window(window_a, "window A");
    check_window(window_b, "window B");
    std::map<std::pair<std::string, std::string>, std::pair<std::int64_t, std::int64_t>> counts;
    for (const auto& e : events) {
        if (e.destination_country.empty()) continue;
        const Date d = e.date();
        const bool in_a = window_a.contains(d);
        const bool in_b = window_b.contains(d);
        if (!in_a && !in_b) continue;
        auto& c = counts[{e.origin_country, e.destination_country}];
        if (in_a) ++c.first;
        if (in_b) ++c.second;
    }
    std::vector<PairRatio> out;
    out.reserve(counts.size());
    for (const auto& [pair, c] : counts) {
        PairRatio r;
        r.origin_country = pair.first;
        r.destination_country = pair.second;
        r.count_a = c.first;
        r.count_b = c.second;
        if (c.second > 0)
            r.ratio = static_cast<double>(c.first) / static_cast<double>(c.second);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::string> coverage_report(const std::vector<DailySeries>& series,
                                         int min_gap_days) {
    if (min_gap_days < 1) throw ValidationError("minimum gap must be at least one day");
    std::vector<std::string> notes;
    for (const auto& s : series) {
        std::size_t run = 0, best = 0, best_start = 0;
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            run = s.values[i] == 0.0 ? run + 1 : 0;
            if (run > best) {
                best = run;
                best_start = i + 1 - run;
            }
        }
        if (best >= static_cast<std::size_t>(min_gap_days)) {
            const Date at = from_serial_days(to_serial_days(s.start) +
                                             static_cast<std::int64_t>(best_start));
            notes.push_back(s.key + ": " + std::to_string(best) +
                            " consecutive zero days from " + format_date(at));
        }
    }
    return notes;
}

std::string serialize_daily_series(const std::vector<DailySeries>& series) {
    std::string out = "key,date,value\n";
    for (const auto& s : series) {
        const std::int64_t start = to_serial_days(s.start);
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            out += s.key;
            out += ',';
            out += format_date(from_serial_days(start + static_cast<std::int64_t>(i)));
            out += ',';
            out += format_double(s.values[i]);
            out += '\n';
        }
    }
    return out;
}

std::string serialize_window_ratios(const std::vector<WindowRatio>& ratios) {
    std::string out = "key,count_a,count_b,ratio\n";
    for (const auto& r : ratios) {
        out += r.key;
        out += ',';
        out += std::to_string(r.count_a);
        out += ',';
        out += std::to_string(r.count_b);
        out += ',';
        if (r.ratio) out += format_double(*r.ratio);
        out += '\n';
    }
    return out;
}

std::string serialize_pair_matrix(const std::vector<PairRatio>& pairs) {
    std::string out = "origin_country,dest_country,count_a,count_b,ratio\n";
    for (const auto& r : pairs) {
        out += r.origin_country;
        out += ',';
        out += r.destination_country;
        out += ',';
        out += std::to_string(r.count_a);
        out += ',';
        out += std::to_string(r.count_b);
        out += ',';
        if (r.ratio) out += format_double(*r.ratio);
        out += '\n';
    }
    return out;
}

}  // namespace airimpact
