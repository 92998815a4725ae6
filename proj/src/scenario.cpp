#include "airimpact/scenario.hpp"

#include <algorithm>
#include <sstream>

#include "airimpact/config.hpp"
#include "airimpact/csv.hpp"
#include "airimpact/io.hpp"

namespace airimpact {

namespace {

struct Anchor {
    int month;
    double value;
};

// Linear interpolation between anchors; flat before the first and after the
// last. Months are calendar 2020 (1..12).
std::array<double, 12> from_anchors(std::initializer_list<Anchor> anchors) {
    std::array<double, 12> out{};
    const Anchor* first = anchors.begin();
    const Anchor* last = anchors.end() - 1;
    for (int m = 1; m <= 12; ++m) {
        double v;
        if (m <= first->month) {
            v = first->value;
        } else if (m >= last->month) {
            v = last->value;
        } else {
            const Anchor* hi = first + 1;
            while (hi->month < m) ++hi;
            if (hi->month == m) {
                // Anchor months carry their value exactly, no arithmetic.
                v = hi->value;
            } else {
                const Anchor* lo = hi - 1;
                const double frac =
                    static_cast<double>(m - lo->month) / static_cast<double>(hi->month - lo->month);
                v = lo->value + (hi->value - lo->value) * frac;
            }
        }
        out[static_cast<std::size_t>(m - 1)] = v;
    }
    return out;
}

// L-shaped variant: the decline leg is untouched, the recovery leg stalls
// at `ceiling`.
std::array<double, 12> cap_after(std::array<double, 12> curve, int trough_month, double ceiling) {
    for (int m = trough_month + 1; m <= 12; ++m) {
        double& v = curve[static_cast<std::size_t>(m - 1)];
        v = std::min(v, ceiling);
    }
    return curve;
}

ScenarioCurve make_builtin(std::string_view name) {
    ScenarioCurve c;
    c.name = std::string(name);
    if (name == "SARS") {
        // 2003 outbreak shape: trough at 65% in May, back to par by September.
        c.multipliers = from_anchors({{1, 1.0}, {5, 0.65}, {9, 1.0}});
    } else if (name == "MERS") {
        // Shallow dip: 12% off through spring, recovered by June.
        c.multipliers = from_anchors({{1, 1.0}, {2, 0.88}, {4, 0.88}, {6, 1.0}});
    } else if (name == "COVID-12") {
        // Halved by April, linear recovery across the rest of the year.
        c.multipliers = from_anchors({{1, 1.0}, {4, 0.5}, {12, 1.0}});
    } else if (name == "COVID-L") {
        // Same decline, but recovery stalls at 60% of pre-crisis volume.
        c.multipliers = cap_after(from_anchors({{1, 1.0}, {4, 0.5}, {12, 1.0}}), 4, 0.6);
    } else if (name == "EUROC") {
        // Deep European-control shape: 15% floor in April, par by October.
        c.multipliers = from_anchors({{1, 1.0}, {4, 0.15}, {10, 1.0}});
    } else if (name == "EUROC-12") {
        // Same floor, recovery stretched to December.
        c.multipliers = from_anchors({{1, 1.0}, {4, 0.15}, {12, 1.0}});
    } else if (name == "EUROC-L") {
        c.multipliers = cap_after(from_anchors({{1, 1.0}, {4, 0.15}, {12, 1.0}}), 4, 0.6);
    } else {
        throw ValidationError("unknown builtin scenario curve: " + std::string(name));
    }
    return c;
}

void check_multiplier(double v, int month, const std::string& where,
                      std::vector<std::string>* warnings) {
    if (!(v >= 0.0 && v <= 2.0))
        throw ValidationError(where + ": m" + std::to_string(month) +
                              " must lie in [0, 2], got " + format_double(v));
    if (v > 1.0 && warnings)
        warnings->push_back(where + ": m" + std::to_string(month) + " is above 1.0 (" +
                            format_double(v) + "), volumes will exceed the baseline");
}

}  // namespace

ScenarioCurve builtin_curve(std::string_view name) { return make_builtin(name); }

const std::vector<std::string>& builtin_curve_names() {
    static const std::vector<std::string> names = {
        "SARS", "MERS", "COVID-12", "COVID-L", "EUROC", "EUROC-12", "EUROC-L"};
    return names;
}

ScenarioCurve load_curve(const std::filesystem::path& file, std::vector<std::string>* warnings) {
    KeyValueConfig cfg = KeyValueConfig::load(file);
    ScenarioCurve c;
    c.name = cfg.require_string("name");
    for (int m = 1; m <= 12; ++m) {
        const double v = cfg.require_number("m" + std::to_string(m));
        check_multiplier(v, m, file.string(), warnings);
        c.multipliers[static_cast<std::size_t>(m - 1)] = v;
    }
    cfg.finish("curve file");
    return c;
}

std::string serialize_curve(const ScenarioCurve& curve) {
    std::string out;
    out += "name=" + curve.name + "\n";
    for (int m = 1; m <= 12; ++m)
        out += "m" + std::to_string(m) + "=" +
               format_double(curve.multipliers[static_cast<std::size_t>(m - 1)]) + "\n";
    return out;
}

std::vector<AvailabilitySnapshot> load_snapshots(const std::filesystem::path& file) {
    CsvReader reader(file, "origin,dest,snapshot_date,horizon_days,n_direct,n_one_stop,n_two_stop");
    std::vector<AvailabilitySnapshot> out;
    std::vector<std::string_view> row;
    while (reader.next_row(row)) {
        if (row.size() != 7) reader.fail("expected 7 fields, got " + std::to_string(row.size()));
        AvailabilitySnapshot s;
        s.key.origin = std::string(row[0]);
        s.key.destination = std::string(row[1]);
        if (!is_airport_code(s.key.origin) || !is_airport_code(s.key.destination))
            reader.fail("airport codes must match [A-Z]{3}");
        const std::string_view date = row[2];
        // ISO date, YYYY-MM-DD.
        if (date.size() != 10 || date[4] != '-' || date[7] != '-')
            reader.fail("snapshot_date must be YYYY-MM-DD");
        const auto year = parse_int(date.substr(0, 4));
        const auto month = parse_int(date.substr(5, 2));
        const auto day = parse_int(date.substr(8, 2));
        if (!year || !month || !day) reader.fail("snapshot_date must be YYYY-MM-DD");
        s.year = static_cast<int>(*year);
        s.month = static_cast<int>(*month);
        s.day = static_cast<int>(*day);
        if (s.month < 1 || s.month > 12 || s.day < 1 || s.day > 31)
            reader.fail("snapshot_date is not a valid calendar date");
        const auto horizon = parse_int(row[3]);
        if (!horizon || *horizon < 1) reader.fail("horizon_days must be a positive integer");
        s.horizon_days = static_cast<int>(*horizon);
        const auto direct = parse_int(row[4]);
        const auto one_stop = parse_int(row[5]);
        const auto two_stop = parse_int(row[6]);
        if (!direct || !one_stop || !two_stop || *direct < 0 || *one_stop < 0 || *two_stop < 0)
            reader.fail("flight counts must be non-negative integers");
        s.n_direct = *direct;
        s.n_one_stop = *one_stop;
        s.n_two_stop = *two_stop;
        out.push_back(std::move(s));
    }
    return out;
}

ObservedMask build_observed_mask(const std::vector<AvailabilitySnapshot>& snapshots,
                                 MaskPredicate predicate) {
    // A route-month collapses to 0 only when every one of its snapshots is
    // suppressed; a single live probe keeps the month at 1.
    std::map<ObservedMask::Key, bool> all_suppressed;
    for (const auto& s : snapshots) {
        const bool suppressed = predicate == MaskPredicate::both_zero
                                    ? (s.n_direct == 0 && s.n_one_stop == 0)
                                    : (s.n_direct == 0 || s.n_one_stop == 0);
        auto [it, inserted] =
            all_suppressed.try_emplace({s.key, s.year, s.month}, suppressed);
        if (!inserted) it->second = it->second && suppressed;
    }
    ObservedMask mask;
    for (const auto& [key, suppressed] : all_suppressed)
        mask.entries.emplace(key, suppressed ? 0.0 : 1.0);
    return mask;
}

std::string serialize_mask(const ObservedMask& mask) {
    std::string out = "origin,dest,year,month,factor\n";
    for (const auto& [key, factor] : mask.entries) {
        out += key.route.origin;
        out += ',';
        out += key.route.destination;
        out += ',';
        out += std::to_string(key.year);
        out += ',';
        out += std::to_string(key.month);
        out += ',';
        out += format_double(factor);
        out += '\n';
    }
    return out;
}

ObservedMask read_mask_csv(const std::filesystem::path& file) {
    CsvReader reader(file, "origin,dest,year,month,factor");
    ObservedMask mask;
    std::vector<std::string_view> row;
    while (reader.next_row(row)) {
        if (row.size() != 5) reader.fail("expected 5 fields, got " + std::to_string(row.size()));
        ObservedMask::Key key;
        key.route.origin = std::string(row[0]);
        key.route.destination = std::string(row[1]);
        if (!is_airport_code(key.route.origin) || !is_airport_code(key.route.destination))
            reader.fail("airport codes must match [A-Z]{3}");
        const auto year = parse_int(row[2]);
        const auto month = parse_int(row[3]);
        const auto factor = parse_number(row[4]);
        if (!year || !month || !factor) reader.fail("year, month and factor must be numeric");
        key.year = static_cast<int>(*year);
        key.month = static_cast<int>(*month);
        if (key.month < 1 || key.month > 12) reader.fail("month must lie in 1..12");
        if (*factor != 0.0 && *factor != 1.0) reader.fail("factor must be 0 or 1");
        if (!mask.entries.emplace(key, *factor).second) reader.fail("duplicate mask entry");
    }
    return mask;
}

namespace {

// Shared with the column kernels: scale then clamp negative products (and
// -0) back to +0 so masked months compare bitwise equal everywhere.
inline double scale1(double value, double factor) {
    const double v = value * factor;
    return v > 0.0 ? v : 0.0;
}

}  // namespace

RouteForecast apply_scenario(RouteForecast forecast, const ScenarioCurve& curve) {
    for (int i = 0; i < kHorizonMonths; ++i) {
        const YearMonth ym = horizon_month(i);
        if (ym.year != 2020) continue;
        const auto idx = static_cast<std::size_t>(i);
        forecast.passengers[idx] = scale1(forecast.passengers[idx], curve.multiplier_for(ym));
    }
    return forecast;
}

ForecastSet apply_scenario(ForecastSet set, const ScenarioCurve& curve,
                           const kernels::Kernels& k) {
    for (int i = 0; i < kHorizonMonths; ++i) {
        const YearMonth ym = horizon_month(i);
        if (ym.year != 2020) continue;
        auto& column = set.passengers[static_cast<std::size_t>(i)];
        k.scale_clamp0(column.data(), column.data(), curve.multiplier_for(ym), column.size());
    }
    return set;
}

RouteForecast apply_mask(RouteForecast forecast, const ObservedMask& mask) {
    for (int i = 0; i < kHorizonMonths; ++i) {
        const YearMonth ym = horizon_month(i);
        const auto it = mask.entries.find({forecast.key, ym.year, ym.month});
        if (it == mask.entries.end()) continue;
        const auto idx = static_cast<std::size_t>(i);
        forecast.passengers[idx] = scale1(forecast.passengers[idx], it->second);
    }
    return forecast;
}

ForecastSet apply_mask(ForecastSet set, const ObservedMask& mask) {
    for (const auto& [key, factor] : mask.entries) {
        const int i = horizon_index({key.year, key.month});
        if (i < 0) continue;
        const auto it = std::lower_bound(set.keys.begin(), set.keys.end(), key.route);
        if (it == set.keys.end() || *it != key.route) continue;
        const auto r = static_cast<std::size_t>(it - set.keys.begin());
        auto& column = set.passengers[static_cast<std::size_t>(i)];
        column[r] = scale1(column[r], factor);
    }
    return set;
}

}  // namespace airimpact
