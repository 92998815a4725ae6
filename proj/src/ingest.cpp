#include "airimpact/ingest.hpp"

#include <unordered_map>

#include "airimpact/csv.hpp"
#include "airimpact/io.hpp"
#include "airimpact/kernels.hpp"

namespace airimpact {

namespace {

constexpr std::string_view kSeriesHeader = "origin,dest,year,month,passengers,avg_fare";
constexpr std::string_view kAirportsHeader = "code,country,name";

struct RouteKeyHash {
    std::size_t operator()(const RouteKey& k) const {
        std::size_t h = 1469598103934665603ull;
        for (char c : k.origin) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
        for (char c : k.destination) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
        return h;
    }
};

}  // namespace

std::vector<AirportRef> load_airports(const std::filesystem::path& airports_file) {
    CsvReader csv(airports_file, kAirportsHeader);
    std::vector<AirportRef> airports;
    std::vector<std::string_view> f;
    while (csv.next_row(f)) {
        if (f.size() != 3) csv.fail("expected 3 fields, got " + std::to_string(f.size()));
        if (!is_airport_code(f[0])) csv.fail("airport code must match [A-Z]{3}: '" + std::string(f[0]) + "'");
        if (!is_country_code(f[1])) csv.fail("country must be ISO alpha-2: '" + std::string(f[1]) + "'");
        airports.push_back({std::string(f[0]), std::string(f[1]), std::string(f[2])});
    }
    std::sort(airports.begin(), airports.end(),
              [](const AirportRef& a, const AirportRef& b) { return a.code < b.code; });
    for (std::size_t i = 1; i < airports.size(); ++i)
        if (airports[i].code == airports[i - 1].code)
            throw ParseError(airports_file.string() + ": duplicate airport code " + airports[i].code);
    return airports;
}

RouteCorpus parse_route_corpus(const std::filesystem::path& series_file,
                               const std::filesystem::path& airports_file) {
    RouteCorpus corpus;
    corpus.airports = load_airports(airports_file);

    CsvReader csv(series_file, kSeriesHeader);
    std::unordered_map<RouteKey, std::size_t, RouteKeyHash> index;
    std::vector<std::string_view> f;
    while (csv.next_row(f)) {
        if (f.size() != 6) csv.fail("expected 6 fields, got " + std::to_string(f.size()));
        if (!is_airport_code(f[0])) csv.fail("origin must match [A-Z]{3}: '" + std::string(f[0]) + "'");
        if (!is_airport_code(f[1])) csv.fail("dest must match [A-Z]{3}: '" + std::string(f[1]) + "'");
        if (f[0] == f[1]) csv.fail("origin and destination must differ");

        auto year = parse_int(f[2]);
        auto month = parse_int(f[3]);
        if (!year || !month) csv.fail("year/month must be integers");
        YearMonth ym{static_cast<int>(*year), static_cast<int>(*month)};
        if (!in_history_window(ym))
            csv.fail("month " + std::to_string(*year) + "-" + std::to_string(*month) +
                     " outside the Jan 2010 - Oct 2019 window");

        auto pax = parse_int(f[4]);
        if (!pax || *pax < 0) csv.fail("passengers must be a non-negative integer");

        MonthlyObservation obs;
        obs.year = static_cast<std::int16_t>(*year);
        obs.month = static_cast<std::int8_t>(*month);
        obs.passengers = static_cast<std::uint32_t>(*pax);
        if (!f[5].empty()) {
            auto fare = parse_number(f[5]);
            if (!fare || !(*fare >= 0)) csv.fail("avg_fare must be a non-negative number or empty");
            obs.has_fare = true;
            obs.avg_fare = *fare;
        }

        RouteKey key{std::string(f[0]), std::string(f[1])};
        auto [it, inserted] = index.try_emplace(key, corpus.routes.size());
        if (inserted) corpus.routes.push_back(RouteSeries{std::move(key), {}, 0});
        corpus.routes[it->second].observations.push_back(obs);
    }

    for (auto& series : corpus.routes) {
        std::sort(series.observations.begin(), series.observations.end(),
                  [](const MonthlyObservation& a, const MonthlyObservation& b) {
                      return a.ym() < b.ym();
                  });
        for (std::size_t i = 1; i < series.observations.size(); ++i) {
            const auto& o = series.observations[i];
            if (o.ym() == series.observations[i - 1].ym())
                throw ParseError(series_file.string() + ": duplicate observation for " +
                                 series.key.origin + "-" + series.key.destination + " " +
                                 std::to_string(o.year) + "-" + std::to_string(o.month));
        }
        // maxP via the active kernel table; passenger columns are the hot
        // scan at corpus scale.
        std::vector<std::uint32_t> pax(series.observations.size());
        for (std::size_t i = 0; i < pax.size(); ++i) pax[i] = series.observations[i].passengers;
        series.max_monthly_passengers = kernels::active().max_u32(pax.data(), pax.size());
    }

    std::sort(corpus.routes.begin(), corpus.routes.end(),
              [](const RouteSeries& a, const RouteSeries& b) { return a.key < b.key; });
    return corpus;
}

RouteCorpus filter_frequent(const RouteCorpus& corpus, std::uint32_t threshold) {
    RouteCorpus out;
    out.airports = corpus.airports;
    out.routes.reserve(corpus.routes.size());
    for (const auto& series : corpus.routes)
        if (series.max_monthly_passengers >= threshold) out.routes.push_back(series);
    return out;
}

double passenger_share(const RouteCorpus& corpus, const RouteCorpus& subset, int year) {
    auto year_total = [year](const RouteSeries& s) {
        std::uint64_t total = 0;
        for (const auto& o : s.observations)
            if (o.year == year) total += o.passengers;
        return total;
    };
    std::uint64_t corpus_total = 0;
    for (const auto& s : corpus.routes) corpus_total += year_total(s);
    std::uint64_t subset_total = 0;
    for (const auto& s : subset.routes) {
        if (!corpus.find_route(s.key))
            throw ValidationError("subset route " + s.key.origin + "-" + s.key.destination +
                                  " is not in the corpus");
        subset_total += year_total(s);
    }
    if (corpus_total == 0) return subset_total == 0 ? 1.0 : 0.0;
    return static_cast<double>(subset_total) / static_cast<double>(corpus_total);
}

std::string serialize_series(const RouteCorpus& corpus) {
    std::string out(kSeriesHeader);
    out += '\n';
    for (const auto& series : corpus.routes) {
        for (const auto& o : series.observations) {
            out += series.key.origin;
            out += ',';
            out += series.key.destination;
            out += ',';
            out += std::to_string(o.year);
            out += ',';
            out += std::to_string(o.month);
            out += ',';
            out += std::to_string(o.passengers);
            out += ',';
            if (o.has_fare) out += format_double(o.avg_fare);
            out += '\n';
        }
    }
    return out;
}

std::string serialize_airports(const RouteCorpus& corpus) {
    std::string out(kAirportsHeader);
    out += '\n';
    for (const auto& a : corpus.airports) {
        out += a.code;
        out += ',';
        out += a.country;
        out += ',';
        out += a.name;
        out += '\n';
    }
    return out;
}

void write_corpus(const RouteCorpus& corpus, const std::filesystem::path& series_file,
                  const std::filesystem::path& airports_file) {
    AtomicFile series(series_file);
    series.write(serialize_series(corpus));
    series.commit();
    AtomicFile airports(airports_file);
    airports.write(serialize_airports(corpus));
    airports.commit();
}

}  // namespace airimpact
