#include "airimpact/forecast.hpp"

#include <random>

#include "airimpact/csv.hpp"
#include "airimpact/io.hpp"
#include "airimpact/parallel.hpp"

namespace airimpact {

namespace {

// At most 10 history years per calendar month (2010-2019).
struct MonthBucket {
    std::array<double, 10> t;
    std::array<double, 10> y;
    int n = 0;

    void add(double ti, double yi) {
        t[static_cast<std::size_t>(n)] = ti;
        y[static_cast<std::size_t>(n)] = yi;
        ++n;
    }
};

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ull) {
    for (char c : s) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    return h;
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

ForecastSet ForecastSet::sized(std::vector<RouteKey> keys) {
    ForecastSet set;
    set.keys = std::move(keys);
    for (int m = 0; m < kHorizonMonths; ++m) {
        set.passengers[static_cast<std::size_t>(m)].resize(set.keys.size());
        set.fares[static_cast<std::size_t>(m)].resize(set.keys.size());
    }
    return set;
}

RouteForecast forecast_route(const RouteSeries& series, const kernels::Kernels& k) {
    std::array<MonthBucket, 12> pax_buckets{};
    std::array<MonthBucket, 12> fare_buckets{};
    double fare_sum = 0.0;
    std::size_t fare_count = 0;

    for (const auto& o : series.observations) {
        double t = static_cast<double>(o.year - kHistFirstYear);
        auto m = static_cast<std::size_t>(o.month - 1);
        pax_buckets[m].add(t, static_cast<double>(o.passengers));
        if (o.has_fare) {
            fare_buckets[m].add(t, o.avg_fare);
            fare_sum += o.avg_fare;
            ++fare_count;
        }
    }
    const double mean_fare = fare_count > 0 ? fare_sum / static_cast<double>(fare_count) : 0.0;

    RouteForecast rf;
    rf.key = series.key;
    for (int i = 0; i < kHorizonMonths; ++i) {
        YearMonth ym = horizon_month(i);
        auto m = static_cast<std::size_t>(ym.month - 1);
        int t_target = ym.year - kHistFirstYear;

        const MonthBucket& pb = pax_buckets[m];
        MonthModel pax_model = fit_month_model({pb.t.data(), static_cast<std::size_t>(pb.n)},
                                               {pb.y.data(), static_cast<std::size_t>(pb.n)},
                                               ym.month, k);
        rf.passengers[static_cast<std::size_t>(i)] = predict_month(pax_model, t_target);

        const MonthBucket& fb = fare_buckets[m];
        if (fb.n >= 3) {
            MonthModel fare_model = fit_month_model({fb.t.data(), static_cast<std::size_t>(fb.n)},
                                                    {fb.y.data(), static_cast<std::size_t>(fb.n)},
                                                    ym.month, k);
            rf.fares[static_cast<std::size_t>(i)] = predict_month(fare_model, t_target);
        } else {
            rf.fares[static_cast<std::size_t>(i)] = mean_fare;
        }
    }
    return rf;
}

RouteForecast apply_wuhan_adjustment(RouteForecast forecast, int cutoff_day, int days_in_month) {
    require(days_in_month >= 1 && cutoff_day >= 1 && cutoff_day <= days_in_month,
            "cutoff_day must lie within the month");
    constexpr std::size_t jan2020 = 2;  // horizon index of January 2020
    double factor = static_cast<double>(cutoff_day - 1) / static_cast<double>(days_in_month);
    forecast.passengers[jan2020] *= factor;
    return forecast;
}

ForecastSet forecast_corpus(const RouteCorpus& corpus, const ForecastOptions& options,
                            const kernels::Kernels& k) {
    std::vector<RouteKey> keys;
    keys.reserve(corpus.routes.size());
    for (const auto& s : corpus.routes) keys.push_back(s.key);
    ForecastSet set = ForecastSet::sized(std::move(keys));

    parallel_for(corpus.routes.size(), options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RouteForecast rf = forecast_route(corpus.routes[i], k);
            if (options.wuhan_adjustment && rf.key.origin == options.wuhan_origin)
                rf = apply_wuhan_adjustment(std::move(rf), options.wuhan_cutoff_day,
                                            options.wuhan_days_in_month);
            set.set_route(i, rf);
        }
    });
    return set;
}

PoissonSample sample_poisson_paths(const RouteForecast& forecast, std::size_t n_paths,
                                   std::uint64_t seed) {
    require(n_paths >= 1, "n_paths must be positive");
    PoissonSample sample;
    sample.key = forecast.key;
    sample.seed = seed;
    sample.n_paths = n_paths;
    sample.draws.resize(n_paths * kHorizonMonths);

    std::mt19937_64 rng(mix64(seed ^ fnv1a(forecast.key.origin, fnv1a(forecast.key.destination))));
    for (std::size_t p = 0; p < n_paths; ++p) {
        for (int m = 0; m < kHorizonMonths; ++m) {
            double mean = forecast.passengers[static_cast<std::size_t>(m)];
            std::uint32_t draw = 0;
            if (mean > 0) {
                std::poisson_distribution<std::uint32_t> poisson(mean);
                draw = poisson(rng);
            }
            sample.draws[p * kHorizonMonths + static_cast<std::size_t>(m)] = draw;
        }
    }
    return sample;
}

std::string serialize_forecast(const ForecastSet& set) {
    std::string out = "origin,dest,year,month,expected_passengers,expected_fare\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (int m = 0; m < kHorizonMonths; ++m) {
            YearMonth ym = horizon_month(m);
            out += set.keys[i].origin;
            out += ',';
            out += set.keys[i].destination;
            out += ',';
            out += std::to_string(ym.year);
            out += ',';
            out += std::to_string(ym.month);
            out += ',';
            out += format_double(set.passengers[static_cast<std::size_t>(m)][i]);
            out += ',';
            out += format_double(set.fares[static_cast<std::size_t>(m)][i]);
            out += '\n';
        }
    }
    return out;
}

void write_forecast_csv(const ForecastSet& set, const std::filesystem::path& file) {
    AtomicFile out(file);
    out.write(serialize_forecast(set));
    out.commit();
}

ForecastSet read_forecast_csv(const std::filesystem::path& file) {
    CsvReader csv(file, "origin,dest,year,month,expected_passengers,expected_fare");
    std::vector<RouteForecast> routes;
    std::vector<std::string_view> f;
    int expected_index = 0;
    while (csv.next_row(f)) {
        if (f.size() != 6) csv.fail("expected 6 fields, got " + std::to_string(f.size()));
        if (!is_airport_code(f[0]) || !is_airport_code(f[1])) csv.fail("bad airport code");
        auto year = parse_int(f[2]);
        auto month = parse_int(f[3]);
        auto pax = parse_number(f[4]);
        auto fare = parse_number(f[5]);
        if (!year || !month || !pax || !fare) csv.fail("malformed numeric field");
        int idx = horizon_index({static_cast<int>(*year), static_cast<int>(*month)});
        if (idx < 0) csv.fail("month outside the Nov 2019 - Dec 2020 horizon");

        RouteKey key{std::string(f[0]), std::string(f[1])};
        if (idx == 0) {
            routes.push_back(RouteForecast{key, {}, {}});
            expected_index = 0;
        }
        if (routes.empty() || !(routes.back().key == key) || idx != expected_index)
            csv.fail("forecast rows must cover the 14 horizon months per route, in order");
        routes.back().passengers[static_cast<std::size_t>(idx)] = *pax;
        routes.back().fares[static_cast<std::size_t>(idx)] = *fare;
        expected_index = idx + 1;
    }
    if (!routes.empty() && expected_index != kHorizonMonths)
        throw ParseError(file.string() + ": truncated forecast for last route");

    std::sort(routes.begin(), routes.end(),
              [](const RouteForecast& a, const RouteForecast& b) { return a.key < b.key; });
    std::vector<RouteKey> keys;
    keys.reserve(routes.size());
    for (const auto& r : routes) keys.push_back(r.key);
    ForecastSet set = ForecastSet::sized(std::move(keys));
    for (std::size_t i = 0; i < routes.size(); ++i) set.set_route(i, routes[i]);
    return set;
}

}  // namespace airimpact
