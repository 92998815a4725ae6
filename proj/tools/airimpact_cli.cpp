// airimpact: route-volume forecasting, crisis scenarios, economic impact
// and departure-log analytics from one reproducible command line.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "airimpact/config.hpp"
#include "airimpact/impact.hpp"
#include "airimpact/ingest.hpp"
#include "airimpact/io.hpp"
#include "airimpact/scenario.hpp"
#include "airimpact/synth.hpp"
#include "airimpact/tracking.hpp"

namespace ai = airimpact;

namespace {

// Settings shared by every subcommand, loadable from a single `key=value`
// run config. Command-line flags win over config values, which win over
// the built-in defaults.
struct RunConfig {
    std::optional<std::string> series, airports, snapshots, departures, forecast;
    std::optional<std::string> out, kernels, group_by, window_a, window_b, from, to;
    std::optional<std::string> mask_predicate, synth_profile, wuhan_origin;
    std::optional<std::vector<std::string>> scenarios, regions, profiles;
    std::optional<std::int64_t> threshold, seed, threads, min_gap, synth_routes;
    std::optional<std::int64_t> wuhan, wuhan_cutoff_day, wuhan_days_in_month;
    std::optional<double> pass_through;
};

RunConfig load_run_config(const std::string& path) {
    ai::KeyValueConfig cfg = ai::KeyValueConfig::load(path);
    RunConfig rc;
    auto str = [&cfg](const char* key, std::optional<std::string>& slot) {
        if (cfg.has(key)) slot = cfg.require_string(key);
    };
    auto num = [&cfg](const char* key, std::optional<std::int64_t>& slot) {
        if (cfg.has(key)) slot = static_cast<std::int64_t>(cfg.require_number(key));
    };
    auto list = [&cfg](const char* key, std::optional<std::vector<std::string>>& slot, char sep) {
        if (cfg.has(key)) slot = ai::split_list(cfg.require_string(key), sep);
    };
    str("series", rc.series);
    str("airports", rc.airports);
    str("snapshots", rc.snapshots);
    str("departures", rc.departures);
    str("forecast", rc.forecast);
    str("out", rc.out);
    str("kernels", rc.kernels);
    str("group_by", rc.group_by);
    str("window_a", rc.window_a);
    str("window_b", rc.window_b);
    str("from", rc.from);
    str("to", rc.to);
    str("mask_predicate", rc.mask_predicate);
    str("synth_profile", rc.synth_profile);
    str("wuhan_origin", rc.wuhan_origin);
    list("scenarios", rc.scenarios, ',');
    // Region specs can contain commas ("origin:IT,FR"), so they separate
    // with semicolons.
    list("regions", rc.regions, ';');
    list("profiles", rc.profiles, ',');
    num("threshold", rc.threshold);
    num("seed", rc.seed);
    num("threads", rc.threads);
    num("min_gap", rc.min_gap);
    num("synth_routes", rc.synth_routes);
    num("wuhan", rc.wuhan);
    num("wuhan_cutoff_day", rc.wuhan_cutoff_day);
    num("wuhan_days_in_month", rc.wuhan_days_in_month);
    if (cfg.has("pass_through")) rc.pass_through = cfg.require_number("pass_through");
    cfg.finish("run config");
    return rc;
}

template <typename T, typename U>
void fall_back(const CLI::Option* opt, T& var, const std::optional<U>& cfg_value) {
    if (opt->count() == 0 && cfg_value) var = static_cast<T>(*cfg_value);
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    ai::AtomicFile file(path);
    file.write(text);
    file.commit();
}

// ---- scenario / region / profile name resolution ----

struct ScenarioSpec {
    std::string name;
    bool observed = false;
    ai::ScenarioCurve curve;  // unset for Observed
};

std::vector<ScenarioSpec> resolve_scenarios(const std::vector<std::string>& items,
                                            std::vector<std::string>* warnings) {
    std::vector<ScenarioSpec> specs;
    for (const auto& item : items) {
        ScenarioSpec s;
        if (item == "Observed") {
            s.name = item;
            s.observed = true;
        } else {
            const auto& names = ai::builtin_curve_names();
            if (std::find(names.begin(), names.end(), item) != names.end())
                s.curve = ai::builtin_curve(item);
            else if (std::filesystem::exists(item))
                s.curve = ai::load_curve(item, warnings);
            else
                throw ai::ValidationError("unknown scenario '" + item +
                                          "' (not a builtin curve, not a file)");
            s.name = s.curve.name;
        }
        for (const auto& prev : specs)
            if (prev.name == s.name)
                throw ai::ValidationError("duplicate scenario name in run: " + s.name);
        specs.push_back(std::move(s));
    }
    return specs;
}

struct RegionSpec {
    std::string name;
    ai::RegionFilter filter;
};

RegionSpec parse_region(const std::string& spec) {
    RegionSpec r;
    if (spec == "global") {
        r.name = "global";
        r.filter = ai::RegionFilter::global();
        return r;
    }
    if (spec == "eu27") {
        r.name = "eu27";
        r.filter = ai::RegionFilter::origin_and_dest_in(ai::eu27_countries());
        return r;
    }
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string kind = spec.substr(0, colon);
        const std::vector<std::string> codes = ai::split_list(spec.substr(colon + 1));
        if (kind == "origin")
            r.filter = ai::RegionFilter::origin_in(codes);
        else if (kind == "both")
            r.filter = ai::RegionFilter::origin_and_dest_in(codes);
        else if (kind == "domestic" && codes.size() == 1)
            r.filter = ai::RegionFilter::domestic_of(codes[0]);
        else
            throw ai::ValidationError("bad region spec: " + spec);
        r.name = kind;
        for (const auto& c : codes) {
            r.name += '-';
            for (char ch : c) r.name += static_cast<char>(std::tolower(ch));
        }
        return r;
    }
    throw ai::ValidationError("unknown region '" + spec +
                              "' (use global, eu27, origin:XX[,..], both:XX[,..], domestic:XX)");
}

ai::EconomyProfile resolve_profile(const std::string& spec) {
    if (spec == "world") return ai::EconomyProfile::world();
    if (spec == "eu27") return ai::EconomyProfile::eu27();
    if (std::filesystem::exists(spec)) return ai::load_profile(spec);
    throw ai::ValidationError("unknown profile '" + spec + "' (not world, eu27 or a file)");
}

// ---- shared pipeline pieces ----

ai::ForecastSet adjusted_set(const ai::ForecastSet& base, const ScenarioSpec& spec,
                             const ai::ObservedMask* mask) {
    if (spec.observed) {
        if (!mask)
            throw ai::ValidationError("scenario Observed needs an availability snapshots file");
        return ai::apply_mask(base, *mask);
    }
    return ai::apply_scenario(base, spec.curve);
}

double annual_2020_revenue(const std::array<double, ai::kHorizonMonths>& monthly) {
    double total = 0.0;
    for (int i = 2; i < ai::kHorizonMonths; ++i) total += monthly[static_cast<std::size_t>(i)];
    return total;
}

// One LossTable per (scenario, region, profile), plus revenue curves and
// the tourism-restricted view.
void run_impact_tables(const ai::ForecastSet& base, const std::vector<ai::AirportRef>& airports,
                       const std::vector<ScenarioSpec>& scenarios,
                       const ai::ObservedMask* mask, const std::vector<RegionSpec>& regions,
                       const std::vector<std::string>& profile_specs,
                       const std::filesystem::path& out_dir, double pass_through) {
    std::vector<ai::EconomyProfile> profiles;
    for (const auto& spec : profile_specs) {
        profiles.push_back(resolve_profile(spec));
        for (const auto& w : profiles.back().validate()) std::cerr << "warning: " << w << "\n";
    }

    for (const auto& scen : scenarios) {
        const ai::ForecastSet adj = adjusted_set(base, scen, mask);
        for (const auto& region : regions) {
            const auto base_rev = ai::monthly_revenue(base, region.filter, airports);
            const auto scen_rev = ai::monthly_revenue(adj, region.filter, airports);
            const auto losses = ai::revenue_loss(base_rev, scen_rev);
            write_text(out_dir / ("revenue_" + scen.name + "_" + region.name + ".csv"),
                       ai::serialize_revenue_curves(base_rev, scen_rev));
            const auto table = ai::quarterly_loss_table(losses, annual_2020_revenue(base_rev));
            for (const auto& profile : profiles) {
                const ai::LossTable lt =
                    ai::socio_impact(table, profile, region.name, scen.name, pass_through);
                const std::string stem = scen.name + "_" + region.name + "_" + profile.name;
                write_text(out_dir / (stem + ".csv"), ai::serialize_loss_table_csv(lt));
                write_text(out_dir / (stem + ".txt"), ai::format_loss_table(lt));
                write_text(out_dir / ("tourism_" + stem + ".csv"),
                           ai::serialize_loss_table_csv(ai::tourism_component(lt, profile)));
                char line[160];
                std::snprintf(line, sizeof line, "impact: %s yearly loss %.1f M US$ (%.2f%%)\n",
                              stem.c_str(), lt.rows[4].revenue_loss_musd,
                              lt.rows[4].loss_share * 100.0);
                std::cout << line;
            }
        }
    }
}

ai::MaskPredicate parse_predicate(const std::string& name) {
    if (name == "both_zero") return ai::MaskPredicate::both_zero;
    if (name == "either_zero") return ai::MaskPredicate::either_zero;
    throw ai::ValidationError("unknown mask predicate: " + name);
}

ai::Date parse_date_flag(const std::string& s, const char* what) {
    if (s.size() == 10 && s[4] == '-' && s[7] == '-') {
        const auto y = ai::parse_int(s.substr(0, 4));
        const auto m = ai::parse_int(s.substr(5, 2));
        const auto d = ai::parse_int(s.substr(8, 2));
        if (y && m && d) {
            ai::Date date{static_cast<int>(*y), static_cast<int>(*m), static_cast<int>(*d)};
            if (ai::is_valid_date(date)) return date;
        }
    }
    throw ai::ValidationError(std::string(what) + " must be a valid YYYY-MM-DD date: " + s);
}

ai::DateRange parse_window(const std::string& spec, const char* what) {
    const auto names = ai::preset_window_names();
    if (std::find(names.begin(), names.end(), spec) != names.end())
        return ai::preset_window(spec);
    const auto sep = spec.find("..");
    if (sep == std::string::npos)
        throw ai::ValidationError(std::string(what) +
                                  " must be a preset or YYYY-MM-DD..YYYY-MM-DD: " + spec);
    ai::DateRange w{parse_date_flag(spec.substr(0, sep), what),
                    parse_date_flag(spec.substr(sep + 2), what)};
    ai::check_window(w, what);
    return w;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"airimpact: aviation volume forecasts, crisis scenarios and impact accounting"};
    app.require_subcommand(1);

    std::string config_path;

    // Common settings; each subcommand binds the subset it uses.
    std::string series, airports, snapshots, departures, forecast_file, out = "out";
    std::string kernels = "auto", mask_predicate = "both_zero", synth_profile_path;
    std::string group_by = "country", window_a = "late-march", window_b = "early-feb";
    std::string from_date, to_date, wuhan_origin = "WUH";
    std::vector<std::string> scenario_items, region_items, profile_items;
    std::int64_t threshold = 50, seed = 1, threads = 1, min_gap = 7, synth_routes = 1000;
    std::int64_t wuhan_cutoff_day = 23, wuhan_days_in_month = 31;
    double pass_through = 1.0;
    bool no_wuhan = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "run config file (key=value)");
        sub->add_option("--out", out, "output directory")->capture_default_str();
        sub->add_option("--kernels", kernels, "arithmetic kernels: auto, scalar, avx2")
            ->capture_default_str();
    };

    CLI::App* ingest_check = app.add_subcommand("ingest-check", "validate a corpus and summarize it");
    ingest_check->add_option("--series", series, "route series CSV");
    ingest_check->add_option("--airports", airports, "airports CSV");
    ingest_check->add_option("--threshold", threshold, "frequent-route cutoff on maxP")
        ->capture_default_str();
    add_common(ingest_check);

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    synth->add_option("--routes", synth_routes, "number of routes")->capture_default_str();
    synth->add_option("--seed", seed, "random seed")->capture_default_str();
    synth->add_option("--profile", synth_profile_path, "synthetic profile file");
    synth->add_option("--threads", threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    add_common(synth);

    CLI::App* forecast = app.add_subcommand("forecast", "fit per-month models and project the horizon");
    forecast->add_option("--series", series, "route series CSV");
    forecast->add_option("--airports", airports, "airports CSV");
    forecast->add_option("--threshold", threshold, "frequent-route cutoff on maxP")
        ->capture_default_str();
    forecast->add_option("--threads", threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    forecast->add_flag("--no-wuhan", no_wuhan, "skip the January 2020 cutoff adjustment");
    forecast->add_option("--wuhan-origin", wuhan_origin, "origin airport the cutoff applies to")
        ->capture_default_str();
    forecast->add_option("--wuhan-cutoff-day", wuhan_cutoff_day, "first banned day of January")
        ->capture_default_str();
    add_common(forecast);

    CLI::App* scenario = app.add_subcommand("scenario", "apply scenario curves to a forecast");
    scenario->add_option("--forecast", forecast_file, "baseline forecast CSV");
    scenario->add_option("--scenarios", scenario_items, "curve names or files (comma separated)")
        ->delimiter(',');
    scenario->add_option("--snapshots", snapshots, "availability snapshots CSV (for Observed)");
    scenario->add_option("--mask-predicate", mask_predicate, "both_zero or either_zero")
        ->capture_default_str();
    scenario->add_option("--region", region_items, "region spec (repeatable)");
    scenario->add_option("--profile", profile_items, "economy profile name or file (repeatable)");
    scenario->add_option("--pass-through", pass_through, "share of the loss passed to jobs/GDP")
        ->capture_default_str();
    add_common(scenario);

    CLI::App* impact = app.add_subcommand("impact", "loss tables for scenario/region/profile grids");
    impact->add_option("--forecast", forecast_file, "baseline forecast CSV");
    impact->add_option("--airports", airports, "airports CSV (needed for country filters)");
    impact->add_option("--scenarios", scenario_items, "curve names or files (comma separated)")
        ->delimiter(',');
    impact->add_option("--snapshots", snapshots, "availability snapshots CSV (for Observed)");
    impact->add_option("--mask-predicate", mask_predicate, "both_zero or either_zero")
        ->capture_default_str();
    impact->add_option("--region", region_items, "region spec (repeatable)");
    impact->add_option("--profile", profile_items, "economy profile name or file (repeatable)");
    impact->add_option("--pass-through", pass_through, "share of the loss passed to jobs/GDP")
        ->capture_default_str();
    add_common(impact);

    CLI::App* tracking = app.add_subcommand("tracking", "departure-log analytics");
    tracking->add_option("--departures", departures, "departures CSV");
    tracking->add_option("--group-by", group_by, "airport, country or airline")
        ->capture_default_str();
    tracking->add_option("--window-a", window_a, "comparison window A (preset or a..b)")
        ->capture_default_str();
    tracking->add_option("--window-b", window_b, "comparison window B (preset or a..b)")
        ->capture_default_str();
    tracking->add_option("--from", from_date, "analysis window start (YYYY-MM-DD)");
    tracking->add_option("--to", to_date, "analysis window end (YYYY-MM-DD)");
    tracking->add_option("--min-gap", min_gap, "zero-run length flagged by the coverage report")
        ->capture_default_str();
    add_common(tracking);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();

        RunConfig rc;
        if (sub->count("--config") > 0) rc = load_run_config(config_path);
        fall_back(sub->get_option_no_throw("--out"), out, rc.out);
        fall_back(sub->get_option_no_throw("--kernels"), kernels, rc.kernels);
        if (auto* o = sub->get_option_no_throw("--series")) fall_back(o, series, rc.series);
        if (auto* o = sub->get_option_no_throw("--airports")) fall_back(o, airports, rc.airports);
        if (auto* o = sub->get_option_no_throw("--snapshots"))
            fall_back(o, snapshots, rc.snapshots);
        if (auto* o = sub->get_option_no_throw("--departures"))
            fall_back(o, departures, rc.departures);
        if (auto* o = sub->get_option_no_throw("--forecast"))
            fall_back(o, forecast_file, rc.forecast);
        if (auto* o = sub->get_option_no_throw("--threshold"))
            fall_back(o, threshold, rc.threshold);
        if (auto* o = sub->get_option_no_throw("--seed")) fall_back(o, seed, rc.seed);
        if (auto* o = sub->get_option_no_throw("--threads")) fall_back(o, threads, rc.threads);
        if (auto* o = sub->get_option_no_throw("--routes"))
            fall_back(o, synth_routes, rc.synth_routes);
        if (auto* o = sub->get_option_no_throw("--profile")) {
            if (o->get_type_size() == 1 && o->count() == 0 && rc.profiles)
                profile_items = *rc.profiles;
        }
        if (auto* o = sub->get_option_no_throw("--scenarios")) {
            if (o->count() == 0 && rc.scenarios) scenario_items = *rc.scenarios;
        }
        if (auto* o = sub->get_option_no_throw("--region")) {
            if (o->count() == 0 && rc.regions) region_items = *rc.regions;
        }
        if (auto* o = sub->get_option_no_throw("--mask-predicate"))
            fall_back(o, mask_predicate, rc.mask_predicate);
        if (auto* o = sub->get_option_no_throw("--group-by")) fall_back(o, group_by, rc.group_by);
        if (auto* o = sub->get_option_no_throw("--window-a")) fall_back(o, window_a, rc.window_a);
        if (auto* o = sub->get_option_no_throw("--window-b")) fall_back(o, window_b, rc.window_b);
        if (auto* o = sub->get_option_no_throw("--from")) fall_back(o, from_date, rc.from);
        if (auto* o = sub->get_option_no_throw("--to")) fall_back(o, to_date, rc.to);
        if (auto* o = sub->get_option_no_throw("--min-gap")) fall_back(o, min_gap, rc.min_gap);
        if (auto* o = sub->get_option_no_throw("--pass-through"))
            fall_back(o, pass_through, rc.pass_through);
        if (auto* o = sub->get_option_no_throw("--wuhan-origin"))
            fall_back(o, wuhan_origin, rc.wuhan_origin);
        if (auto* o = sub->get_option_no_throw("--wuhan-cutoff-day"))
            fall_back(o, wuhan_cutoff_day, rc.wuhan_cutoff_day);
        if (auto* o = sub->get_option_no_throw("--no-wuhan")) {
            if (o->count() == 0 && rc.wuhan) no_wuhan = *rc.wuhan == 0;
        }

        ai::kernels::select(kernels);
        const std::filesystem::path out_dir(out);

        if (sub == ingest_check) {
            if (series.empty() || airports.empty())
                throw ai::ValidationError("ingest-check needs --series and --airports");
            const ai::RouteCorpus corpus = ai::parse_route_corpus(series, airports);
            std::size_t observations = 0;
            for (const auto& r : corpus.routes) observations += r.observations.size();
            const ai::RouteCorpus frequent =
                ai::filter_frequent(corpus, static_cast<std::uint32_t>(threshold));
            std::cout << "routes=" << corpus.routes.size() << "\n"
                      << "airports=" << corpus.airports.size() << "\n"
                      << "observations=" << observations << "\n"
                      << "frequent_routes=" << frequent.routes.size() << " (maxP >= " << threshold
                      << ")\n";
        } else if (sub == synth) {
            ai::SynthProfile profile;
            if (sub->count("--profile") > 0 || rc.synth_profile) {
                if (sub->count("--profile") == 0) synth_profile_path = *rc.synth_profile;
                profile = ai::load_synth_profile(synth_profile_path);
            }
            if (synth_routes < 1) throw ai::ValidationError("--routes must be at least 1");
            const ai::RouteCorpus corpus = ai::generate_synthetic_corpus(
                static_cast<std::uint64_t>(seed), static_cast<std::size_t>(synth_routes), profile,
                static_cast<unsigned>(threads));
            ai::write_corpus(corpus, out_dir / "synth" / "series.csv",
                             out_dir / "synth" / "airports.csv");
            std::cout << "synthetic routes=" << corpus.routes.size() << " seed=" << seed << "\n";
        } else if (sub == forecast) {
            if (series.empty() || airports.empty())
                throw ai::ValidationError("forecast needs --series and --airports");
            const ai::RouteCorpus corpus = ai::filter_frequent(
                ai::parse_route_corpus(series, airports), static_cast<std::uint32_t>(threshold));
            ai::ForecastOptions options;
            options.wuhan_adjustment = !no_wuhan;
            options.wuhan_origin = wuhan_origin;
            options.wuhan_cutoff_day = static_cast<int>(wuhan_cutoff_day);
            options.wuhan_days_in_month = static_cast<int>(wuhan_days_in_month);
            options.threads = static_cast<unsigned>(threads);
            const ai::ForecastSet set = ai::forecast_corpus(corpus, options);
            ai::write_forecast_csv(set, out_dir / "forecast" / "forecast.csv");

            const auto& k = ai::kernels::active();
            double pax_2020 = 0.0, revenue_2020 = 0.0;
            for (int i = 2; i < ai::kHorizonMonths; ++i) {
                const auto idx = static_cast<std::size_t>(i);
                pax_2020 += k.sum(set.passengers[idx].data(), set.size());
                revenue_2020 +=
                    k.dot(set.passengers[idx].data(), set.fares[idx].data(), set.size());
            }
            std::string summary;
            summary += "routes=" + std::to_string(set.size()) + "\n";
            summary += "total_2020_passengers=" + ai::format_double(pax_2020) + "\n";
            summary += "total_2020_revenue_usd=" + ai::format_double(revenue_2020) + "\n";
            write_text(out_dir / "forecast" / "summary.txt", summary);
            std::cout << summary;
        } else if (sub == scenario || sub == impact) {
            if (forecast_file.empty())
                throw ai::ValidationError(sub->get_name() + " needs --forecast");
            if (scenario_items.empty()) scenario_items = ai::builtin_curve_names();
            if (region_items.empty()) region_items.push_back("global");
            if (profile_items.empty()) profile_items.push_back("world");

            std::vector<std::string> warnings;
            const std::vector<ScenarioSpec> specs = resolve_scenarios(scenario_items, &warnings);
            for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

            const ai::ForecastSet base = ai::read_forecast_csv(forecast_file);

            std::optional<ai::ObservedMask> mask;
            const bool wants_observed =
                std::any_of(specs.begin(), specs.end(),
                            [](const ScenarioSpec& s) { return s.observed; });
            if (wants_observed) {
                if (snapshots.empty())
                    throw ai::ValidationError("scenario Observed needs --snapshots");
                mask = ai::build_observed_mask(ai::load_snapshots(snapshots),
                                               parse_predicate(mask_predicate));
            }

            std::vector<RegionSpec> regions;
            for (const auto& item : region_items) regions.push_back(parse_region(item));
            const bool needs_airports = std::any_of(
                regions.begin(), regions.end(), [](const RegionSpec& r) {
                    return r.filter.mode != ai::RegionFilter::Mode::global;
                });
            std::vector<ai::AirportRef> airport_refs;
            if (needs_airports) {
                if (airports.empty())
                    throw ai::ValidationError("country-based regions need --airports");
                airport_refs = ai::load_airports(airports);
            }

            if (sub == scenario) {
                for (const auto& s : specs) {
                    const ai::ForecastSet adj =
                        adjusted_set(base, s, mask ? &*mask : nullptr);
                    const auto dir = out_dir / "scenarios" / s.name;
                    ai::write_forecast_csv(adj, dir / "forecast.csv");
                    if (s.observed)
                        write_text(dir / "mask.csv", ai::serialize_mask(*mask));
                    else
                        write_text(dir / "curve.txt", ai::serialize_curve(s.curve));
                    std::cout << "scenario " << s.name << ": wrote "
                              << (dir / "forecast.csv").string() << "\n";
                }
            }
            run_impact_tables(base, airport_refs, specs, mask ? &*mask : nullptr, regions,
                              profile_items, out_dir / "impact", pass_through);
        } else if (sub == tracking) {
            if (departures.empty()) throw ai::ValidationError("tracking needs --departures");
            const std::vector<ai::DepartureEvent> events = ai::parse_departures(departures);
            const ai::GroupBy grouping = ai::parse_group_by(group_by);
            const ai::DateRange win_a = parse_window(window_a, "window A");
            const ai::DateRange win_b = parse_window(window_b, "window B");
            const auto dir = out_dir / "tracking";

            // Analysis span for the daily series: explicit flags, else the
            // log's own extent.
            std::optional<ai::DateRange> span;
            if (!from_date.empty() && !to_date.empty())
                span = ai::DateRange{parse_date_flag(from_date, "--from"),
                                     parse_date_flag(to_date, "--to")};
            else if (!events.empty())
                span = ai::DateRange{events.front().date(), events.back().date()};

            std::vector<ai::DailySeries> daily, airline_daily;
            if (span) {
                ai::check_window(*span, "analysis window");
                daily = ai::daily_counts(events, grouping, *span);
                airline_daily = ai::daily_counts(events, ai::GroupBy::airline, *span);
            }
            write_text(dir / "daily_counts.csv", ai::serialize_daily_series(daily));
            std::vector<ai::DailySeries> normalized;
            normalized.reserve(daily.size());
            for (const auto& s : daily) normalized.push_back(ai::normalize_to_max(s));
            write_text(dir / "normalized.csv", ai::serialize_daily_series(normalized));
            std::vector<ai::DailySeries> airline_trends;
            airline_trends.reserve(airline_daily.size());
            for (const auto& s : airline_daily)
                airline_trends.push_back(ai::normalize_to_max(s));
            write_text(dir / "airline_trends.csv", ai::serialize_daily_series(airline_trends));

            const auto country_ratios =
                ai::window_ratio(events, ai::GroupBy::country, win_a, win_b);
            write_text(dir / "country_ratios.csv", ai::serialize_window_ratios(country_ratios));
            write_text(dir / "pair_matrix.csv",
                       ai::serialize_pair_matrix(ai::pair_ratio_matrix(events, win_a, win_b)));

            std::vector<std::string> all_countries;
            for (const auto& r : country_ratios) all_countries.push_back(r.key);
            std::vector<ai::WindowRatio> aggregates;
            aggregates.push_back(ai::aggregate_ratio(country_ratios, all_countries, "global"));
            aggregates.push_back(
                ai::aggregate_ratio(country_ratios, ai::eu27_countries(), "eu27"));
            write_text(dir / "aggregates.csv", ai::serialize_window_ratios(aggregates));

            std::string coverage;
            for (const auto& note :
                 ai::coverage_report(daily, static_cast<int>(min_gap)))
                coverage += note + "\n";
            write_text(dir / "coverage.txt", coverage);

            std::cout << "events=" << events.size() << " groups=" << daily.size() << "\n";
            for (const auto& a : aggregates) {
                std::cout << a.key << ": " << a.count_a << "/" << a.count_b;
                if (a.ratio) std::cout << " ratio=" << ai::format_double(*a.ratio);
                std::cout << "\n";
            }
        }
        return 0;
    } catch (const ai::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ai::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
