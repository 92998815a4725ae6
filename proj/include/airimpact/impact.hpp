#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "airimpact/forecast.hpp"

namespace airimpact {

// Aviation's socio-economic footprint for one region, in the four standard
// cross-industry categories. Jobs in millions, GDP figures in US$ billion.
struct EconomyProfile {
    std::string name;
    double jobs_total = 0.0;
    double jobs_tourism_catalytic = 0.0;
    double jobs_induced = 0.0;
    double jobs_indirect = 0.0;
    double jobs_direct = 0.0;
    double aviation_gdp_total = 0.0;
    double gdp_tourism_catalytic = 0.0;
    double gdp_induced = 0.0;
    double gdp_indirect = 0.0;
    double gdp_direct = 0.0;
    // Whole-economy GDP of the region, used for "share of GDP" columns.
    double economy_gdp = 0.0;
    // Headline tourism jobs share as published, when it disagrees with the
    // category ratio (the world statistics print 56% against a 54.5% ratio).
    // Zero when not provided. Surfaced by validate(), never used in math.
    double tourism_jobs_share_printed = 0.0;

    double tourism_jobs_fraction() const { return jobs_tourism_catalytic / jobs_total; }
    double tourism_gdp_fraction() const { return gdp_tourism_catalytic / aviation_gdp_total; }

    // Soft checks: category sums off by more than 0.5%, or a printed
    // tourism share that disagrees with the ratio. Warnings, not errors,
    // because the published world figures themselves fail the sum check.
    std::vector<std::string> validate() const;

    static EconomyProfile world();
    static EconomyProfile eu27();
};

EconomyProfile load_profile(const std::filesystem::path& file);
std::string serialize_profile(const EconomyProfile& profile);

// Route subset selector. `countries` resolves airports through their ISO
// country codes; it must be empty exactly when mode is global, and
// domestic_of takes a single country.
struct RegionFilter {
    enum class Mode { global, origin_in, origin_and_dest_in, domestic_of };
    Mode mode = Mode::global;
    std::vector<std::string> countries;  // kept sorted

    static RegionFilter global();
    static RegionFilter origin_in(std::vector<std::string> countries);
    static RegionFilter origin_and_dest_in(std::vector<std::string> countries);
    static RegionFilter domestic_of(std::string country);
};

// The EU27 membership as of 2020-02-01, ISO 3166-1 alpha-2.
const std::vector<std::string>& eu27_countries();

// Ticketing revenue per horizon month in US$: sum over in-filter routes of
// expected passengers times expected fare. Routes whose endpoints are
// missing from `airports` cannot be attributed to a country and drop out of
// country-based filters (global keeps them).
std::array<double, kHorizonMonths> monthly_revenue(const ForecastSet& set,
                                                   const RegionFilter& filter,
                                                   const std::vector<AirportRef>& airports,
                                                   const kernels::Kernels& k = kernels::active());

// Per-month max(0, baseline - scenario); no negative loss when a scenario
// overshoots the baseline.
std::array<double, kHorizonMonths> revenue_loss(std::span<const double> baseline,
                                                std::span<const double> scenario);

// Calendar-2020 losses folded into quarters plus a yearly row. Shares are
// fractions of the *annual* baseline revenue, matching how the published
// quarterly percentages are defined. Losses keep the input unit.
struct QuarterShares {
    static constexpr std::array<const char*, 5> kPeriods = {"Q1", "Q2", "Q3", "Q4", "Yearly"};
    std::array<double, 5> losses{};
    std::array<double, 5> shares{};
};

QuarterShares quarterly_loss_table(std::span<const double> monthly_losses,
                                   double annual_baseline_revenue);

struct LossRow {
    std::string period;
    double revenue_loss_musd = 0.0;
    double loss_share = 0.0;
    double jobs_lost_m = 0.0;
    double gdp_lost_busd = 0.0;
    double economy_gdp_share = 0.0;
};

struct LossTable {
    std::string region;
    std::string scenario;
    std::array<LossRow, 5> rows;
};

// Proportional translation of revenue shares into jobs and GDP: a 10% loss
// of annual ticketing removes 10% of aviation-supported jobs and GDP.
// `pass_through` scales that assumption (1.0 = full impact) and touches
// only the jobs/GDP/economy columns. Losses come in as US$ and are
// reported in US$ million.
LossTable socio_impact(const QuarterShares& table, const EconomyProfile& profile,
                       std::string region, std::string scenario, double pass_through = 1.0);

// The same table restricted to the tourism-catalytic slice: jobs scaled by
// the tourism jobs fraction, GDP columns by the tourism GDP fraction.
// Revenue columns are ticketing facts and pass through unchanged.
LossTable tourism_component(const LossTable& table, const EconomyProfile& profile);

// CSV: region,scenario,period,revenue_loss_musd,loss_share,jobs_lost_m,gdp_lost_busd,economy_gdp_share
std::string serialize_loss_table_csv(const LossTable& table);
// Fixed-width text table, one row per period.
std::string format_loss_table(const LossTable& table);

// Revenue curves export: year,month,baseline_usd,scenario_usd,loss_usd
std::string serialize_revenue_curves(std::span<const double> baseline,
                                     std::span<const double> scenario);

}  // namespace airimpact
