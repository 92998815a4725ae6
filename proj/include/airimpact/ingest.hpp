#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "airimpact/types.hpp"

namespace airimpact {

// Loads the historical corpus.
//
// Series CSV:   origin,dest,year,month,passengers,avg_fare   (avg_fare may be empty)
// Airports CSV: code,country,name
//
// Every row must fall inside the January 2010 - October 2019 window;
// duplicate (route, year, month) rows are an error. Missing months are
// simply absent, not zeros.
RouteCorpus parse_route_corpus(const std::filesystem::path& series_file,
                               const std::filesystem::path& airports_file);

std::vector<AirportRef> load_airports(const std::filesystem::path& airports_file);

// Keeps exactly the routes with maxP >= threshold. Airports unchanged.
RouteCorpus filter_frequent(const RouteCorpus& corpus, std::uint32_t threshold);

// Share of the corpus's passenger volume in `year` carried by `subset`.
// 1.0 when both totals are zero. Throws if subset has a route the corpus
// lacks.
double passenger_share(const RouteCorpus& corpus, const RouteCorpus& subset, int year);

// Inverse of parse_route_corpus for the series file: rows sorted by route
// key then month, fares in shortest round-trip form.
std::string serialize_series(const RouteCorpus& corpus);
std::string serialize_airports(const RouteCorpus& corpus);
void write_corpus(const RouteCorpus& corpus, const std::filesystem::path& series_file,
                  const std::filesystem::path& airports_file);

}  // namespace airimpact
