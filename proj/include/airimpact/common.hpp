#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace airimpact {

// Base error. ParseError and ValidationError map to CLI exit codes 1 and 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or unreadable input; carries "file:line:" context when known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
    ParseError(const std::filesystem::path& file, std::size_t line, const std::string& msg)
        : Error(file.string() + ":" + std::to_string(line) + ": " + msg) {}
};

// Semantically invalid request: unknown names, out-of-range settings,
// violated preconditions.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

// Historical data window: January 2010 through October 2019.
inline constexpr int kHistFirstYear = 2010;
inline constexpr int kHistLastYear = 2019;
inline constexpr int kHistLastMonth = 10;

struct YearMonth {
    int year = 0;
    int month = 0;  // 1..12
    friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

inline bool in_history_window(YearMonth ym) {
    if (ym.month < 1 || ym.month > 12) return false;
    if (ym.year < kHistFirstYear || ym.year > kHistLastYear) return false;
    if (ym.year == kHistLastYear && ym.month > kHistLastMonth) return false;
    return true;
}

// Forecast horizon: November 2019 through December 2020, 14 entries.
inline constexpr int kHorizonMonths = 14;

inline constexpr YearMonth horizon_month(int index) {
    return index < 2 ? YearMonth{2019, 11 + index} : YearMonth{2020, index - 1};
}

// Index into the horizon, or -1 when the month lies outside it.
inline constexpr int horizon_index(YearMonth ym) {
    if (ym.year == 2019 && (ym.month == 11 || ym.month == 12)) return ym.month - 11;
    if (ym.year == 2020 && ym.month >= 1 && ym.month <= 12) return ym.month + 1;
    return -1;
}

inline bool is_airport_code(std::string_view s) {
    return s.size() == 3 && s[0] >= 'A' && s[0] <= 'Z' && s[1] >= 'A' && s[1] <= 'Z' &&
           s[2] >= 'A' && s[2] <= 'Z';
}

inline bool is_country_code(std::string_view s) {
    return s.size() == 2 && s[0] >= 'A' && s[0] <= 'Z' && s[1] >= 'A' && s[1] <= 'Z';
}

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::optional<double> parse_number(std::string_view s) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace airimpact
