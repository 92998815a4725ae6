#include "airimpact/config.hpp"

#include <sstream>

#include "airimpact/io.hpp"

namespace airimpact {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& file) {
    return from_string(read_file(file), file.string());
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text, const std::string& origin) {
    KeyValueConfig cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError(origin, line_no, "expected key=value, got '" + stripped + "'");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ParseError(origin, line_no, "empty key");
        if (cfg.values_.count(key)) throw ParseError(origin, line_no, "duplicate key '" + key + "'");
        cfg.values_[key] = value;
    }
    return cfg;
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    consumed_[key] = true;
    return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) {
    auto v = get(key);
    return v ? *v : fallback;
}

std::string KeyValueConfig::require_string(const std::string& key) {
    auto v = get(key);
    if (!v) throw ParseError(origin_ + ": missing required key '" + key + "'");
    return *v;
}

double KeyValueConfig::get_number(const std::string& key, double fallback) {
    auto v = get(key);
    if (!v) return fallback;
    auto n = parse_number(*v);
    if (!n) throw ParseError(origin_ + ": key '" + key + "' is not a number: '" + *v + "'");
    return *n;
}

double KeyValueConfig::require_number(const std::string& key) {
    auto v = require_string(key);
    auto n = parse_number(v);
    if (!n) throw ParseError(origin_ + ": key '" + key + "' is not a number: '" + v + "'");
    return *n;
}

std::int64_t KeyValueConfig::get_int(const std::string& key, std::int64_t fallback) {
    auto v = get(key);
    if (!v) return fallback;
    auto n = parse_int(*v);
    if (!n) throw ParseError(origin_ + ": key '" + key + "' is not an integer: '" + *v + "'");
    return *n;
}

void KeyValueConfig::finish(const std::string& what) const {
    for (const auto& [key, _] : values_)
        if (!consumed_.count(key))
            throw ParseError(origin_ + ": unknown " + what + " key '" + key + "'");
}

std::vector<std::string> split_list(const std::string& csv, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t end = csv.find(sep, start);
        if (end == std::string::npos) end = csv.size();
        std::string item = trim(csv.substr(start, end - start));
        if (!item.empty()) out.push_back(item);
        start = end + 1;
    }
    return out;
}

}  // namespace airimpact
