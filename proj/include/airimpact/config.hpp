#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "airimpact/common.hpp"

namespace airimpact {

// Flat `key=value` file. '#' starts a comment, blank lines are ignored,
// whitespace around keys and values is trimmed.
class KeyValueConfig {
public:
    static KeyValueConfig load(const std::filesystem::path& file);
    static KeyValueConfig from_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::optional<std::string> get(const std::string& key);
    std::string get_string(const std::string& key, const std::string& fallback);
    std::string require_string(const std::string& key);
    double get_number(const std::string& key, double fallback);
    double require_number(const std::string& key);
    std::int64_t get_int(const std::string& key, std::int64_t fallback);

    // Rejects keys nobody consumed; catches typos in config files.
    void finish(const std::string& what) const;

    const std::string& origin() const { return origin_; }

private:
    std::string origin_;
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, bool> consumed_;
};

std::vector<std::string> split_list(const std::string& csv, char sep = ',');

}  // namespace airimpact
