#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "airimpact/common.hpp"

namespace airimpact {

// Minimal CSV access for the toolkit's file formats: comma-separated,
// UTF-8, mandatory header, no quoting (fields must not contain commas).
class CsvReader {
public:
    CsvReader(const std::filesystem::path& file, std::string_view expected_header)
        : path_(file) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw ParseError("cannot open " + file.string());
        buffer_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        pos_ = 0;
        line_no_ = 0;
        std::string_view header = next_line();
        if (header != expected_header)
            throw ParseError(path_, line_no_,
                             "expected header '" + std::string(expected_header) + "', got '" +
                                 std::string(header) + "'");
    }

    // Advances to the next non-empty row. Returns false at end of file.
    bool next_row(std::vector<std::string_view>& fields) {
        while (pos_ < buffer_.size()) {
            std::string_view line = next_line();
            if (line.empty() && pos_ >= buffer_.size() && line_no_ > 1) return false;
            if (line.empty()) continue;  // skip blank lines
            split(line, fields);
            return true;
        }
        return false;
    }

    std::size_t line_no() const { return line_no_; }
    const std::filesystem::path& path() const { return path_; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(path_, line_no_, msg); }

private:
    std::string_view next_line() {
        std::size_t start = pos_;
        std::size_t end = buffer_.find('\n', start);
        if (end == std::string::npos) end = buffer_.size();
        pos_ = end + 1;
        ++line_no_;
        if (end > start && buffer_[end - 1] == '\r') --end;
        return std::string_view(buffer_).substr(start, end - start);
    }

    static void split(std::string_view line, std::vector<std::string_view>& out) {
        out.clear();
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string_view::npos) {
                out.push_back(line.substr(start));
                return;
            }
            out.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
    }

    std::filesystem::path path_;
    std::string buffer_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
};

}  // namespace airimpact
